"""Command line entry point: generate, draw, verify, bench and svg.

Exit status: 0 ok, 1 a checked bound or planarity failed, 2 usage or parse
error (including an algorithm that does not fit the input class), 3 the
arc geometry ran out of precision.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .bench import format_table, run_bench, to_csv
from .drawing import ArcDrawing, GridDrawing
from .errors import GeometryBreakdown, InvariantViolation, ParseError, VisCompError
from .figures import plot_bench, plot_drawing
from .io import format_arc, format_graph, format_grid, parse_graph, read_drawing, write_text
from .pipeline import ALGOS, CLASS_OF_ALGO, CLASSES, Check, bound_checks, check_class, draw, generate
from .svg import to_svg
from .verify import DEFAULT_EPS, report_arc, report_grid

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_GEOMETRY = 0, 1, 2, 3


@dataclass
class RunConfig:
    subcommand: str
    input: str | None = None
    graph: str | None = None
    output: str | None = None
    algorithm: str | None = None
    graph_class: str | None = None
    seed: int = 0
    n: list[int] = field(default_factory=list)
    edges: int | None = None
    precision: int = 256
    tolerance: float = DEFAULT_EPS
    trace: str | None = None
    verify: bool = False
    svg: str | None = None
    figure: str | None = None
    report: str | None = None
    csv: str | None = None
    seeds: int = 10
    outer_policy: str = "auto"
    timing: bool = True


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="viscomp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True)

    g = sub.add_parser("generate", help="write a random graph file")
    g.add_argument("--class", dest="graph_class", choices=CLASSES, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--edges", type=int, help="edge target for the planar class")
    g.add_argument("--out", dest="output")

    def drawing_opts(q, with_algo_required: bool):
        q.add_argument("--algo", dest="algorithm", choices=ALGOS, required=with_algo_required)
        q.add_argument("--precision", "--n-precision", dest="precision", type=int, default=256)
        q.add_argument("--tolerance", type=float, default=DEFAULT_EPS)

    d = sub.add_parser("draw", help="draw a graph file (or a generated instance)")
    drawing_opts(d, True)
    d.add_argument("--input")
    d.add_argument("--n", type=int, nargs="?")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--out", dest="output")
    d.add_argument("--trace")
    d.add_argument("--svg")
    d.add_argument("--figure")
    d.add_argument("--verify", action="store_true")
    d.add_argument("--best-outer-face", action="store_true")
    d.add_argument("--outer-policy", choices=("given", "auto", "best"), default="auto")

    v = sub.add_parser("verify", help="recompute complexity, bounds and planarity")
    drawing_opts(v, False)
    v.add_argument("--input", required=True, help="drawing file")
    v.add_argument("--graph", help="graph file the drawing should match")
    v.add_argument("--report")
    v.add_argument("--figure")

    b = sub.add_parser("bench", help="tabulate counts against bounds")
    drawing_opts(b, True)
    b.add_argument("--n", type=int, nargs="+", required=True)
    b.add_argument("--seeds", type=int, default=10)
    b.add_argument("--edges", type=int)
    b.add_argument("--out", dest="output", help="text table")
    b.add_argument("--csv")
    b.add_argument("--figure")
    b.add_argument("--no-timing", action="store_true",
                   help="write zero times so reruns give identical files")

    s = sub.add_parser("svg", help="render a drawing file as SVG")
    s.add_argument("--input", required=True)
    s.add_argument("--graph", help="graph file; with --algo colours the three trees")
    s.add_argument("--algo", dest="algorithm", choices=ALGOS)
    s.add_argument("--out", dest="output", required=True)
    return p


def config_from_args(argv: Sequence[str] | None) -> RunConfig:
    ns = _parser().parse_args(argv)
    args = vars(ns)
    cfg = RunConfig(ns.subcommand)
    for k, val in args.items():
        if k == "n":
            cfg.n = [] if val is None else (list(val) if isinstance(val, list) else [val])
        elif k == "best_outer_face":
            if val:
                cfg.outer_policy = "best"
        elif k == "outer_policy":
            if cfg.outer_policy != "best":
                cfg.outer_policy = val
        elif k == "no_timing":
            cfg.timing = not val
        elif hasattr(cfg, k):
            setattr(cfg, k, val)
    return cfg


def _emit(text: str, path: str | None) -> None:
    if path:
        write_text(path, text)
    else:
        sys.stdout.write(text)


def _print_checks(checks: list[Check], stream=None) -> bool:
    for c in checks:
        detail = ""
        if c.value is not None and c.bound is not None:
            detail = f"  ({c.value} vs {c.bound})"
        elif c.value and not c.ok:
            detail = f"  ({c.value})"
        print(c.line() + detail, file=stream or sys.stdout)
    return all(c.ok for c in checks)


def cmd_generate(cfg: RunConfig) -> int:
    g = generate(cfg.graph_class, cfg.n[0], cfg.seed, cfg.edges)  # type: ignore[arg-type]
    _emit(format_graph(g), cfg.output)
    return EXIT_OK


def _format_drawing(d: GridDrawing | ArcDrawing) -> str:
    return format_grid(d) if isinstance(d, GridDrawing) else format_arc(d)


def cmd_draw(cfg: RunConfig) -> int:
    algo = cfg.algorithm
    if cfg.input:
        g = parse_graph(Path(cfg.input).read_text())
    elif cfg.n:
        g = generate(CLASS_OF_ALGO[algo], cfg.n[0], cfg.seed)  # type: ignore[index]
    else:
        raise ParseError("draw needs --input or --n")
    out = draw(algo, g, bits=cfg.precision, check=cfg.verify,  # type: ignore[arg-type]
               outer_policy=cfg.outer_policy)
    _emit(_format_drawing(out.drawing), cfg.output)
    if cfg.trace:
        write_text(cfg.trace, out.trace_text)
    if cfg.svg:
        write_text(cfg.svg, to_svg(out.drawing, out.colors()))
    if cfg.figure:
        plot_drawing(out.drawing, cfg.figure, out.colors(), f"{algo}, n={g.n}")
    if not cfg.verify:
        return EXIT_OK
    checks = bound_checks(
        algo, out.drawing, eps=cfg.tolerance,  # type: ignore[arg-type]
        lam=out.extra.get("lambda"), tn_parent=out.extra.get("tn_parent"),
        augmented_n=out.drawing.meta.get("augmented_n"),
    )
    checks.append(Check("edges match graph", _same_edges(out.drawing, g)))
    for name, errs in _step_checks(out).items():
        checks.append(Check(name, not errs, errs[0] if errs else None))
    # keep stdout clean when the drawing itself goes there
    ok = _print_checks(checks, sys.stdout if cfg.output else sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFY


def _step_checks(out) -> dict[str, list[str]]:
    res: dict[str, list[str]] = {}
    reports = out.extra.get("reports") or []
    for rep in reports:
        for name, msgs in rep.results.items():
            res.setdefault(f"invariant {name} (all steps)", []).extend(
                f"step {rep.k}: {m}" for m in msgs)
    if out.extra.get("horizon_errors") is not None:
        res["horizon convex, alignment (all steps)"] = [
            f"step {k}: {m}" for k, m in out.extra["horizon_errors"]]
    return res


def _same_edges(d: GridDrawing | ArcDrawing, g) -> bool:
    have = {frozenset(e) for e in d.edges}
    return have == {frozenset(e) for e in g.edges}


def cmd_verify(cfg: RunConfig) -> int:
    text = Path(cfg.input).read_text()  # type: ignore[arg-type]
    d = read_drawing(text)
    algo = cfg.algorithm or d.provenance or None
    if algo is not None and algo not in ALGOS:
        raise ParseError(f"unknown algorithm {algo!r} in drawing file")
    if isinstance(d, GridDrawing):
        rep = report_grid(d)
    else:
        rep = report_arc(d, cfg.tolerance)
    checks: list[Check] = []
    if algo is not None:
        if isinstance(d, GridDrawing) != (algo in ("tree", "3tree", "outerplanar")):
            raise ParseError(f"drawing kind does not match algorithm {algo}")
        checks = bound_checks(algo, d, eps=cfg.tolerance, lam=d.meta.get("lambda"),
                              augmented_n=d.meta.get("augmented_n"))
    else:
        checks = [Check("planarity", rep.planar, rep.violation)]
    if cfg.graph:
        g = parse_graph(Path(cfg.graph).read_text())
        if algo is not None:
            check_class(algo, g)
        checks.append(Check("edges match graph", _same_edges(d, g)))
    body = rep.to_text() + rep.to_kv()
    sys.stdout.write(body)
    ok = _print_checks(checks)
    if cfg.report:
        lines = "".join(c.line() + "\n" for c in checks)
        write_text(cfg.report, body + lines)
    if cfg.figure:
        plot_drawing(d, cfg.figure, title=f"{algo or 'drawing'}, n={d.n}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_bench(cfg: RunConfig) -> int:
    rows = run_bench(cfg.algorithm, cfg.n, range(cfg.seeds), bits=cfg.precision,  # type: ignore[arg-type]
                     timing=cfg.timing, edges=cfg.edges)
    _emit(format_table(rows), cfg.output)
    if cfg.csv:
        write_text(cfg.csv, to_csv(rows))
    if cfg.figure:
        plot_bench(rows, cfg.figure, cfg.algorithm or "")
    return EXIT_OK if all(float(r["slack"]) >= 0 for r in rows) else EXIT_VERIFY


def cmd_svg(cfg: RunConfig) -> int:
    d = read_drawing(Path(cfg.input).read_text())  # type: ignore[arg-type]
    colors = {}
    if cfg.graph and cfg.algorithm:
        g = parse_graph(Path(cfg.graph).read_text())
        colors = draw(cfg.algorithm, g).colors()
    write_text(cfg.output, to_svg(d, colors))  # type: ignore[arg-type]
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate, "draw": cmd_draw, "verify": cmd_verify,
    "bench": cmd_bench, "svg": cmd_svg,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[cfg.subcommand](cfg)
    except InvariantViolation as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except GeometryBreakdown as exc:
        print(f"geometry breakdown: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except (VisCompError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

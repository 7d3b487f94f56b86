"""Line-oriented text formats for graphs, drawings and realizers.

Every writer sorts its output so equal inputs give byte-identical files.
Lines starting with ``#`` are comments; blank lines are ignored.
"""

from __future__ import annotations

import math
import re
from pathlib import Path

import mpmath

from .drawing import Arc, ArcDrawing, GridDrawing, Segment
from .errors import ParseError, VisCompError
from .graph import PlanarEmbedding, build_embedding


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"line {no}: expected an integer, got {tok!r}") from None


def _meta(text: str) -> dict[str, str]:
    """``# key value`` comment lines carrying drawing metadata."""
    out = {}
    for raw in text.splitlines():
        mt = re.fullmatch(r"#\s*([A-Za-z_][\w]*)\s+(\S+)\s*", raw.strip())
        if mt:
            out[mt.group(1)] = mt.group(2)
    return out


_GRID_META = ("lambda", "augmented_n")


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


def format_graph(emb: PlanarEmbedding) -> str:
    out = [f"{emb.n} {emb.m}"]
    for v, rot in enumerate(emb.adjacency):
        out.append(f"v {v}: " + " ".join(map(str, rot)) if rot else f"v {v}:")
    if emb.outer is not None:
        out.append("outer: " + " ".join(map(str, emb.outer)))
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> PlanarEmbedding:
    it = _lines(text)
    try:
        no, head = next(it)
    except StopIteration:
        raise ParseError("empty graph file") from None
    parts = head.split()
    if len(parts) != 2:
        raise ParseError(f"line {no}: header must be 'n m'")
    n, m = _int(parts[0], no), _int(parts[1], no)
    if n < 1:
        raise ParseError(f"line {no}: n must be positive")
    rot: list[list[int] | None] = [None] * n
    outer = None
    for no, line in it:
        if line.startswith("outer:"):
            outer = [_int(t, no) for t in line[len("outer:"):].split()]
            continue
        mt = re.fullmatch(r"v\s+(-?\d+)\s*:(.*)", line)
        if not mt:
            raise ParseError(f"line {no}: cannot parse {line!r}")
        v = int(mt.group(1))
        if not 0 <= v < n:
            raise ParseError(f"line {no}: vertex {v} out of range")
        if rot[v] is not None:
            raise ParseError(f"line {no}: vertex {v} listed twice")
        rot[v] = [_int(t, no) for t in mt.group(2).split()]
    missing = [v for v, r in enumerate(rot) if r is None]
    if missing:
        raise ParseError(f"no rotation for vertex {missing[0]}")
    try:
        emb = build_embedding(n, rot, outer)  # type: ignore[arg-type]
    except VisCompError as exc:
        raise ParseError(f"invalid embedding: {exc}") from exc
    if emb.m != m:
        raise ParseError(f"header says {m} edges, rotations give {emb.m}")
    return emb


# ---------------------------------------------------------------------------
# Grid drawings
# ---------------------------------------------------------------------------


def format_grid(d: GridDrawing) -> str:
    out = [f"# algo {d.provenance}"] if d.provenance else []
    out += [f"# {k} {d.meta[k]}" for k in _GRID_META if k in d.meta]
    out += [f"v {v} {x} {y}" for v, (x, y) in sorted(d.points.items())]
    out += [f"e {u} {v}" for u, v in sorted((min(e), max(e)) for e in d.edges)]
    return "\n".join(out) + "\n"


def parse_grid(text: str) -> GridDrawing:
    pts: dict[int, tuple[int, int]] = {}
    edges: list[tuple[int, int]] = []
    for no, line in _lines(text):
        t = line.split()
        if t[0] == "v" and len(t) == 4:
            v = _int(t[1], no)
            if v in pts:
                raise ParseError(f"line {no}: vertex {v} listed twice")
            pts[v] = (_int(t[2], no), _int(t[3], no))
        elif t[0] == "e" and len(t) == 3:
            edges.append((_int(t[1], no), _int(t[2], no)))
        else:
            raise ParseError(f"line {no}: cannot parse {line!r}")
    for u, v in edges:
        if u not in pts or v not in pts:
            raise ParseError(f"edge {u}-{v} uses an unplaced vertex")
    meta = _meta(text)
    info = {k: int(meta[k]) for k in _GRID_META if k in meta and meta[k].isdigit()}
    return GridDrawing(pts, edges, meta.get("algo", ""), info)


# ---------------------------------------------------------------------------
# Arc drawings
# ---------------------------------------------------------------------------


def _digits(bits: int) -> int:
    # enough decimal digits for a binary mantissa to round-trip
    return math.ceil(bits * math.log10(2)) + 2


def _num(x, digits: int) -> str:
    return mpmath.nstr(mpmath.mpf(x), digits)


def format_arc(d: ArcDrawing) -> str:
    bits = int(d.meta.get("precision", 256))
    dig = _digits(bits)
    with mpmath.workprec(bits):
        out = [f"# algo {d.provenance}"] if d.provenance else []
        out.append(f"# precision {bits}")
        out += [f"v {v} {_num(x, dig)} {_num(y, dig)}" for v, (x, y) in sorted(d.points.items())]
        for key in sorted(d.edges):
            p = d.edges[key]
            if isinstance(p, Segment):
                out.append(f"seg {key[0]} {key[1]}")
            else:
                out.append(
                    f"arc {p.u} {p.v} {_num(p.center[0], dig)} {_num(p.center[1], dig)} "
                    f"{_num(p.radius, dig)} {'ccw' if p.ccw else 'cw'}"
                )
    return "\n".join(out) + "\n"


def parse_arc(text: str, bits: int | None = None) -> ArcDrawing:
    if bits is None:
        mt = re.search(r"^#\s*precision\s+(\d+)", text, re.M)
        bits = int(mt.group(1)) if mt else 256
    pts: dict = {}
    edges: dict = {}
    with mpmath.workprec(bits):

        def num(tok: str, no: int):
            try:
                return mpmath.mpf(tok)
            except (ValueError, TypeError):
                raise ParseError(f"line {no}: bad number {tok!r}") from None

        for no, line in _lines(text):
            t = line.split()
            if t[0] == "v" and len(t) == 4:
                pts[_int(t[1], no)] = (num(t[2], no), num(t[3], no))
            elif t[0] == "seg" and len(t) == 3:
                u, v = _int(t[1], no), _int(t[2], no)
                edges[(u, v)] = Segment(u, v)
            elif t[0] == "arc" and len(t) == 7:
                u, v = _int(t[1], no), _int(t[2], no)
                if t[6] not in ("ccw", "cw"):
                    raise ParseError(f"line {no}: direction must be ccw or cw")
                edges[(u, v)] = Arc(u, v, (num(t[3], no), num(t[4], no)), num(t[5], no), t[6] == "ccw")
            else:
                raise ParseError(f"line {no}: cannot parse {line!r}")
    for u, v in edges:
        if u not in pts or v not in pts:
            raise ParseError(f"edge {u}-{v} uses an unplaced vertex")
    return ArcDrawing(pts, edges, _meta(text).get("algo", ""), {"precision": bits})


def read_drawing(text: str) -> GridDrawing | ArcDrawing:
    """Grid drawings use ``e`` lines, arc drawings ``seg``/``arc`` lines."""
    kinds = {line.split()[0] for _, line in _lines(text)}
    if kinds & {"seg", "arc"}:
        return parse_arc(text)
    return parse_grid(text)


# ---------------------------------------------------------------------------
# Realizer dumps
# ---------------------------------------------------------------------------


def parse_realizer(text: str) -> tuple[dict[str, dict[int, int]], tuple[int, int, int, int]]:
    """Parent maps per tree label and the footer ``(l1, l2, ln, delta0)``."""
    parent: dict[str, dict[int, int]] = {"1": {}, "2": {}, "n": {}}
    footer = None
    for no, line in _lines(text):
        t = line.split()
        if t[0] == "edge" and len(t) == 5:
            u, v = _int(t[1], no), _int(t[2], no)
            lab = t[3].removeprefix("tree=")
            p = _int(t[4].removeprefix("parent="), no)
            if lab not in parent or p not in (u, v):
                raise ParseError(f"line {no}: bad edge record {line!r}")
            parent[lab][v if p == u else u] = p
        elif t[0] == "leaves" and len(t) == 6 and t[4] == "delta0":
            footer = tuple(_int(x, no) for x in (t[1], t[2], t[3], t[5]))
        else:
            raise ParseError(f"line {no}: cannot parse {line!r}")
    if footer is None:
        raise ParseError("missing leaves footer")
    return parent, footer  # type: ignore[return-value]


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")

"""Benchmark tables: one row per (n, seed), aggregated per n."""

from __future__ import annotations

import csv
import io
import statistics
import time
from collections import defaultdict
from typing import Any, Sequence

from .drawing import GridDrawing
from .pipeline import CLASS_OF_ALGO, bound_value, draw, generate, primitive_count
from .verify import dof

COLUMNS = ("algo", "n", "seed", "e", "count", "bound", "slack", "width", "height", "dof", "time_s")
_INT = {"n", "seed", "e", "count", "dof"}
_FLOAT = {"bound", "slack", "time_s"}


def run_bench(algo: str, ns: Sequence[int], seeds: Sequence[int], *, bits: int = 256,
              timing: bool = True, edges: int | None = None) -> list[dict[str, Any]]:
    rows = []
    for n in ns:
        for seed in seeds:
            g = generate(CLASS_OF_ALGO[algo], n, seed, edges)
            t0 = time.perf_counter()
            out = draw(algo, g, bits=bits)
            elapsed = time.perf_counter() - t0
            d = out.drawing
            count = primitive_count(d)
            e = g.m
            bound = float(bound_value(algo, g.n, e))
            if isinstance(d, GridDrawing):
                w, h = d.extents()
                dofs = 4 * count
            else:
                xs = [float(p[0]) for p in d.points.values()]
                ys = [float(p[1]) for p in d.points.values()]
                w, h = round(max(xs) - min(xs), 9), round(max(ys) - min(ys), 9)
                dofs = dof(d)
            rows.append({
                "algo": algo, "n": n, "seed": seed, "e": e, "count": count,
                "bound": round(bound, 6), "slack": round(bound - count, 6),
                "width": w, "height": h, "dof": dofs,
                "time_s": round(elapsed, 4) if timing else 0.0,
            })
    return rows


def aggregate(rows: Sequence[dict[str, Any]]) -> list[dict[str, Any]]:
    by_n: dict[int, list] = defaultdict(list)
    for r in rows:
        by_n[r["n"]].append(r)
    out = []
    for n in sorted(by_n):
        rs = by_n[n]
        agg: dict[str, Any] = {"n": n, "instances": len(rs)}
        for col in ("count", "slack", "width", "height", "time_s"):
            vals = [float(r[col]) for r in rs]
            agg[f"mean_{col}"] = round(statistics.fmean(vals), 4)
            agg[f"max_{col}"] = round(max(vals), 4)
        agg["min_slack"] = round(min(float(r["slack"]) for r in rs), 4)
        out.append(agg)
    return out


def to_csv(rows: Sequence[dict[str, Any]]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: r[k] for k in COLUMNS})
    return buf.getvalue()


def _num(s: str) -> int | float:
    try:
        return int(s)
    except ValueError:
        return float(s)


def parse_csv(text: str) -> list[dict[str, Any]]:
    """Inverse of :func:`to_csv`."""
    rows = []
    for raw in csv.DictReader(io.StringIO(text)):
        row: dict[str, Any] = {}
        for k in COLUMNS:
            v = raw[k]
            if k in _INT:
                row[k] = int(v)
            elif k in _FLOAT:
                row[k] = float(v)
            elif k in ("width", "height"):
                row[k] = _num(v)
            else:
                row[k] = v
        rows.append(row)
    return rows


def format_table(rows: Sequence[dict[str, Any]]) -> str:
    head = ("n", "seed", "e", "count", "bound", "slack", "width", "height", "dof", "time_s")
    widths = [max(len(h), *(len(str(r[h])) for r in rows)) if rows else len(h) for h in head]
    lines = ["  ".join(h.rjust(w) for h, w in zip(head, widths))]
    for r in rows:
        lines.append("  ".join(str(r[h]).rjust(w) for h, w in zip(head, widths)))
    lines.append("")
    lines.append("per n: mean/max count, min slack, max width, max height, mean time")
    for a in aggregate(rows):
        lines.append(
            f"n={a['n']}: count {a['mean_count']}/{a['max_count']}  "
            f"slack>={a['min_slack']}  width<={a['max_width']}  height<={a['max_height']}  "
            f"time {a['mean_time_s']}s"
        )
    return "\n".join(lines) + "\n"

"""Matplotlib figures for reports and benchmarks (written to files only)."""

from __future__ import annotations

import math
from collections import defaultdict
from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Arc as ArcPatch  # noqa: E402

from .drawing import Arc, ArcDrawing, GridDrawing, Segment  # noqa: E402
from .svg import _span  # noqa: E402

# fixed metadata keeps PNG output byte-identical across runs
_PNG_META = {"Software": None}


def plot_drawing(d: GridDrawing | ArcDrawing, path: str | Path,
                 colors: Mapping[tuple[int, int], str] | None = None,
                 title: str | None = None) -> None:
    colors = dict(colors or {})
    fig, ax = plt.subplots(figsize=(6, 6))
    pts = {v: (float(p[0]), float(p[1])) for v, p in d.points.items()}

    def color(u, v):
        return colors.get((u, v)) or colors.get((v, u)) or "black"

    if isinstance(d, GridDrawing):
        for u, v in sorted(d.edges):
            (x1, y1), (x2, y2) = pts[u], pts[v]
            ax.plot([x1, x2], [y1, y2], color=color(u, v), lw=1)
    else:
        for (u, v), p in sorted(d.edges.items()):
            if isinstance(p, Segment):
                (x1, y1), (x2, y2) = pts[u], pts[v]
                ax.plot([x1, x2], [y1, y2], color=color(u, v), lw=1)
            else:
                a0, span = _span(p, d)
                lo, hi = (a0, a0 + span) if span > 0 else (a0 + span, a0)
                r = float(p.radius)
                ax.add_patch(ArcPatch(
                    (float(p.center[0]), float(p.center[1])), 2 * r, 2 * r,
                    theta1=math.degrees(lo), theta2=math.degrees(hi),
                    color=color(u, v), lw=1,
                ))
    xs = [p[0] for p in pts.values()]
    ys = [p[1] for p in pts.values()]
    ax.scatter(xs, ys, s=12, color="black", zorder=3)
    if len(pts) <= 40:
        for v, (x, y) in sorted(pts.items()):
            ax.annotate(str(v), (x, y), textcoords="offset points", xytext=(3, 3), fontsize=7)
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=_PNG_META)
    plt.close(fig)


def plot_bench(rows: Sequence[Mapping[str, object]], path: str | Path, title: str = "") -> None:
    """Primitive counts against their bound, one marker per instance."""
    by_n: dict[int, list] = defaultdict(list)
    for r in rows:
        by_n[int(r["n"])].append(r)
    ns = sorted(by_n)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.scatter([int(r["n"]) for r in rows], [float(r["count"]) for r in rows],
               s=10, label="primitives", color="#1f77b4")
    ax.plot(ns, [float(by_n[n][0]["bound"]) for n in ns], color="#d62728",
            marker="_", label="bound")
    ax.set_xlabel("n")
    ax.set_ylabel("count")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=_PNG_META)
    plt.close(fig)

"""SVG export for grid and arc drawings.

The y axis is flipped so that "up" in drawing coordinates is up on screen,
and the view box leaves a 5% margin around the drawing. Edges of trees
1, 2 and n can be coloured red, blue and green.
"""

from __future__ import annotations

import math
from typing import Mapping

import mpmath

from .drawing import Arc, ArcDrawing, GridDrawing, Segment
from .realizer import SchnyderRealizer

TREE_COLORS = {"1": "#d62728", "2": "#1f77b4", "n": "#2ca02c"}
MARGIN = 0.05


def tree_colors(r: SchnyderRealizer | None, edges) -> dict[tuple[int, int], str]:
    if r is None:
        return {}
    out = {}
    for u, v in edges:
        lab = r.label_of(u, v)
        if lab is not None:
            out[(u, v)] = TREE_COLORS[lab[0]]
    return out


def _f(x) -> float:
    return float(x)


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def _view_box(xs: list[float], ys: list[float]) -> tuple[float, float, float, float]:
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    w, h = hi_x - lo_x, hi_y - lo_y
    side = max(w, h, 1e-12)
    mx, my = MARGIN * side, MARGIN * side
    # screen y is the negated drawing y
    return lo_x - mx, -hi_y - my, w + 2 * mx, h + 2 * my


def to_svg(d: GridDrawing | ArcDrawing, colors: Mapping[tuple[int, int], str] | None = None,
           labels: bool = True) -> str:
    colors = dict(colors or {})
    pts = {v: (_f(p[0]), _f(p[1])) for v, p in d.points.items()}
    xs = [p[0] for p in pts.values()]
    ys = [p[1] for p in pts.values()]
    if isinstance(d, ArcDrawing):
        # arcs may bulge past their endpoints
        for p in d.edges.values():
            if isinstance(p, Arc):
                for x, y in _arc_samples(p, d):
                    xs.append(x)
                    ys.append(y)
    vb = _view_box(xs, ys) if xs else (0, 0, 1, 1)
    unit = max(vb[2], vb[3])
    stroke = unit / 300
    radius = unit / 120
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{" ".join(_fmt(x) for x in vb)}" '
        f'width="600" height="{_fmt(600 * vb[3] / vb[2])}">',
        f'<g fill="none" stroke-width="{_fmt(stroke)}" stroke-linecap="round">',
    ]

    def color(u, v):
        return colors.get((u, v)) or colors.get((v, u)) or "#000000"

    if isinstance(d, GridDrawing):
        for u, v in sorted(d.edges):
            (x1, y1), (x2, y2) = pts[u], pts[v]
            out.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(-y1)}" x2="{_fmt(x2)}" y2="{_fmt(-y2)}" '
                f'stroke="{color(u, v)}"/>'
            )
    else:
        for (u, v), p in sorted(d.edges.items()):
            if isinstance(p, Segment):
                (x1, y1), (x2, y2) = pts[u], pts[v]
                out.append(f'<path d="M {_fmt(x1)} {_fmt(-y1)} L {_fmt(x2)} {_fmt(-y2)}" '
                           f'stroke="{color(u, v)}"/>')
            else:
                out.append(f'<path d="{_arc_path(p, d)}" stroke="{color(u, v)}"/>')
    out.append("</g>")
    out.append('<g fill="#ffffff" stroke="#000000" '
               f'stroke-width="{_fmt(stroke / 2)}">')
    for v in sorted(pts):
        x, y = pts[v]
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(radius)}"/>')
    out.append("</g>")
    if labels:
        out.append(f'<g font-size="{_fmt(radius * 1.6)}" text-anchor="middle" '
                   'dominant-baseline="central" font-family="sans-serif">')
        for v in sorted(pts):
            x, y = pts[v]
            out.append(f'<text x="{_fmt(x)}" y="{_fmt(-y)}">{v}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _span(p: Arc, d: ArcDrawing):
    a, b = d.points[p.u], d.points[p.v]
    with mpmath.workprec(int(d.meta.get("precision", 256))):
        cx, cy = mpmath.mpf(p.center[0]), mpmath.mpf(p.center[1])
        a0 = mpmath.atan2(mpmath.mpf(a[1]) - cy, mpmath.mpf(a[0]) - cx)
        a1 = mpmath.atan2(mpmath.mpf(b[1]) - cy, mpmath.mpf(b[0]) - cx)
        span = a1 - a0
        if p.ccw:
            while span <= 0:
                span += 2 * mpmath.pi
        else:
            while span >= 0:
                span -= 2 * mpmath.pi
    return float(a0), float(span)


def _arc_samples(p: Arc, d: ArcDrawing, k: int = 8) -> list[tuple[float, float]]:
    a0, span = _span(p, d)
    cx, cy, r = _f(p.center[0]), _f(p.center[1]), _f(p.radius)
    return [(cx + r * math.cos(a0 + span * i / k), cy + r * math.sin(a0 + span * i / k))
            for i in range(1, k)]


def _arc_path(p: Arc, d: ArcDrawing) -> str:
    a, b = d.points[p.u], d.points[p.v]
    large = 1 if abs(_span(p, d)[1]) > math.pi else 0
    r = _f(p.radius)
    # a counterclockwise sweep in drawing coordinates is clockwise in screen
    # coordinates (y down), which SVG calls sweep-flag 0
    sweep_flag = 0 if p.ccw else 1
    return (f"M {_fmt(_f(a[0]))} {_fmt(-_f(a[1]))} A {_fmt(r)} {_fmt(r)} 0 {large} {sweep_flag} "
            f"{_fmt(_f(b[0]))} {_fmt(-_f(b[1]))}")

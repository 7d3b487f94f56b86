"""Glue between generators, drawers and the verifier.

The CLI, the benchmark runner and the acceptance suite all go through
these functions so every entry point draws and checks the same way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .arcdraw import (
    draw_planar_arcs, draw_triangulation_arcs, planar_arc_bound, triangulation_arc_bound,
)
from .drawing import ArcDrawing, GridDrawing
from .errors import ClassMismatch, OverlappingEdges
from .graph import (
    PlanarEmbedding, classify, generate_maximal_outerplanar, generate_planar,
    generate_planar3tree, generate_tree, generate_triangulation, is_maximal_outerplanar,
    is_planar3tree, is_tree, is_triangulation,
)
from .realizer import SchnyderRealizer
from .svg import tree_colors
from .treedraw import draw_tree, height_bound, segment_bound, width_bound
from .griddraw import draw_outerplanar, draw_planar3tree
from .verify import (
    DEFAULT_EPS, check_planarity_exact, check_planarity_tol, check_tn_collinearity,
    count_segments, primitive_groups,
)

ALGOS = ("tree", "3tree", "outerplanar", "tri-arcs", "planar-arcs")
CLASSES = ("tree", "3tree", "outerplanar", "triangulation", "planar")
CLASS_OF_ALGO = {
    "tree": "tree", "3tree": "3tree", "outerplanar": "outerplanar",
    "tri-arcs": "triangulation", "planar-arcs": "planar",
}


def generate(cls: str, n: int, seed: int, edges: int | None = None) -> PlanarEmbedding:
    if cls == "tree":
        return generate_tree(n, seed)
    if cls == "3tree":
        return generate_planar3tree(n, seed)[0]
    if cls == "outerplanar":
        return generate_maximal_outerplanar(n, seed)
    if cls == "triangulation":
        return generate_triangulation(n, seed, 3 * n)
    if cls == "planar":
        return generate_planar(n, seed, edges)
    raise ValueError(f"unknown class {cls!r}")


def check_class(algo: str, emb: PlanarEmbedding) -> None:
    ok = {
        "tree": is_tree,
        "3tree": lambda g: g.n >= 3 and (g.n == 3 and g.m == 3 or is_planar3tree(g)),
        "outerplanar": is_maximal_outerplanar,
        "tri-arcs": is_triangulation,
        "planar-arcs": lambda g: g.n >= 3 and g.is_connected(),
    }[algo](emb)
    if not ok:
        raise ClassMismatch(f"algorithm {algo} does not accept a {classify(emb)} graph")


@dataclass
class Outcome:
    algo: str
    graph: PlanarEmbedding
    drawing: GridDrawing | ArcDrawing
    realizer: SchnyderRealizer | None = None
    trace_text: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    def colors(self) -> dict[tuple[int, int], str]:
        edges = self.drawing.edges
        return tree_colors(self.realizer, list(edges))


def draw(algo: str, emb: PlanarEmbedding, *, bits: int = 256, check: bool = False,
         outer_policy: str = "auto") -> Outcome:
    """Draw ``emb`` with ``algo``.

    ``outer_policy`` applies to the 3-tree drawer (given, auto or best) and
    to the arc drawers, where anything but ``given``/``auto`` searches every
    face for the fewest-leaf minimal realizer.
    """
    check_class(algo, emb)
    if algo == "tree":
        return Outcome(algo, emb, draw_tree(emb))
    if algo in ("3tree", "outerplanar"):
        if algo == "3tree":
            res = draw_planar3tree(emb, check=check, outer_policy=outer_policy)
        else:
            res = draw_outerplanar(emb, check=check)
        extra = {"lambda": res.lam, "reports": res.reports}
        return Outcome(algo, emb, res.drawing, res.realizer, res.trace.dump(), extra)
    best = outer_policy == "best"
    if algo == "tri-arcs":
        res = draw_triangulation_arcs(emb, bits=bits, check=check, best_outer=best)
        return Outcome(algo, emb, res.drawing, res.realizer, _arc_trace(res.steps), {
            "tn_parent": res.tn_parent, "horizon_errors": res.horizon_errors,
            "expected": res.expected_primitives,
        })
    if algo == "planar-arcs":
        res = draw_planar_arcs(emb, bits=bits, check=check, best_outer=best)
        inner = res.triangulated
        return Outcome(algo, emb, res.drawing, inner.realizer, _arc_trace(inner.steps), {
            "reduction": res.reduction, "chords": res.chords,
            "horizon_errors": inner.horizon_errors,
        })
    raise ValueError(f"unknown algorithm {algo!r}")


def _arc_trace(steps) -> str:
    lines = []
    for s in steps:
        kids = " ".join(map(str, s.children)) or "-"
        al = "-" if s.aligned is None else str(s.aligned)
        lines.append(f"step {s.k} vertex {s.vertex} children {kids} aligned {al}")
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# Bound checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    value: Any = None
    bound: Any = None

    def line(self) -> str:
        return f"{self.name}: {'PASS' if self.ok else 'FAIL'}"


def bound_checks(algo: str, d: GridDrawing | ArcDrawing, *, eps: float = DEFAULT_EPS,
                 lam: int | None = None, tn_parent: dict[int, int] | None = None,
                 augmented_n: int | None = None) -> list[Check]:
    """Every bound the algorithm promises, recomputed from the drawing alone."""
    n = d.n
    out: list[Check] = []
    if isinstance(d, GridDrawing):
        try:
            segs = count_segments(d)
        except OverlappingEdges:  # reported by the planarity check below
            segs = len(d.edges) + 1
        w, h = d.extents()
        if algo == "tree":
            out.append(Check("segments<= ceil(3(n-1)/4)", segs <= segment_bound(n), segs, segment_bound(n)))
            out.append(Check("width<= 2*2^ceil(log2 n)*n", w <= width_bound(n), w, width_bound(n)))
            out.append(Check("height<= 2*(3/2)^ceil(log2 n)*n", h <= height_bound(n), h, height_bound(n)))
        elif algo == "3tree":
            b = Fraction(8 * n - 17, 3)
            out.append(Check("segments<= (8n-17)/3", segs <= b, segs, b))
            out.append(Check("x-extent= n-1", w == n - 1, w, n - 1))
            if lam is not None:
                out.append(Check("y-extent<= (n-1)*lambda", h <= (n - 1) * lam, h, (n - 1) * lam))
            else:
                out.append(Check("y-extent<= (n-1)*n", h <= (n - 1) * n, h, (n - 1) * n))
        elif algo == "outerplanar":
            b = Fraction(3 * n, 2)
            N = augmented_n or n + 1
            out.append(Check("segments<= 3n/2", segs <= b, segs, b))
            out.append(Check("x-extent<= N-1", w <= N - 1, w, N - 1))
            ly = (N - 1) * (lam if lam is not None else N)
            out.append(Check("y-extent<= (N-1)*lambda" if lam is not None else "y-extent<= (N-1)*N",
                             h <= ly, h, ly))
        v = check_planarity_exact(d)
        out.append(Check("planarity", v.ok, v.witness))
        return out
    groups = primitive_groups(d, eps)
    count = len(groups)
    arcs = sum(1 for k, _ in groups if k == "arc")
    dof_val = 5 * arcs + 4 * (count - arcs)
    e = len(d.edges)
    if algo == "tri-arcs":
        b = Fraction(5 * n - 11, 3)
        out.append(Check("arcs<= (5n-11)/3", count <= b, count, b))
        bd = Fraction(23 * n - 50, 3)
        out.append(Check("dof<= (23n-50)/3", dof_val <= bd, dof_val, bd))
        if tn_parent is not None:
            v = check_tn_collinearity(d, tn_parent, eps)
            out.append(Check("tn-collinear", v.ok, v.witness))
    elif algo == "planar-arcs":
        b = Fraction(14 * n - 3 * e - 29, 3)
        out.append(Check("arcs<= 14n/3-e-29/3", count <= b, count, b))
    v = check_planarity_tol(d, eps)
    out.append(Check(f"planarity(eps={eps:g})", v.ok, v.witness))
    return out


def primitive_count(d: GridDrawing | ArcDrawing, eps: float = DEFAULT_EPS) -> int:
    if isinstance(d, GridDrawing):
        return count_segments(d)
    return len(primitive_groups(d, eps))


def bound_value(algo: str, n: int, e: int) -> float:
    return {
        "tree": lambda: segment_bound(n),
        "3tree": lambda: (8 * n - 17) / 3,
        "outerplanar": lambda: 3 * n / 2,
        "tri-arcs": lambda: triangulation_arc_bound(n),
        "planar-arcs": lambda: planar_arc_bound(n, e),
    }[algo]()


__all__ = [
    "ALGOS", "CLASSES", "CLASS_OF_ALGO", "Check", "Outcome", "bound_checks",
    "bound_value", "check_class", "draw", "generate", "primitive_count",
]

"""Triangulations and planar graphs drawn with few circular arcs.

The outer triangle goes on the unit circle (v1 at 210 degrees, v2 at 330,
vn at 90). Vertices are then processed in reverse canonical order. The
undrawn region is everything below the horizon and above the bottom arc
``v1 v2``; processing a horizon vertex ``h`` draws one arc between its two
horizon neighbours, puts the still undrawn neighbours of ``h`` on that arc
and joins them to ``h`` by straight segments. Those segments are exactly
the edges of tree ``n`` of the realizer derived from the order, and one
child always continues the segment entering ``h`` from above, so tree
``n`` costs one segment per leaf.

All geometry runs in mpmath at a configurable precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import mpmath
from mpmath import mpf

from .drawing import Arc, ArcDrawing, Segment
from .errors import DegenerateTriangle, GeometryBreakdown, NotConnected, NotTriangulation
from .graph import FaceSet, PlanarEmbedding, default_outer, is_triangulation, triangulate
from .realizer import (
    CanonicalOrder, SchnyderRealizer, best_outer_face, check_canonical_order,
    leaf_counts, minimize_realizer, order_from_tree, realizer, rotate_to,
    schnyder_from_order,
)

DELTA = mpf(2) ** -20
DEFAULT_BITS = 256

Point = tuple[mpf, mpf]


# ---------------------------------------------------------------------------
# Circle helpers
# ---------------------------------------------------------------------------


def _sub(a: Point, b: Point) -> Point:
    return a[0] - b[0], a[1] - b[1]


def _cross(a: Point, b: Point):
    return a[0] * b[1] - a[1] * b[0]


def _dot(a: Point, b: Point):
    return a[0] * b[0] + a[1] * b[1]


def _norm(a: Point):
    return mpmath.sqrt(_dot(a, a))


def _angle(a: Point, b: Point):
    """Unsigned angle between two vectors."""
    return abs(mpmath.atan2(_cross(a, b), _dot(a, b)))


def sweep(arc: Arc, p: Point, q: Point) -> tuple[mpf, mpf]:
    """Start angle and signed sweep of ``arc`` travelling from ``p`` to ``q``."""
    c = arc.center
    a0 = mpmath.atan2(p[1] - c[1], p[0] - c[0])
    a1 = mpmath.atan2(q[1] - c[1], q[0] - c[0])
    d = a1 - a0
    two_pi = 2 * mpmath.pi
    if arc.ccw:
        while d <= 0:
            d += two_pi
    else:
        while d >= 0:
            d -= two_pi
    return a0, d


def point_at(center: Point, radius, angle) -> Point:
    return center[0] + radius * mpmath.cos(angle), center[1] + radius * mpmath.sin(angle)


def max_curvature_arc(p: Point, q: Point, apex: Point, u: int = -1, v: int = -1) -> Arc:
    """Arc from ``p`` to ``q`` bulging towards ``apex`` inside the triangle.

    Of the two circles through ``p`` and ``q`` tangent to a triangle side at
    ``p`` or at ``q``, the flatter one stays inside; its curvature is then
    reduced by the factor ``1 - DELTA`` so the arc touches the triangle only
    at its ends.
    """
    chord = _sub(q, p)
    area = _cross(chord, _sub(apex, p))
    length = _norm(chord)
    scale = max(length, _norm(_sub(apex, p)))
    if length == 0 or abs(area) <= scale * scale * mpf(2) ** (-mpmath.mp.prec + 16):
        raise DegenerateTriangle("arc triangle is degenerate")
    alpha = min(_angle(chord, _sub(apex, p)), _angle(_sub(p, q), _sub(apex, q)))
    radius = length / (2 * mpmath.sin(alpha)) / (1 - DELTA)
    mid = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
    # unit normal of the chord pointing to the apex side
    sign = 1 if area > 0 else -1
    nx, ny = -chord[1] * sign / length, chord[0] * sign / length
    d = mpmath.sqrt(radius * radius - length * length / 4)
    center = (mid[0] - nx * d, mid[1] - ny * d)
    # apex to the left of p->q means the arc passes above the centre, i.e. cw
    return Arc(u, v, center, radius, ccw=area < 0)


def _line_circle(a: Point, b: Point, center: Point, radius) -> list:
    """Parameters ``s`` with ``a + s (b - a)`` on the circle."""
    d = _sub(b, a)
    f = _sub(a, center)
    qa = _dot(d, d)
    qb = 2 * _dot(f, d)
    qc = _dot(f, f) - radius * radius
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        return []
    r = mpmath.sqrt(disc)
    return sorted([(-qb - r) / (2 * qa), (-qb + r) / (2 * qa)])


def _arc_param(center: Point, a0, span, x: Point):
    """Fraction of the sweep at which ``x`` (on the circle) sits."""
    ang = mpmath.atan2(x[1] - center[1], x[0] - center[0])
    d = ang - a0
    two_pi = 2 * mpmath.pi
    if span > 0:
        while d < 0:
            d += two_pi
    else:
        while d > 0:
            d -= two_pi
    return d / span


# ---------------------------------------------------------------------------
# State
# ---------------------------------------------------------------------------


@dataclass
class StepInfo:
    k: int
    vertex: int
    children: list[int]
    t_start: mpf
    t_end: mpf
    t_align: mpf | None
    aligned: int | None


@dataclass
class HorizonState:
    v1: int
    v2: int
    vn: int
    horizon: list[int]
    drawing: ArcDrawing
    # vertex -> upper endpoint of its alignment segment
    ell: dict[int, int] = field(default_factory=dict)
    steps: list[StepInfo] = field(default_factory=list)

    @property
    def points(self) -> dict[int, Point]:
        return self.drawing.points


def init_canvas(v1: int, v2: int, vn: int) -> tuple[HorizonState, ArcDrawing]:
    """Outer triangle on the unit circle; one circle covers its three edges."""
    deg = mpmath.pi / 180
    origin = (mpf(0), mpf(0))
    pts = {
        v1: point_at(origin, 1, 210 * deg),
        v2: point_at(origin, 1, 330 * deg),
        vn: (mpf(0), mpf(1)),
    }
    edges = {
        (v1, v2): Arc(v1, v2, origin, mpf(1), True),
        (v2, vn): Arc(v2, vn, origin, mpf(1), True),
        (vn, v1): Arc(vn, v1, origin, mpf(1), True),
    }
    d = ArcDrawing(pts, edges, "tri-arcs", {"precision": mpmath.mp.prec})
    return HorizonState(v1, v2, vn, [v1, vn, v2], d), d


def _segment_hit(a: Point, b: Point, arc: Arc, a0, span,
                 forward_only: bool) -> tuple[mpf, Point] | None:
    """Arc fraction and point where line ``a b`` meets ``arc``.

    With ``forward_only`` the hit must lie beyond ``b`` (the ray from ``a``
    through ``b``); otherwise it must lie on the segment ``a b``.
    """
    best = None
    for s in _line_circle(a, b, arc.center, arc.radius):
        if forward_only and s <= 1:
            continue
        if not forward_only and not (0 < s < 1):
            continue
        x = (a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]))
        t = _arc_param(arc.center, a0, span, x)
        if 0 <= t <= 1 and best is None:
            best = (t, x)
    return best


def _choose_aligned(c: int, lo, hit, hi) -> int:
    """Child index to pin at ``hit``: the one leaving the widest gaps."""
    best, choice = None, 0
    for a in range(c):
        gap = min((hit - lo) / (a + 1), (hi - hit) / (c - a))
        if best is None or gap > best:
            best, choice = gap, a
    return choice


def process_vertex(state: HorizonState, h: int, children: Sequence[int], k: int = 0) -> HorizonState:
    """Draw the arc below ``h`` and place its undrawn neighbours on it.

    ``children`` lists the undrawn neighbours from left (``h_{i-1}`` side)
    to right.
    """
    hz = state.horizon
    i = hz.index(h)
    if i in (0, len(hz) - 1):
        raise GeometryBreakdown(f"cannot process horizon end {h}", k)
    left, right = hz[i - 1], hz[i + 1]
    P = state.points
    p, q, apex = P[left], P[right], P[h]
    try:
        arc = max_curvature_arc(p, q, apex, left, right)
    except DegenerateTriangle as exc:
        raise GeometryBreakdown(str(exc), k) from exc
    a0, span = sweep(arc, p, q)
    lo = hi = None
    hit_lo = (mpf(0), p) if left == state.v1 else _segment_hit(P[state.v1], apex, arc, a0, span, False)
    hit_hi = (mpf(1), q) if right == state.v2 else _segment_hit(P[state.v2], apex, arc, a0, span, False)
    if hit_lo is not None and hit_hi is not None:
        lo, hi = hit_lo[0], hit_hi[0]
    if lo is None or hi is None or not lo < hi:
        raise GeometryBreakdown(f"designated part of the arc below {h} is empty", k)
    c = len(children)
    ts: list = []
    t_align = aligned = anchor = None
    if c:
        up = state.ell.get(h)
        if up is None:
            ts = [lo + (hi - lo) * (j + 1) / (c + 1) for j in range(c)]
        else:
            hit = _segment_hit(P[up], apex, arc, a0, span, True)
            if hit is not None:
                t_align, anchor = hit
            if t_align is None or not lo < t_align < hi:
                raise GeometryBreakdown(f"alignment line of {h} misses the designated arc", k)
            a = _choose_aligned(c, lo, t_align, hi)
            aligned = children[a]
            ts = [lo + (t_align - lo) * (j + 1) / (a + 1) for j in range(a)]
            ts.append(t_align)
            r = c - a - 1
            ts += [t_align + (hi - t_align) * (j + 1) / (r + 1) for j in range(r)]
        floor = mpf(2) ** (-mpmath.mp.prec + 24)
        for x, y in zip([mpf(0)] + ts, ts + [mpf(1)]):
            if not (y - x) * abs(span) * arc.radius > floor:
                raise GeometryBreakdown(f"neighbours of {h} collapse on the arc", k)
    placed = {}
    for w, t in zip(children, ts):
        if w == aligned:
            # continuation of the segment entering h from above
            placed[w] = anchor
        else:
            placed[w] = point_at(arc.center, arc.radius, a0 + t * span)
    P.update(placed)
    chain = [left] + list(children) + [right]
    for x, y in zip(chain, chain[1:]):
        state.drawing.edges[(x, y)] = Arc(x, y, arc.center, arc.radius, arc.ccw)
    for w in children:
        state.drawing.edges[(w, h)] = Segment(w, h)
        state.ell[w] = h
    state.horizon = hz[:i] + list(children) + hz[i + 1:]
    state.steps.append(StepInfo(k, h, list(children), lo, hi, t_align, aligned))
    return state


# ---------------------------------------------------------------------------
# Invariant checks on the running state
# ---------------------------------------------------------------------------


def _tangent(arc: Arc, at: Point, forward: bool) -> Point:
    """Unit tangent of the circle at ``at`` in the arc's travel direction."""
    rx, ry = _sub(at, arc.center)
    t = (-ry, rx) if arc.ccw else (ry, -rx)
    if not forward:
        t = (-t[0], -t[1])
    n = _norm(t)
    return t[0] / n, t[1] / n


def _oriented(d: ArcDrawing, x: int, y: int) -> Arc:
    """The arc of edge ``xy`` travelling from ``x`` to ``y``."""
    if (x, y) in d.edges:
        arc = d.edges[(x, y)]
        return Arc(x, y, arc.center, arc.radius, arc.ccw)
    arc = d.edges[(y, x)]
    return Arc(x, y, arc.center, arc.radius, not arc.ccw)


def check_horizon(state: HorizonState) -> list[str]:
    """Strict convexity of the undrawn region and the alignment invariant."""
    errors: list[str] = []
    P = state.points
    hz = state.horizon
    # boundary walked clockwise: horizon left to right, then bottom arc back
    walk = []
    for x, y in list(zip(hz, hz[1:])) + [(state.v2, state.v1)]:
        arc = _oriented(state.drawing, x, y)
        walk.append((x, y, arc, sweep(arc, P[x], P[y])[1]))
    total = mpf(0)
    for x, y, arc, span in walk:
        if span >= 0:
            errors.append(f"boundary piece {x}-{y} bulges outward")
        total += span
    for (x0, y0, a0_, _), (x1, y1, a1_, _) in zip(walk, walk[1:] + walk[:1]):
        t_in = _tangent(a0_, P[y0], True)
        t_out = _tangent(a1_, P[x1], True)
        turn = mpmath.atan2(_cross(t_in, t_out), _dot(t_in, t_out))
        # zero turn where two pieces of one arc meet at a placed vertex
        if turn > mpf(2) ** (-mpmath.mp.prec // 2):
            errors.append(f"boundary turns the wrong way at {y0}")
        total += turn
    if abs(total + 2 * mpmath.pi) > mpf(10) ** -20:
        errors.append(f"boundary turning {mpmath.nstr(total, 10)} is not -2pi")
    bottom = walk[-1][2]
    origin = bottom.center
    for v, up in state.ell.items():
        a, b = P[up], P[v]
        hits = [s for s in _line_circle(a, b, origin, bottom.radius) if s > 1]
        if not hits:
            errors.append(f"alignment line of {v} misses the unit circle")
            continue
        s = hits[0]
        x = (a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]))
        ang = mpmath.atan2(x[1], x[0]) * 180 / mpmath.pi
        if ang < 0:
            ang += 360
        if not 210 < ang < 330:
            errors.append(f"alignment line of {v} leaves the bottom arc ({mpmath.nstr(ang, 8)} deg)")
    return errors


# ---------------------------------------------------------------------------
# Drivers
# ---------------------------------------------------------------------------


@dataclass
class ArcResult:
    drawing: ArcDrawing
    order: CanonicalOrder
    realizer: SchnyderRealizer
    steps: list[StepInfo]
    horizon_errors: list[tuple[int, str]] = field(default_factory=list)

    @property
    def tn_parent(self) -> dict[int, int]:
        return dict(self.realizer.parent["n"])

    @property
    def expected_primitives(self) -> int:
        """The drawer's own count: n-2 arcs plus one segment per leaf of tree n."""
        return self.drawing.n - 2 + len(self.realizer.leaves("n"))


def fewest_leaf_order(emb: PlanarEmbedding, outer: Sequence[int] | None = None) -> CanonicalOrder:
    """Order whose tree ``n`` is the fewest-leaf tree of the minimal realizer."""
    m = minimize_realizer(emb, realizer(emb, outer))
    counts = dict(zip(("1", "2", "n"), leaf_counts(m)))
    label = min(("1", "2", "n"), key=lambda lab: (counts[lab], lab != "n"))
    rr = rotate_to(m, label, "n")
    return order_from_tree(emb, rr, "T1", "ccw")


def draw_triangulation_arcs(
    emb: PlanarEmbedding,
    order: CanonicalOrder | Sequence[int] | None = None,
    bits: int = DEFAULT_BITS,
    check: bool = False,
    best_outer: bool = False,
) -> ArcResult:
    if not is_triangulation(emb):
        raise NotTriangulation("arc drawer needs a triangulation")
    if order is None:
        outer = best_outer_face(emb) if best_outer else (emb.outer or default_outer(emb))
        order = fewest_leaf_order(emb, outer)
    elif not isinstance(order, CanonicalOrder):
        seq = tuple(order)
        order = CanonicalOrder(seq, (seq[0], seq[1], seq[-1]))
    errs = check_canonical_order(emb, list(order.order))
    if errs:
        raise NotTriangulation(f"invalid canonical order: {errs[0]}")
    r = schnyder_from_order(emb, order)
    with mpmath.workprec(bits):
        v1, v2, vn = order.order[0], order.order[1], order.order[-1]
        state, d = init_canvas(v1, v2, vn)
        contours = order.contours(emb)
        horizon_errors = []
        for idx in range(len(order) - 1, 2, -1):
            h = order.order[idx]
            before = contours[idx - 2]
            if state.horizon != contours[idx - 1]:
                raise GeometryBreakdown("horizon out of step with the canonical order", idx + 1)
            pos = sorted(before.index(w) for w in emb.adjacency[h] if w in before)
            children = before[pos[0] + 1: pos[-1]]
            process_vertex(state, h, children, idx + 1)
            if check:
                horizon_errors += [(idx + 1, e) for e in check_horizon(state)]
        d.meta.update({
            "precision": bits,
            "order": list(order.order),
            "tn_parent": dict(r.parent["n"]),
        })
    return ArcResult(d, order, r, state.steps, horizon_errors)


@dataclass
class PlanarArcResult:
    drawing: ArcDrawing
    triangulated: ArcResult
    chords: list[tuple[int, int]]
    reduction: Reduction


def draw_planar_arcs(
    emb: PlanarEmbedding, bits: int = DEFAULT_BITS, check: bool = False,
    best_outer: bool = False,
) -> PlanarArcResult:
    """Triangulate by face fans, draw, then drop the added chords."""
    if emb.n < 3 or not emb.is_connected():
        raise NotConnected("planar arc drawer needs a connected graph with n >= 3")
    tri, chords = triangulate(emb, "fan_single_vertex")
    res = draw_triangulation_arcs(tri, bits=bits, check=check, best_outer=best_outer)
    gone = {frozenset((c.u, c.v)) for c in chords}
    kept = {e: p for e, p in res.drawing.edges.items() if frozenset(e) not in gone}
    meta = dict(res.drawing.meta)
    meta["chords"] = len(chords)
    d = ArcDrawing(dict(res.drawing.points), kept, "planar-arcs", meta)
    return PlanarArcResult(d, res, [(c.u, c.v) for c in chords], reduction_R(emb.faces))


# ---------------------------------------------------------------------------
# Bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Reduction:
    R: int
    n: int
    e: int

    @property
    def claimed_lower(self) -> int:
        return max(0, 5 * self.n - 3 * self.e)

    @property
    def euler_lower(self) -> int:
        """What the face count identity actually gives: sum(|f| - 5) = 5n - 3e - 10."""
        return max(0, 5 * self.n - 3 * self.e - 10)

    @property
    def holds(self) -> bool:
        return self.R >= self.claimed_lower


def reduction_R(fs: FaceSet) -> Reduction:
    """Savings from fanning large faces; n and e follow from Euler's formula."""
    e2 = sum(fs.sizes)
    e = e2 // 2
    n = e - len(fs) + 2
    return Reduction(sum(max(0, s - 5) for s in fs.sizes), n, e)


def triangulation_arc_bound(n: int) -> float:
    return (5 * n - 11) / 3


def planar_arc_bound(n: int, e: int) -> float:
    return 14 * n / 3 - e - 29 / 3


def dof_bound(n: int) -> float:
    return (23 * n - 50) / 3

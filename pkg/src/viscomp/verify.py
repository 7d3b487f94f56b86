"""Independent recomputation of complexity, planarity and bounds.

Nothing here trusts the drawers: every number is derived from the raw
coordinates and edge lists.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Sequence

import mpmath
import numpy as np

from .drawing import Arc, ArcDrawing, GridDrawing, Segment
from .errors import OverlappingEdges


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: str | None = None
    distance: Any = None

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# Grid drawings
# ---------------------------------------------------------------------------


def _ray_table(d: GridDrawing) -> tuple[list[tuple[int, int]], np.ndarray]:
    """One row (vertex, dx, dy, edge index) per edge end, directions reduced."""
    edges = list(d.edges)
    rows = []
    for idx, (u, v) in enumerate(edges):
        (x1, y1), (x2, y2) = d.points[u], d.points[v]
        rows.append((u, x2 - x1, y2 - y1, idx))
        rows.append((v, x1 - x2, y1 - y2, idx))
    T = np.array(rows, dtype=object if _huge(d) else np.int64).reshape(-1, 4)
    if len(T):
        if (T[:, 1] == 0).__and__(T[:, 2] == 0).any():
            k = int(np.flatnonzero((T[:, 1] == 0) & (T[:, 2] == 0))[0])
            u, v = edges[T[k, 3]]
            raise OverlappingEdges(f"edge {u}-{v} has zero length")
        if T.dtype == object:
            g = np.array([math.gcd(int(a), int(b)) for a, b in T[:, 1:3]], dtype=object)
        else:
            g = np.gcd(T[:, 1], T[:, 2])
        T[:, 1] //= g
        T[:, 2] //= g
    return edges, T


def _huge(d: GridDrawing) -> bool:
    return any(abs(x) >= 2**60 or abs(y) >= 2**60 for x, y in d.points.values())


def segment_pairs(d: GridDrawing) -> list[tuple[int, tuple[int, int], tuple[int, int]]]:
    """Edges joined straight through a vertex: (vertex, edge, edge)."""
    edges, T = _ray_table(d)
    rays: dict[tuple[int, int, int], int] = {}
    for a, dx, dy, idx in T.tolist():
        key = (a, dx, dy)
        if key in rays:
            e1, e2 = edges[idx], edges[rays[key]]
            raise OverlappingEdges(
                f"edges {e1[0]}-{e1[1]} and {e2[0]}-{e2[1]} leave {a} along one ray"
            )
        rays[key] = idx
    pairs = []
    for (a, dx, dy), idx in rays.items():
        other = rays.get((a, -dx, -dy))
        if other is not None and (dx, dy) > (-dx, -dy):
            pairs.append((a, edges[idx], edges[other]))
    return pairs


def count_segments(d: GridDrawing) -> int:
    """Minimum number of segments covering the edges.

    With no two edges on a common ray at any vertex, consecutive collinear
    edges through a vertex are forced to share a segment, and nothing else
    can, so the count is the edge count minus the straight-through pairs.
    """
    return len(d.edges) - len(segment_pairs(d))


def _orient(ax, ay, bx, by, cx, cy):
    return np.sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


def _as_arrays(d: GridDrawing):
    verts = sorted(d.points)
    big = max((max(abs(x), abs(y)) for x, y in d.points.values()), default=0)
    # int64 products stay exact below 2^31 per coordinate
    dtype = np.int64 if big < 2**30 else object
    idx = {v: i for i, v in enumerate(verts)}
    P = np.array([d.points[v] for v in verts], dtype=dtype).reshape(-1, 2)
    E = np.array([(idx[u], idx[v]) for u, v in d.edges], dtype=np.int64).reshape(-1, 2)
    return verts, P, E


def check_planarity_exact(d: GridDrawing) -> Verdict:
    """All-pairs exact test; touching at a shared endpoint is the only contact allowed."""
    verts, P, E = _as_arrays(d)
    seen: dict[tuple, int] = {}
    for v in verts:
        p = tuple(d.points[v])
        if p in seen:
            return Verdict(False, f"vertices {seen[p]} and {v} coincide at {p}")
        seen[p] = v
    try:
        segment_pairs(d)
    except OverlappingEdges as exc:
        return Verdict(False, str(exc))
    m = len(E)
    if m == 0:
        return Verdict(True)
    A, B = P[E[:, 0]], P[E[:, 1]]
    ax, ay, bx, by = A[:, 0], A[:, 1], B[:, 0], B[:, 1]
    xlo, xhi = np.minimum(ax, bx), np.maximum(ax, bx)
    ylo, yhi = np.minimum(ay, by), np.maximum(ay, by)
    # vertices on non-incident edges
    px, py = P[:, 0], P[:, 1]
    for i in range(m):
        o = _orient(ax[i], ay[i], bx[i], by[i], px, py)
        on = (o == 0) & (px >= xlo[i]) & (px <= xhi[i]) & (py >= ylo[i]) & (py <= yhi[i])
        on[E[i, 0]] = on[E[i, 1]] = False
        if on.any():
            w = verts[int(np.flatnonzero(on)[0])]
            u, v = verts[E[i, 0]], verts[E[i, 1]]
            return Verdict(False, f"vertex {w} lies on edge {u}-{v}")
    for i in range(m - 1):
        j = slice(i + 1, m)
        o1 = _orient(ax[i], ay[i], bx[i], by[i], ax[j], ay[j])
        o2 = _orient(ax[i], ay[i], bx[i], by[i], bx[j], by[j])
        o3 = _orient(ax[j], ay[j], bx[j], by[j], ax[i], ay[i])
        o4 = _orient(ax[j], ay[j], bx[j], by[j], bx[i], by[i])
        boxes = (
            (xlo[j] <= xhi[i]) & (xlo[i] <= xhi[j]) & (ylo[j] <= yhi[i]) & (ylo[i] <= yhi[j])
        )
        hit = (o1 * o2 <= 0) & (o3 * o4 <= 0) & boxes
        shared = (
            (E[j, 0] == E[i, 0]) | (E[j, 0] == E[i, 1])
            | (E[j, 1] == E[i, 0]) | (E[j, 1] == E[i, 1])
        )
        # adjacent edges only meet at their common endpoint once overlaps
        # at vertices have been excluded above
        hit &= ~shared
        if hit.any():
            k = i + 1 + int(np.flatnonzero(hit)[0])
            e1 = (verts[E[i, 0]], verts[E[i, 1]])
            e2 = (verts[E[k, 0]], verts[E[k, 1]])
            return Verdict(False, f"edges {e1[0]}-{e1[1]} and {e2[0]}-{e2[1]} intersect")
    return Verdict(True)


# ---------------------------------------------------------------------------
# Lower bounds
# ---------------------------------------------------------------------------


def lower_bounds(n: int, edges: Sequence[tuple[int, int]]) -> tuple[int, int, int]:
    """(odd-degree count / 2, max ceil(deg/2), ceil(e/(n-1)))."""
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    odd = sum(1 for x in deg if x % 2)
    b2 = max(((x + 1) // 2 for x in deg), default=0)
    b3 = -(-len(edges) // (n - 1)) if n > 1 else 0
    return odd // 2, b2, b3


def angular_resolution(points: dict[int, tuple[Any, Any]], edges) -> float:
    """Smallest angle between consecutive straight edges at a vertex (radians)."""
    dirs: dict[int, list[float]] = defaultdict(list)
    for u, v in edges:
        (x1, y1), (x2, y2) = points[u], points[v]
        dirs[u].append(math.atan2(float(y2 - y1), float(x2 - x1)))
        dirs[v].append(math.atan2(float(y1 - y2), float(x1 - x2)))
    best = math.pi * 2
    for angles in dirs.values():
        if len(angles) < 2:
            continue
        angles.sort()
        gaps = [b - a for a, b in zip(angles, angles[1:])]
        gaps.append(angles[0] + 2 * math.pi - angles[-1])
        best = min(best, min(gaps))
    return best


# ---------------------------------------------------------------------------
# Arc drawings
# ---------------------------------------------------------------------------

DEFAULT_EPS = 1e-9


def _bits(d: ArcDrawing, bits: int | None) -> int:
    return bits or int(d.meta.get("precision", 256))


def _mp(p) -> tuple:
    return mpmath.mpf(p[0]), mpmath.mpf(p[1])


def _end_tangent(d: ArcDrawing, key: tuple[int, int], at: int) -> tuple:
    """Unit direction in which edge ``key`` leaves vertex ``at``."""
    prim = d.edges[key]
    u, v = key
    other = v if at == u else u
    px, py = _mp(d.points[at])
    if isinstance(prim, Segment):
        qx, qy = _mp(d.points[other])
        dx, dy = qx - px, qy - py
    else:
        cx, cy = _mp(prim.center)
        rx, ry = px - cx, py - cy
        dx, dy = (-ry, rx) if prim.ccw else (ry, -rx)
        if at != prim.u:
            # travelling backwards from the arc's end
            dx, dy = -dx, -dy
    n = mpmath.sqrt(dx * dx + dy * dy)
    return dx / n, dy / n


def _same_circle(a: Arc, b: Arc, eps: float) -> bool:
    r = max(abs(mpmath.mpf(a.radius)), abs(mpmath.mpf(b.radius)))
    dc = mpmath.hypot(mpmath.mpf(a.center[0]) - mpmath.mpf(b.center[0]),
                      mpmath.mpf(a.center[1]) - mpmath.mpf(b.center[1]))
    return dc <= eps * r and abs(mpmath.mpf(a.radius) - mpmath.mpf(b.radius)) <= eps * r


def primitive_groups(d: ArcDrawing, eps: float = DEFAULT_EPS,
                     bits: int | None = None) -> list[tuple[str, list[tuple[int, int]]]]:
    """Maximal chains of edges drawn by one segment or one circular arc.

    Two edges at a common vertex chain up when both are segments leaving in
    opposite directions, or both lie on one circle and leave in opposite
    tangent directions. A closed circle is a single group.
    """
    keys = sorted(d.edges)
    parent = {k: k for k in keys}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    with mpmath.workprec(_bits(d, bits)):
        ends: dict[int, list[tuple[tuple[int, int], tuple]]] = defaultdict(list)
        for k in keys:
            for at in k:
                ends[at].append((k, _end_tangent(d, k, at)))
        for at, items in ends.items():
            for i in range(len(items)):
                k1, t1 = items[i]
                p1 = d.edges[k1]
                for k2, t2 in items[i + 1:]:
                    p2 = d.edges[k2]
                    if type(p1) is not type(p2):
                        continue
                    if mpmath.hypot(t1[0] + t2[0], t1[1] + t2[1]) > eps:
                        continue
                    if isinstance(p1, Arc) and not _same_circle(p1, p2, eps):
                        continue
                    parent[find(k1)] = find(k2)
    groups: dict = defaultdict(list)
    for k in keys:
        groups[find(k)].append(k)
    out = []
    for root, members in groups.items():
        kind = "seg" if isinstance(d.edges[root], Segment) else "arc"
        out.append((kind, sorted(members)))
    out.sort(key=lambda g: g[1][0])
    return out


def count_arcs(d: ArcDrawing, eps: float = DEFAULT_EPS, bits: int | None = None) -> int:
    """Total number of geometric primitives (arcs and segments) after merging."""
    return len(primitive_groups(d, eps, bits))


def dof(d: ArcDrawing, eps: float = DEFAULT_EPS, bits: int | None = None) -> int:
    return sum(5 if kind == "arc" else 4 for kind, _ in primitive_groups(d, eps, bits))


def _arc_span(prim: Arc, pu, pv):
    """Start angle and signed sweep from the arc's ``u`` end to its ``v`` end."""
    cx, cy = _mp(prim.center)
    a0 = mpmath.atan2(pu[1] - cy, pu[0] - cx)
    a1 = mpmath.atan2(pv[1] - cy, pv[0] - cx)
    s = a1 - a0
    if prim.ccw:
        while s <= 0:
            s += 2 * mpmath.pi
    else:
        while s >= 0:
            s -= 2 * mpmath.pi
    return a0, s


def _on_arc(prim: Arc, a0, span, x) -> bool:
    cx, cy = _mp(prim.center)
    t = mpmath.atan2(x[1] - cy, x[0] - cx) - a0
    if span > 0:
        while t < 0:
            t += 2 * mpmath.pi
        return t <= span
    while t > 0:
        t -= 2 * mpmath.pi
    return t >= span


@dataclass
class _Prim:
    key: tuple[int, int]
    kind: str
    a: tuple
    b: tuple
    center: tuple | None = None
    radius: Any = None
    a0: Any = None
    span: Any = None
    box: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)


def _prepare(d: ArcDrawing, key) -> _Prim:
    u, v = key
    prim = d.edges[key]
    pu, pv = _mp(d.points[u]), _mp(d.points[v])
    if isinstance(prim, Segment):
        xs, ys = [float(pu[0]), float(pv[0])], [float(pu[1]), float(pv[1])]
        return _Prim(key, "seg", pu, pv, box=(min(xs), min(ys), max(xs), max(ys)))
    # orient the sweep from the arc's own start so ccw is honoured
    if prim.u == v:
        pu, pv = pv, pu
    a0, span = _arc_span(prim, pu, pv)
    c, r = _mp(prim.center), mpmath.mpf(prim.radius)
    xs, ys = [float(pu[0]), float(pv[0])], [float(pu[1]), float(pv[1])]
    for q in range(4):
        ang = q * mpmath.pi / 2
        if _on_arc(prim, a0, span, (c[0] + r * mpmath.cos(ang), c[1] + r * mpmath.sin(ang))):
            xs.append(float(c[0] + r * mpmath.cos(ang)))
            ys.append(float(c[1] + r * mpmath.sin(ang)))
    return _Prim(key, "arc", pu, pv, c, r, a0, span, (min(xs), min(ys), max(xs), max(ys)))


def _point_on(p: _Prim, x) -> bool:
    if p.kind == "seg":
        dx, dy = p.b[0] - p.a[0], p.b[1] - p.a[1]
        s = ((x[0] - p.a[0]) * dx + (x[1] - p.a[1]) * dy) / (dx * dx + dy * dy)
        return 0 <= s <= 1
    return _on_arc(Arc(0, 0, p.center, p.radius, p.span > 0), p.a0, p.span, x)


def _line_circle_pts(a, b, c, r) -> list:
    dx, dy = b[0] - a[0], b[1] - a[1]
    fx, fy = a[0] - c[0], a[1] - c[1]
    qa = dx * dx + dy * dy
    qb = 2 * (fx * dx + fy * dy)
    qc = fx * fx + fy * fy - r * r
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        return []
    s = mpmath.sqrt(disc)
    return [(a[0] + t * dx, a[1] + t * dy) for t in ((-qb - s) / (2 * qa), (-qb + s) / (2 * qa))]


def _circle_circle_pts(c1, r1, c2, r2) -> list | None:
    """Intersection points; None when the circles coincide."""
    dx, dy = c2[0] - c1[0], c2[1] - c1[1]
    dd = mpmath.sqrt(dx * dx + dy * dy)
    if dd == 0:
        return None if r1 == r2 else []
    a = (r1 * r1 - r2 * r2 + dd * dd) / (2 * dd)
    h2 = r1 * r1 - a * a
    if h2 < 0:
        return []
    h = mpmath.sqrt(h2)
    mx, my = c1[0] + a * dx / dd, c1[1] + a * dy / dd
    return [(mx - h * dy / dd, my + h * dx / dd), (mx + h * dy / dd, my - h * dx / dd)]


def _intersections(p: _Prim, q: _Prim, scale) -> list:
    if p.kind == "seg" and q.kind == "seg":
        rx, ry = p.b[0] - p.a[0], p.b[1] - p.a[1]
        sx, sy = q.b[0] - q.a[0], q.b[1] - q.a[1]
        den = rx * sy - ry * sx
        wx, wy = q.a[0] - p.a[0], q.a[1] - p.a[1]
        if abs(den) <= scale * (rx * rx + ry * ry + sx * sx + sy * sy):
            if abs(wx * ry - wy * rx) > scale * (rx * rx + ry * ry + wx * wx + wy * wy):
                return []
            return _collinear_overlap(p, q)
        t = (wx * sy - wy * sx) / den
        u = (wx * ry - wy * rx) / den
        if 0 <= t <= 1 and 0 <= u <= 1:
            return [(p.a[0] + t * rx, p.a[1] + t * ry)]
        return []
    if p.kind == "arc" and q.kind == "seg":
        p, q = q, p
    if p.kind == "seg":
        return [x for x in _line_circle_pts(p.a, p.b, q.center, q.radius)
                if _point_on(p, x) and _point_on(q, x)]
    pts = _circle_circle_pts(p.center, p.radius, q.center, q.radius)
    if pts is None:
        return _cocircular_overlap(p, q)
    return [x for x in pts if _point_on(p, x) and _point_on(q, x)]


def _collinear_overlap(p: _Prim, q: _Prim) -> list:
    """Common stretch of two collinear segments, as its midpoint and ends."""
    dx, dy = p.b[0] - p.a[0], p.b[1] - p.a[1]
    L = dx * dx + dy * dy

    def s(x):
        return ((x[0] - p.a[0]) * dx + (x[1] - p.a[1]) * dy) / L

    lo = max(mpmath.mpf(0), min(s(q.a), s(q.b)))
    hi = min(mpmath.mpf(1), max(s(q.a), s(q.b)))
    if lo > hi:
        return []
    return [(p.a[0] + t * dx, p.a[1] + t * dy) for t in {lo, (lo + hi) / 2, hi}]


def _cocircular_overlap(p: _Prim, q: _Prim) -> list:
    """Common stretch of two arcs on one circle: sampled at endpoints and midpoints."""
    cand = [x for x in (q.a, q.b) if _point_on(p, x)] + [x for x in (p.a, p.b) if _point_on(q, x)]
    for t in (mpmath.mpf(1) / 3, mpmath.mpf(2) / 3):
        for a, b in ((p, q), (q, p)):
            ang = a.a0 + t * a.span
            x = (a.center[0] + a.radius * mpmath.cos(ang), a.center[1] + a.radius * mpmath.sin(ang))
            if _point_on(b, x):
                cand.append(x)
    return cand


def check_planarity_tol(d: ArcDrawing, eps: float = DEFAULT_EPS,
                        bits: int | None = None) -> Verdict:
    """Pairwise primitive intersection test with a tolerance at shared endpoints.

    Contacts within ``eps`` of a common endpoint are ignored; any other
    contact is a violation, reported with its distance to the nearest
    shared endpoint (or None for disjoint endpoints).
    """
    with mpmath.workprec(_bits(d, bits)):
        scale = mpmath.mpf(2) ** (-mpmath.mp.prec + 32)
        seen: dict[tuple, int] = {}
        for v in sorted(d.points):
            p = _mp(d.points[v])
            if p in seen:
                return Verdict(False, f"vertices {seen[p]} and {v} coincide", 0)
            seen[p] = v
        prims = [_prepare(d, k) for k in sorted(d.edges)]
        pad = float(eps)
        for i, p in enumerate(prims):
            for q in prims[i + 1:]:
                if (p.box[0] > q.box[2] + pad or q.box[0] > p.box[2] + pad
                        or p.box[1] > q.box[3] + pad or q.box[1] > p.box[3] + pad):
                    continue
                shared = set(p.key) & set(q.key)
                anchors = [_mp(d.points[w]) for w in shared]
                for x in _intersections(p, q, scale):
                    dist = min(
                        (mpmath.hypot(x[0] - a[0], x[1] - a[1]) for a in anchors),
                        default=None,
                    )
                    if dist is not None and dist < eps:
                        continue
                    return Verdict(
                        False,
                        f"edges {p.key[0]}-{p.key[1]} and {q.key[0]}-{q.key[1]} meet at "
                        f"({mpmath.nstr(x[0], 12)}, {mpmath.nstr(x[1], 12)})",
                        None if dist is None else float(dist),
                    )
    return Verdict(True)


def check_tn_collinearity(d: ArcDrawing, tn_parent: dict[int, int],
                          eps: float = DEFAULT_EPS, bits: int | None = None) -> Verdict:
    """At each inner vertex of the tree, exactly one child segment runs straight on."""
    children: dict[int, list[int]] = defaultdict(list)
    for c, p in tn_parent.items():
        children[p].append(c)
    with mpmath.workprec(_bits(d, bits)):
        for v, kids in sorted(children.items()):
            if v not in tn_parent:
                continue  # the root has no outgoing segment
            pv, pp = _mp(d.points[v]), _mp(d.points[tn_parent[v]])
            ox, oy = pp[0] - pv[0], pp[1] - pv[1]
            on = mpmath.hypot(ox, oy)
            straight = 0
            for c in kids:
                pc = _mp(d.points[c])
                ix, iy = pv[0] - pc[0], pv[1] - pc[1]
                n = mpmath.hypot(ix, iy)
                if mpmath.hypot(ix / n - ox / on, iy / n - oy / on) <= eps:
                    straight += 1
            if straight != 1:
                return Verdict(False, f"vertex {v} continues {straight} child segments")
    return Verdict(True)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass
class DrawingReport:
    kind: str
    n: int
    e: int
    segments: int
    arcs: int
    planar: bool
    violation: str | None
    width: Any
    height: Any
    b1: int
    b2: int
    b3: int
    dof: int
    angular_resolution: float
    tolerance: float | None = None
    precision: int | None = None
    invariants: dict[str, bool] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def primitives(self) -> int:
        return self.segments + self.arcs

    def items(self) -> list[tuple[str, Any]]:
        out: list[tuple[str, Any]] = [
            ("kind", self.kind), ("n", self.n), ("e", self.e),
            ("segments", self.segments), ("arcs", self.arcs),
            ("primitives", self.primitives), ("planar", self.planar),
            ("violation", self.violation or ""), ("width", self.width),
            ("height", self.height), ("b1", self.b1), ("b2", self.b2),
            ("b3", self.b3), ("dof", self.dof),
            ("angular_resolution", f"{self.angular_resolution:.6g}"),
        ]
        if self.tolerance is not None:
            out.append(("tolerance", self.tolerance))
        if self.precision is not None:
            out.append(("precision", self.precision))
        out += [(f"invariant.{k}", v) for k, v in self.invariants.items()]
        out += [(f"extra.{k}", v) for k, v in self.extra.items()]
        return out

    def to_kv(self) -> str:
        lines = ["--- report ---"]
        lines += [f"{k}={_fmt(v)}" for k, v in self.items()]
        lines.append("--- end ---")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        kind = "grid" if self.kind == "grid" else "arc"
        lines = [f"{kind} drawing: n={self.n} e={self.e}"]
        if self.kind == "grid":
            lines.append(f"  segments: {self.segments}")
            lines.append(f"  extents: {self.width} x {self.height}")
        else:
            lines.append(f"  primitives: {self.primitives} ({self.arcs} arcs, {self.segments} segments)")
            lines.append(f"  degrees of freedom: {self.dof}")
        lines.append(f"  planar: {'yes' if self.planar else 'no'}"
                     + (f" ({self.violation})" if self.violation else ""))
        lines.append(f"  lower bounds: odd/2={self.b1} maxdeg/2={self.b2} e/(n-1)={self.b3}")
        lines.append(f"  angular resolution: {self.angular_resolution:.4g} rad")
        for k, v in self.invariants.items():
            lines.append(f"  invariant {k}: {'PASS' if v else 'FAIL'}")
        for k, v in self.extra.items():
            lines.append(f"  {k}: {_fmt(v)}")
        return "\n".join(lines) + "\n"


def _fmt(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def parse_kv(text: str) -> dict[str, str]:
    """Read back the key=value block written by :meth:`DrawingReport.to_kv`."""
    out: dict[str, str] = {}
    inside = False
    for line in text.splitlines():
        line = line.strip()
        if line == "--- report ---":
            inside = True
            continue
        if line == "--- end ---":
            break
        if inside and "=" in line:
            k, v = line.split("=", 1)
            out[k] = v
    return out


def report_grid(d: GridDrawing, invariant_reports: Sequence | None = None) -> DrawingReport:
    try:
        segs = count_segments(d)
    except OverlappingEdges:
        segs = -1
    verdict = check_planarity_exact(d)
    w, h = d.extents()
    b1, b2, b3 = _lower_bounds_sparse(d.points, d.edges)
    inv: dict[str, bool] = {}
    for rep in invariant_reports or []:
        for name, msgs in rep.results.items():
            inv[name] = inv.get(name, True) and not msgs
    return DrawingReport(
        "grid", d.n, len(d.edges), segs, 0, verdict.ok, verdict.witness, w, h,
        b1, b2, b3, 4 * max(segs, 0), angular_resolution(d.points, d.edges),
        invariants=inv,
    )


def report_arc(d: ArcDrawing, eps: float = DEFAULT_EPS, bits: int | None = None) -> DrawingReport:
    groups = primitive_groups(d, eps, bits)
    arcs = sum(1 for k, _ in groups if k == "arc")
    segs = len(groups) - arcs
    verdict = check_planarity_tol(d, eps, bits)
    xs = [float(p[0]) for p in d.points.values()]
    ys = [float(p[1]) for p in d.points.values()]
    b1, b2, b3 = _lower_bounds_sparse(d.points, list(d.edges))
    return DrawingReport(
        "arc", d.n, len(d.edges), segs, arcs, verdict.ok, verdict.witness,
        f"{max(xs) - min(xs):.6g}", f"{max(ys) - min(ys):.6g}", b1, b2, b3,
        5 * arcs + 4 * segs, _arc_angular_resolution(d, bits), tolerance=eps,
        precision=_bits(d, bits),
    )


def _lower_bounds_sparse(points, edges) -> tuple[int, int, int]:
    idx = {v: i for i, v in enumerate(sorted(points))}
    return lower_bounds(len(idx), [(idx[u], idx[v]) for u, v in edges])


def _arc_angular_resolution(d: ArcDrawing, bits: int | None) -> float:
    """Smallest angle between consecutive edge tangents at a vertex."""
    best = math.pi * 2
    with mpmath.workprec(_bits(d, bits)):
        per: dict[int, list] = defaultdict(list)
        for k in d.edges:
            for at in k:
                t = _end_tangent(d, k, at)
                per[at].append(mpmath.atan2(t[1], t[0]))
        for angles in per.values():
            if len(angles) < 2:
                continue
            angles.sort()
            gaps = [b - a for a, b in zip(angles, angles[1:])]
            gaps.append(angles[0] + 2 * mpmath.pi - angles[-1])
            best = min(best, float(min(gaps)))
    return best

"""Grid drawings of planar 3-trees and maximal outerplanar graphs.

The drawer inserts vertices along a canonical order read off tree 2 of the
unique realizer. Tree 1 (the tree with fewest leaves) is drawn with one
segment per leaf: each new vertex hangs off its 1-parent with an integer
slope, and the contour to its right is pushed one column along the
outgoing 1-edges. The outer edges ``vn v1`` and ``vn v2`` behave as a
1-edge and a 2-edge of ``vn``.

Everything is exact integer arithmetic. ``check_invariants`` re-derives the
six contour invariants from the state; the drawer runs it after each step
when asked to.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .drawing import GridDrawing
from .errors import InvariantViolation, Not3Tree, ParseError
from .graph import PlanarEmbedding, is_planar3tree
from .realizer import (
    LABELS,
    SchnyderRealizer,
    best_outer_face,
    leaf_counts,
    order_from_tree,
    outerplanar_augment,
    planar3tree_realizer,
    rotate_to,
)
from .verify import count_segments


@dataclass
class StepRecord:
    k: int
    vertex: int
    case: str
    place: tuple[int, int]
    shifts: list[tuple[int, int, int]] = field(default_factory=list)


@dataclass
class StepTrace:
    order: list[int]
    steps: list[StepRecord] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = ["order " + " ".join(map(str, self.order))]
        for s in self.steps:
            out.append(f"step {s.k} case {s.case} place {s.place[0]} {s.place[1]}")
            for v, dx, dy in s.shifts:
                out.append(f"shift {s.k} {v} {dx} {dy}")
        return out

    def dump(self) -> str:
        return "\n".join(self.lines()) + "\n"

    @classmethod
    def parse(cls, text: str) -> StepTrace:
        trace: StepTrace | None = None
        for raw in text.splitlines():
            parts = raw.split()
            if not parts or parts[0].startswith("#"):
                continue
            if parts[0] == "order":
                trace = cls([int(x) for x in parts[1:]])
            elif parts[0] == "step" and trace is not None:
                k = int(parts[1])
                trace.steps.append(
                    StepRecord(k, trace.order[k - 1], parts[3], (int(parts[5]), int(parts[6])))
                )
            elif parts[0] == "shift" and trace is not None:
                trace.steps[-1].shifts.append((int(parts[2]), int(parts[3]), int(parts[4])))
            else:
                raise ParseError(f"bad trace line: {raw!r}")
        if trace is None:
            raise ParseError("trace has no order line")
        return trace


def replay(trace: StepTrace) -> dict[int, tuple[int, int]]:
    """Rebuild final coordinates from a trace alone."""
    v1, v2, v3 = trace.order[:3]
    pts = {v1: (0, 0), v2: (2, 0), v3: (1, 1)}
    for s in trace.steps:
        pts[s.vertex] = s.place
        for v, dx, dy in s.shifts:
            x, y = pts[v]
            pts[v] = (x + dx, y + dy)
    return pts


@dataclass
class ContourState:
    emb: PlanarEmbedding
    order: list[int]
    p1: dict[int, int]
    p2: dict[int, int]
    pn: dict[int, int]
    k: int
    pos: dict[int, list[int]]
    contour: list[int]
    outl1: dict[int, int]
    inl: dict[int, int]
    eta: int
    # inner triangles of G_k, keyed by directed edge (face on the left)
    face_of: dict[tuple[int, int], int] = field(default_factory=dict)
    faces: list[tuple[int, int, int]] = field(default_factory=list)
    # rank-indexed mirrors of the geometry for the vectorised crossing test
    rank: dict[int, int] = field(default_factory=dict)
    P: np.ndarray | None = None
    E: np.ndarray | None = None  # rank pairs sorted by the later endpoint
    E_hi: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.rank = {v: i for i, v in enumerate(self.order)}
        self.P = np.zeros((len(self.order), 2), dtype=np.int64)
        for v, p in self.pos.items():
            self.P[self.rank[v]] = p
        pairs = sorted(
            (tuple(sorted((self.rank[u], self.rank[v]))) for u, v in self.emb.edges),
            key=lambda e: (e[1], e[0]),
        )
        self.E = np.array(pairs, dtype=np.int64).reshape(-1, 2)
        self.E_hi = self.E[:, 1].copy()

    def move(self, v: int, x: int, y: int) -> None:
        self.pos[v] = [x, y]
        self.P[self.rank[v]] = (x, y)

    @property
    def v1(self) -> int:
        return self.order[0]

    @property
    def v2(self) -> int:
        return self.order[1]

    @property
    def drawn(self) -> list[int]:
        return self.order[: self.k]

    def lam(self) -> int:
        """Leaves of the drawn part of tree 1."""
        drawn = set(self.drawn)
        has_child = {self.p1[v] for v in drawn if v in self.p1}
        return sum(1 for v in drawn if v in self.p1 and v not in has_child)

    def one_edges(self) -> list[tuple[int, int]]:
        return [(v, self.p1[v]) for v in self.drawn if v in self.p1]

    def edges(self) -> list[tuple[int, int]]:
        drawn = set(self.drawn)
        return [(u, v) for u, v in self.emb.edges if u in drawn and v in drawn]

    def slope(self, a: int, b: int) -> Fraction | None:
        (xa, ya), (xb, yb) = self.pos[a], self.pos[b]
        if xa == xb:
            return None
        return Fraction(yb - ya, xb - xa)

    def _add_face(self, a: int, b: int, c: int) -> None:
        fid = len(self.faces)
        self.faces.append((a, b, c))
        for e in ((a, b), (b, c), (c, a)):
            self.face_of[e] = fid

    def drawing(self) -> GridDrawing:
        pts = {v: (p[0], p[1]) for v, p in self.pos.items()}
        return GridDrawing(pts, self.edges(), "3tree")


def _extended_parents(r: SchnyderRealizer, order: Sequence[int]) -> tuple[dict, dict, dict]:
    v1, v2, vn = r.outer
    p1 = dict(r.parent["1"])
    p2 = dict(r.parent["2"])
    pn = dict(r.parent["n"])
    p1[vn] = v1
    p2[vn] = v2
    return p1, p2, pn


def start_state(emb: PlanarEmbedding, r: SchnyderRealizer, order: Sequence[int]) -> ContourState:
    order = list(order)
    p1, p2, pn = _extended_parents(r, order)
    v1, v2, v3 = order[:3]
    if p1.get(v3) != v1 or p2.get(v3) != v2:
        raise InvariantViolation("third vertex must hang off v1 and v2")
    st = ContourState(
        emb, order, p1, p2, pn, 3,
        {v1: [0, 0], v2: [2, 0], v3: [1, 1]},
        [v1, v3, v2], {v3: 1}, {v1: 1}, 1,
    )
    st._add_face(v1, v2, v3)
    return st


def insertion_step(st: ContourState) -> StepRecord:
    """Place v_{k+1} above its 2-parent; returns a record without shifts."""
    vk = st.order[st.k]
    vl, vr = st.p1[vk], st.p2[vk]
    i, j = st.contour.index(vl), st.contour.index(vr)
    nbrs = st.contour[i : j + 1]
    if any(not st.emb.has_edge(vk, w) for w in nbrs):
        raise InvariantViolation(f"vertex {vk}: contour between parents not adjacent")
    if vl not in st.inl:
        case, slope = "i", st.outl1[vl]
    elif j == i + 1:
        case, slope = "ii", st.inl[vl] + 1
    else:
        case, slope = "iii", st.eta + 1
    xl, yl = st.pos[vl]
    xr = st.pos[vr][0]
    place = (xr, yl + slope * (xr - xl))
    st.move(vk, *place)
    st.outl1[vk] = slope
    st.inl[vl] = max(st.inl.get(vl, slope), slope)
    st.eta = max(st.eta, slope)
    for a, b in zip(nbrs, nbrs[1:]):
        st._add_face(a, b, vk)
    return StepRecord(st.k + 1, vk, case, place)


def shifting_step(st: ContourState, rec: StepRecord) -> None:
    vk = rec.vertex
    vr = st.p2[vk]
    j = st.contour.index(vr)
    for v in st.contour[j:]:
        dy = 0 if v == st.v2 else st.outl1[v]
        x, y = st.pos[v]
        st.move(v, x + 1, y + dy)
        rec.shifts.append((v, 1, dy))
    i = st.contour.index(st.p1[vk])
    st.contour[i + 1 : j] = [vk]
    st.k += 1


# ---------------------------------------------------------------------------
# Invariant checks
# ---------------------------------------------------------------------------


def _lca(p1: dict[int, int], a: int, b: int) -> int:
    seen = set()
    x = a
    while True:
        seen.add(x)
        if x not in p1:
            break
        x = p1[x]
    x = b
    while x not in seen:
        x = p1[x]
    return x


def _path(p1: dict[int, int], a: int, stop: int) -> list[tuple[int, int]]:
    out = []
    while a != stop:
        out.append((a, p1[a]))
        a = p1[a]
    return out


def domain_edges(st: ContourState, vi: int, vj: int, stop: int) -> set[frozenset[int]] | None:
    """Edges of the closed region under contour edge (vi, vj) cut off by tree-1 paths.

    Returns None if the walk escapes to the outer face.
    """
    boundary = {frozenset((vi, vj))}
    boundary |= {frozenset(e) for e in _path(st.p1, vi, stop)}
    boundary |= {frozenset(e) for e in _path(st.p1, vj, stop)}
    start = st.face_of.get((vj, vi))
    if start is None:
        return None
    seen = {start}
    stack = [start]
    edges: set[frozenset[int]] = set()
    while stack:
        f = stack.pop()
        a, b, c = st.faces[f]
        for x, y in ((a, b), (b, c), (c, a)):
            e = frozenset((x, y))
            edges.add(e)
            if e in boundary:
                continue
            g = st.face_of.get((y, x))
            if g is None:
                return None
            if g not in seen:
                seen.add(g)
                stack.append(g)
    return edges


@dataclass
class InvariantReport:
    k: int
    results: dict[str, list[str]]

    @property
    def ok(self) -> bool:
        return not any(self.results.values())

    def failures(self) -> list[str]:
        return [f"{name}: {msg}" for name, msgs in self.results.items() for msg in msgs]


def _orient(p, q, r):
    return np.sign((q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1])
                   - (q[..., 1] - p[..., 1]) * (r[..., 0] - p[..., 0]))


def _cross_rows(P: np.ndarray, E: np.ndarray, rows: np.ndarray) -> tuple[int, int] | None:
    """First (row edge, edge) pair meeting anywhere but at a shared endpoint.

    Adjacent edges count only if they overlap along a common stretch.
    """
    if len(rows) == 0 or len(E) == 0:
        return None
    A, B = P[E[:, 0]], P[E[:, 1]]
    lo, hi = np.minimum(A, B), np.maximum(A, B)
    near = np.all((lo[rows][:, None, :] <= hi[None, :, :])
                  & (lo[None, :, :] <= hi[rows][:, None, :]), axis=-1)
    near[np.arange(len(rows)), rows] = False
    ri, ci = np.nonzero(near)
    if len(ri) == 0:
        return None
    re = rows[ri]
    a, b, c, d = A[re], B[re], A[ci], B[ci]
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    hit = (o1 * o2 <= 0) & (o3 * o4 <= 0)
    er, ec = E[re], E[ci]
    shared = ((er[:, 0] == ec[:, 0]) | (er[:, 0] == ec[:, 1])
              | (er[:, 1] == ec[:, 0]) | (er[:, 1] == ec[:, 1]))
    stretch = np.any(np.minimum(hi[re], hi[ci]) - np.maximum(lo[re], lo[ci]) > 0, axis=-1)
    bad = (hit & ~shared) | (shared & (o1 == 0) & (o2 == 0) & stretch)
    k = np.flatnonzero(bad)
    if len(k):
        return int(re[k[0]]), int(ci[k[0]])
    return None


def _on_edges(P: np.ndarray, E: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> tuple[int, int] | None:
    """First (edge, vertex) with the vertex on the closed edge but not an endpoint."""
    if len(rows) == 0 or len(cols) == 0:
        return None
    a, b = P[E[rows, 0]][:, None, :], P[E[rows, 1]][:, None, :]
    q = P[cols][None, :, :]
    on = (_orient(a, b, q) == 0) & np.all(
        (np.minimum(a, b) <= q) & (q <= np.maximum(a, b)), axis=-1)
    on &= (E[rows, 0][:, None] != cols[None, :]) & (E[rows, 1][:, None] != cols[None, :])
    idx = np.argwhere(on)
    if len(idx):
        return int(rows[idx[0][0]]), int(cols[idx[0][1]])
    return None


def check_planarity_rows(st: ContourState, changed: set[int] | None = None) -> str | None:
    """Exact crossing test of the edges at ``changed`` vertices against everything."""
    k = st.k
    P = st.P[:k]
    m = int(np.searchsorted(st.E_hi, k))
    E = st.E[:m]
    if len(np.unique(P, axis=0)) != k:
        return "two vertices coincide"
    all_rows = np.arange(m)
    all_cols = np.arange(k)
    if changed is None:
        rows, cols = all_rows, all_cols
    else:
        cols = np.array(sorted(st.rank[v] for v in changed), dtype=np.int64)
        rows = np.flatnonzero(np.isin(E[:, 0], cols) | np.isin(E[:, 1], cols))
    name = st.order.__getitem__
    hit = _cross_rows(P, E, rows)
    if hit is not None:
        (a, b), (c, d) = E[hit[0]], E[hit[1]]
        return f"edges {name(a)}-{name(b)} and {name(c)}-{name(d)} intersect"
    for r, c in ((rows, all_cols), (all_rows, cols)):
        on = _on_edges(P, E, r, c)
        if on is not None:
            a, b = E[on[0]]
            return f"vertex {name(on[1])} lies on edge {name(a)}-{name(b)}"
    return None


def _steeper(st: ContourState, a: int, b: int, c: int) -> bool:
    """slope(a, b) > c, with vertical counting as infinitely steep."""
    (xa, ya), (xb, yb) = st.pos[a], st.pos[b]
    dx, dy = xb - xa, yb - ya
    if dx == 0:
        return True
    return dy > c * dx if dx > 0 else dy < c * dx


def _below(st: ContourState, a: int, b: int, c: int) -> bool:
    """slope(a, b) < c for a non-vertical edge."""
    (xa, ya), (xb, yb) = st.pos[a], st.pos[b]
    dx, dy = xb - xa, yb - ya
    return dy < c * dx if dx > 0 else dy > c * dx


def check_invariants(st: ContourState, changed: set[int] | None = None) -> InvariantReport:
    """Evaluate I1-I6 on the current state.

    ``changed`` restricts the crossing test to edges at those vertices; the
    rest of the checks always run in full.
    """
    res: dict[str, list[str]] = {f"I{i}": [] for i in range(1, 7)}
    k = st.k
    vk = st.order[k - 1]
    c = st.contour
    xs = [st.pos[v][0] for v in c]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        res["I1"].append("contour is not strictly x-monotone")
    right = c[c.index(vk):]
    rx = [st.pos[v][0] for v in right]
    if any(b - a != 1 for a, b in zip(rx, rx[1:])):
        res["I1"].append("x-steps along the right contour are not all 1")

    lam = st.lam()
    ones = st.one_edges()
    sub = GridDrawing({v: tuple(p) for v, p in st.pos.items()}, ones)
    try:
        s = count_segments(sub)
    except Exception as exc:  # overlapping 1-edges
        s = -1
        res["I2"].append(str(exc))
    if s != lam:
        res["I2"].append(f"tree 1 uses {s} segments but has {lam} leaves")
    eta = 0
    for a, b in ones:
        (xa, ya), (xb, yb) = st.pos[a], st.pos[b]
        dx, dy = xa - xb, ya - yb
        if dx <= 0 or dy % dx:
            res["I2"].append(f"1-edge {a}-{b} has non-integer or reversed slope")
            continue
        sl = dy // dx
        eta = max(eta, sl)
        if sl < 1 or sl != st.outl1[a]:
            res["I2"].append(f"1-edge {a}-{b} slope {sl} (recorded {st.outl1[a]})")
    if eta != st.eta or eta > lam:
        res["I2"].append(f"max slope {eta} (recorded {st.eta}) exceeds leaves {lam}")

    for vi, vj in zip(right, right[1:]):
        if vj == st.v2:
            continue  # v2 has no 1-parent
        top = _lca(st.p1, vi, vj)
        if top != st.p1[vj]:
            res["I3"].append(f"lca({vi},{vj}) = {top}, not the 1-parent of {vj}")
            continue
        if top == vi:
            continue  # degenerate domain: the edge itself
        dom = domain_edges(st, vi, vj, top)
        if dom is None:
            res["I3"].append(f"domain of ({vi},{vj}) is not closed")
            continue
        own = frozenset((vj, st.p1[vj]))
        for e in dom:
            if e == own:
                continue
            a, b = tuple(e)
            child = a if st.p1.get(a) == b else b if st.p1.get(b) == a else None
            if child is None:
                continue
            if st.outl1[child] <= st.outl1[vj]:
                res["I3"].append(f"1-edge {a}-{b} in domain of ({vi},{vj}) is not steeper")

    for v in right:
        if v == st.v2:
            continue
        w = st.p2[v]
        vertical = st.pos[v][0] == st.pos[w][0]
        if vertical or not _below(st, v, w, st.outl1[v]):
            s2 = st.slope(v, w)
            res["I4"].append(f"vertex {v}: 1-out-slope {st.outl1[v]} vs 2-out-slope {s2}")

    msg = check_planarity_rows(st, changed)
    if msg:
        res["I5"].append(msg)
    drawn = set(st.drawn)
    nedges = st.pn.items() if changed is None else [
        (v, p) for v, p in st.pn.items() if v in changed or p in changed
    ]
    for v, p in nedges:
        if v in drawn and p in drawn:
            if not _steeper(st, v, p, st.outl1[p]):
                res["I5"].append(f"n-edge {v}-{p} slope {st.slope(v, p)} not above {st.outl1[p]}")

    if tuple(st.pos[st.v1]) != (0, 0):
        res["I6"].append("v1 moved")
    if tuple(st.pos[st.v2]) != (k - 1, 0):
        res["I6"].append(f"v2 at {st.pos[st.v2]}, expected ({k - 1}, 0)")
    ymax = (k - 1) * lam
    for v in drawn:
        x, y = st.pos[v]
        if not (0 <= x <= k - 1 and 0 <= y <= ymax):
            res["I6"].append(f"vertex {v} at {(x, y)} outside the bounding rectangle")
            break
    return InvariantReport(k, res)


# ---------------------------------------------------------------------------
# Drivers
# ---------------------------------------------------------------------------


@dataclass
class GridResult:
    drawing: GridDrawing
    trace: StepTrace
    realizer: SchnyderRealizer
    reports: list[InvariantReport]
    lam: int


def fewest_leaf_rotation(r: SchnyderRealizer) -> SchnyderRealizer:
    counts = leaf_counts(r)
    best = LABELS[counts.index(min(counts))]  # ties keep tree order 1, 2, n
    return rotate_to(r, best, "1")


def draw_with_realizer(emb: PlanarEmbedding, r: SchnyderRealizer,
                       check: bool = True, full_check: bool = False) -> GridResult:
    """Run the insertion/shift loop for a fixed realizer of a planar 3-tree."""
    order = list(order_from_tree(emb, r, "T2", "cw").order)
    st = start_state(emb, r, order)
    trace = StepTrace(order)
    reports = []
    if check:
        reports.append(check_invariants(st))
        if not reports[-1].ok:
            raise InvariantViolation("; ".join(reports[-1].failures()))
    while st.k < emb.n:
        rec = insertion_step(st)
        shifting_step(st, rec)
        trace.steps.append(rec)
        if check:
            changed = None if full_check else {rec.vertex} | {v for v, _, _ in rec.shifts}
            rep = check_invariants(st, changed)
            reports.append(rep)
            if not rep.ok:
                raise InvariantViolation(f"step {st.k}: " + "; ".join(rep.failures()))
    d = st.drawing()
    d.meta.update({"lambda": st.lam(), "outer": r.outer})
    return GridResult(d, trace, r, reports, st.lam())


def draw_planar3tree(emb: PlanarEmbedding, outer: Sequence[int] | None = None,
                     check: bool = True, full_check: bool = False,
                     outer_policy: str = "given") -> GridResult:
    """Draw a planar 3-tree.

    ``outer_policy`` picks the outer face when ``outer`` is None: ``given``
    uses the embedding's recorded face, ``best`` searches every face for
    the fewest leaves, and ``auto`` stops at the first face whose
    fewest-leaf tree is small enough for the (8n-17)/3 segment count.
    """
    if emb.n == 3:
        if emb.m != 3:
            raise Not3Tree("graph on 3 vertices must be a triangle")
        a, b, c = outer if outer is not None else (0, 1, 2)
        d = GridDrawing({a: (0, 0), b: (2, 0), c: (1, 1)}, list(emb.edges), "3tree",
                        {"lambda": 1})
        return GridResult(d, StepTrace([a, b, c]), None, [], 1)  # type: ignore[arg-type]
    if not is_planar3tree(emb):
        raise Not3Tree("graph is not a planar 3-tree")
    if outer is None and outer_policy != "given":
        target = None if outer_policy == "best" else (2 * emb.n - 8) // 3
        outer = best_outer_face(emb, minimal=False, target=target)
    r = fewest_leaf_rotation(planar3tree_realizer(emb, outer))
    return draw_with_realizer(emb, r, check, full_check)


def draw_outerplanar(emb: PlanarEmbedding, check: bool = True) -> GridResult:
    """Draw via the apex augmentation and delete the apex afterwards.

    The apex tree is never tree 1: if tree 2 of the augmentation has fewer
    leaves, the embedding is mirrored so the two original-edge trees swap.
    """
    if emb.n == 3:
        d = GridDrawing({0: (0, 0), 1: (2, 0), 2: (1, 1)}, list(emb.edges), "outerplanar")
        return GridResult(d, StepTrace([0, 1, 2]), None, [], 1)  # type: ignore[arg-type]
    aug = outerplanar_augment(emb)
    l1, l2, _ = leaf_counts(aug.realizer)
    src = emb
    if l2 < l1:
        src = emb.mirrored()
        aug = outerplanar_augment(src, (aug.base[1], aug.base[0]))
    res = draw_with_realizer(aug.embedding, aug.realizer, check)
    apex = aug.apex
    pts = {v: p for v, p in res.drawing.points.items() if v != apex}
    edges = [e for e in res.drawing.edges if apex not in e]
    d = GridDrawing(pts, edges, "outerplanar", {
        "lambda": res.lam, "apex_position": res.drawing.points[apex],
        "augmented_n": aug.embedding.n,
    })
    return GridResult(d, res.trace, res.realizer, res.reports, res.lam)


def segment_bound_3tree(n: int) -> Fraction:
    return Fraction(8 * n - 17, 3)

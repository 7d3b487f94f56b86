"""Reference computations that share no code with the package.

They are slow and only meant for small inputs.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import networkx as nx
import sympy


def min_segment_cover(points, edges) -> int:
    """Fewest straight pieces whose union is the edge set, by exhaustive set cover.

    A piece is any set of collinear edges whose union is one unbroken
    segment. Cover size is found by DP over edge bitmasks.
    """
    m = len(edges)
    groups = []
    for size in range(1, m + 1):
        for combo in itertools.combinations(range(m), size):
            if _is_piece(points, [edges[i] for i in combo]):
                groups.append(sum(1 << i for i in combo))
    full = (1 << m) - 1
    best = [math.inf] * (1 << m)
    best[0] = 0
    for mask in range(1 << m):
        if best[mask] == math.inf:
            continue
        # always extend by a piece holding the lowest uncovered edge
        free = ~mask & full
        if not free:
            continue
        low = free & -free
        for g in groups:
            if g & low:
                nxt = mask | g
                if best[mask] + 1 < best[nxt]:
                    best[nxt] = best[mask] + 1
    return int(best[full])


def _is_piece(points, es) -> bool:
    (ax, ay), (bx, by) = points[es[0][0]], points[es[0][1]]
    dx, dy = bx - ax, by - ay
    spans = []
    for u, v in es:
        for w in (u, v):
            px, py = points[w]
            if dx * (py - ay) - dy * (px - ax) != 0:
                return False
        tu = Fraction(dx * (points[u][0] - ax) + dy * (points[u][1] - ay))
        tv = Fraction(dx * (points[v][0] - ax) + dy * (points[v][1] - ay))
        spans.append((min(tu, tv), max(tu, tv)))
    spans.sort()
    for (_, hi), (lo, _) in zip(spans, spans[1:]):
        if lo != hi:
            return False
    return True


def sympy_crossing(points, edges) -> tuple | None:
    """First pair of edges meeting anywhere except a shared endpoint, via sympy."""
    segs = {
        e: sympy.Segment(sympy.Point(*points[e[0]]), sympy.Point(*points[e[1]]))
        for e in edges
    }
    for e, f in itertools.combinations(edges, 2):
        shared = set(e) & set(f)
        hits = segs[e].intersection(segs[f])
        for h in hits:
            if isinstance(h, sympy.Segment):
                return e, f
            if shared and h == sympy.Point(*points[next(iter(shared))]):
                continue
            return e, f
    for e in edges:
        for w, p in points.items():
            if w in e:
                continue
            if segs[e].contains(sympy.Point(*p)):
                return e, (w,)
    return None


def is_plane_graph(emb) -> bool:
    g = nx.Graph()
    g.add_nodes_from(range(emb.n))
    g.add_edges_from(emb.edges)
    return nx.check_planarity(g)[0]


def sample_arc(cx, cy, r, a0, span, k=64):
    return [(cx + r * math.cos(a0 + span * i / k), cy + r * math.sin(a0 + span * i / k))
            for i in range(k + 1)]


def random_lattice_drawing(rng, max_edges=12):
    """A plane straight-line drawing on a small lattice, built edge by edge.

    Lattice points make collinear edge runs common, which is where segment
    counting can go wrong.
    """
    side = rng.randint(3, 5)
    cells = [(x, y) for x in range(side) for y in range(side)]
    k = rng.randint(2, min(9, len(cells)))
    points = dict(enumerate(rng.sample(cells, k)))
    pairs = list(itertools.combinations(range(k), 2))
    rng.shuffle(pairs)
    target = rng.randint(1, max_edges)
    edges = []
    for e in pairs:
        if len(edges) == target:
            break
        if _through_point(points, e):
            continue
        if not any(_lattice_meet(points, e, f) for f in edges):
            edges.append(e)
    return points, edges


def _through_point(points, e) -> bool:
    (ax, ay), (bx, by) = points[e[0]], points[e[1]]
    for w, (x, y) in points.items():
        if w in e:
            continue
        if (bx - ax) * (y - ay) == (by - ay) * (x - ax) and \
                min(ax, bx) <= x <= max(ax, bx) and min(ay, by) <= y <= max(ay, by):
            return True
    return False


def _lattice_meet(points, e, f) -> bool:
    """Integer-point edges touching anywhere except at one shared endpoint."""
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 0) - (v < 0)

    def on(a, b, c):
        return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    a, b = points[e[0]], points[e[1]]
    c, d = points[f[0]], points[f[1]]
    shared = set(e) & set(f)
    o1, o2, o3, o4 = orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b)
    if shared:
        # adjacent edges only conflict when they fold back onto each other
        s = shared.pop()
        p = points[s]
        x = b if e[0] == s else a
        y = d if f[0] == s else c
        return o1 == o2 == 0 and (x[0] - p[0]) * (y[0] - p[0]) + (x[1] - p[1]) * (y[1] - p[1]) > 0
    if o1 != o2 and o3 != o4:
        return True
    return any(o == 0 and on(*seg, q) for o, seg, q in
               ((o1, (a, b), c), (o2, (a, b), d), (o3, (c, d), a), (o4, (c, d), b)))

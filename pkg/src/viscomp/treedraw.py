"""Tree drawings with few segments via heavy path boxes.

Coordinates use y pointing up. A heavy path is drawn on a vertical line
running down from its top node. Every heavy path subtree lives in an
L-shaped box whose reflex corner is the top node; in the unmirrored state
the box spans ``[-l, r] x [-b, t]`` around the top node with the quadrant
``x < 0, y > 0`` cut away, so the edge from the parent arrives from the
upper left.

Light subtrees hanging off a path vertex ``v`` are paired. The first box of
a pair sits in a rectangle to the lower left of ``v``, the second in the
point reflection of that rectangle through ``v``, so both light edges lie on
one line through ``v``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .drawing import GridDrawing
from .errors import NotATree
from .graph import PlanarEmbedding, is_tree


@dataclass(frozen=True)
class HeavyPathDecomposition:
    root: int
    parent: dict[int, int | None]
    heavy: dict[int, int | None]
    children: dict[int, list[int]]
    paths: list[list[int]]
    path_of: dict[int, int]
    depth: list[int]  # per path index

    @property
    def max_depth(self) -> int:
        return max(self.depth) if self.depth else 0

    def top(self, i: int) -> int:
        return self.paths[i][0]


@dataclass(frozen=True)
class LBox:
    l: int
    r: int
    t: int
    b: int

    @property
    def w(self) -> int:
        return self.l + self.r

    @property
    def h(self) -> int:
        return self.t + self.b


UNIT = LBox(1, 1, 1, 1)


def _adjacency(tree) -> tuple[int, list[list[int]]]:
    if isinstance(tree, PlanarEmbedding):
        if not is_tree(tree):
            raise NotATree("input is not a tree")
        return tree.n, [sorted(a) for a in tree.adjacency]
    n, edges = tree
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    if len(edges) != n - 1:
        raise NotATree(f"{len(edges)} edges on {n} vertices")
    return n, [sorted(a) for a in adj]


def heavy_path_decompose(tree, root: int = 0) -> HeavyPathDecomposition:
    """``tree`` is a PlanarEmbedding or a pair ``(n, edges)``."""
    n, adj = _adjacency(tree)
    if not 0 <= root < n:
        raise NotATree(f"root {root} out of range")
    parent: dict[int, int | None] = {root: None}
    order = [root]
    for u in order:
        for w in adj[u]:
            if w != parent[u]:
                if w in parent:
                    raise NotATree("cycle detected")
                parent[w] = u
                order.append(w)
    if len(order) != n:
        raise NotATree("tree is not connected")
    children = {u: [w for w in adj[u] if w != parent[u]] for u in range(n)}
    size = [1] * n
    for u in reversed(order):
        p = parent[u]
        if p is not None:
            size[p] += size[u]
    heavy: dict[int, int | None] = {}
    for u in range(n):
        best = None
        for w in children[u]:  # ascending ids, so ties keep the lowest
            if best is None or size[w] > size[best]:
                best = w
        heavy[u] = best
    paths: list[list[int]] = []
    path_of: dict[int, int] = {}
    for u in order:
        if parent[u] is not None and heavy[parent[u]] == u:
            continue
        path = [u]
        while heavy[path[-1]] is not None:
            path.append(heavy[path[-1]])  # type: ignore[arg-type]
        for x in path:
            path_of[x] = len(paths)
        paths.append(path)
    depth = [0] * len(paths)
    for i in reversed(range(len(paths))):
        path = paths[i]
        if len(path) == 1:
            depth[i] = 0
            continue
        d = 0
        for x in path:
            for w in children[x]:
                if w != heavy[x]:
                    d = max(d, depth[path_of[w]])
        depth[i] = d + 1
    return HeavyPathDecomposition(root, parent, heavy, children, paths, path_of, depth)


def merge_boxes(boxes: list[LBox]) -> list[LBox]:
    """Componentwise maxima of consecutive pairs, padding an odd tail."""
    boxes = list(boxes)
    if len(boxes) % 2:
        boxes.append(boxes[-1])
    return [
        LBox(max(a.l, c.l), max(a.r, c.r), max(a.t, c.t), max(a.b, c.b))
        for a, c in zip(boxes[0::2], boxes[1::2])
    ]


@dataclass
class _Layout:
    """Subtree drawing relative to its top node, unmirrored."""

    box: LBox
    coords: list[tuple[int, int, int]]  # (vertex, dx, dy)


def _place(layout: _Layout, cx: int, cy: int, sx: int, sy: int, out: list) -> None:
    for v, dx, dy in layout.coords:
        out.append((v, cx + sx * dx, cy + sy * dy))


def _attach(subs: list[tuple[int, _Layout]]) -> tuple[list, int, int, int, int, list]:
    """Place the light boxes of one path vertex sitting at the origin.

    Returns the placed coordinates, the lower-left rectangle's width and
    height, the upper-right rectangle's width and height (both measured
    from the real boxes) and the light edge directions for bookkeeping.
    """
    # pair so that b of the second box never exceeds b of the first
    subs = sorted(subs, key=lambda s: (-s[1].box.b, s[0]))
    merged = merge_boxes([s[1].box for s in subs])
    total_w = sum(m.w for m in merged)
    coords: list = []
    ll_w = ll_h = ur_w = ur_h = 0
    x_left = -total_w
    drop = 0
    corners = []
    for j, m in enumerate(merged):
        # merged copy mirrored horizontally: r* to the left, l* to the right
        drop += m.t
        cx, cy = x_left + m.r, -drop
        x_left += m.w
        corners.append((cx, cy))
        first = subs[2 * j][1]
        _place(first, cx, cy, -1, 1, coords)
        ll_w = max(ll_w, -(cx - first.box.r))
        ll_h = max(ll_h, drop + first.box.b)
        if 2 * j + 1 < len(subs):
            second = subs[2 * j + 1][1]
            # point reflection of the lower-left copy, i.e. mirrored vertically
            _place(second, -cx, -cy, 1, -1, coords)
            ur_w = max(ur_w, -cx + second.box.r)
            ur_h = max(ur_h, drop + second.box.b)
    return coords, ll_w, ll_h, ur_w, ur_h, corners


def layout_heavy_path(
    path: list[int], attached: dict[int, list[tuple[int, _Layout]]],
    outdeg_last: int,
) -> _Layout:
    """Lay out one heavy path with its already drawn light subtrees.

    ``attached[v]`` lists (top node, layout) pairs hanging off ``v``.
    ``outdeg_last`` is the out-degree of the second to last vertex.
    """
    if len(path) == 1:
        return _Layout(UNIT, [(path[0], 0, 0)])
    attached = {v: list(attached.get(v, [])) for v in path}
    vertical = list(path)
    if outdeg_last % 2 == 0:
        # the leaf becomes a depth-0 box so the light edges pair up evenly
        last = vertical.pop()
        attached[vertical[-1]].append((last, _Layout(UNIT, [(last, 0, 0)])))
    parts = []
    for v in vertical:
        if attached[v]:
            parts.append(_attach(attached[v]))
        else:
            parts.append(([], 0, 0, 0, 0, []))
    coords: list = []
    y = 0
    left = right = 1
    top = 1
    bottom = 1
    for h, v in enumerate(vertical):
        if h > 0:
            prev_ll = parts[h - 1][2]
            y += max(prev_ll, parts[h][4], 1)
        coords.append((v, 0, -y))
        sub, ll_w, ll_h, ur_w, ur_h, _ = parts[h]
        for u, dx, dy in sub:
            coords.append((u, dx, dy - y))
        left = max(left, ll_w)
        right = max(right, ur_w)
        if h == 0:
            top = max(top, ur_h)
        bottom = max(bottom, y + ll_h)
    bottom = max(bottom, y + 1, top)
    return _Layout(LBox(left, right, top, bottom), coords)


def draw_tree(tree, root: int = 0) -> GridDrawing:
    dec = heavy_path_decompose(tree, root)
    n = len(dec.parent)
    edges = sorted(
        (min(u, p), max(u, p)) for u, p in dec.parent.items() if p is not None
    )
    if n == 1:
        return GridDrawing({root: (0, 0)}, [], "tree", {"depth": 0})
    layouts: dict[int, _Layout] = {}
    # deeper paths first so every attached box already exists
    for i in sorted(range(len(dec.paths)), key=lambda i: dec.depth[i]):
        path = dec.paths[i]
        attached = {
            v: [(w, layouts[w]) for w in dec.children[v] if w != dec.heavy[v]]
            for v in path
        }
        outdeg = len(dec.children[path[-2]]) if len(path) > 1 else 0
        layouts[path[0]] = layout_heavy_path(path, attached, outdeg)
        for v in path:
            for w in dec.children[v]:
                if w != dec.heavy[v]:
                    del layouts[w]
    final = layouts[root]
    points = {v: (x, y) for v, x, y in final.coords}
    d = GridDrawing(points, edges, "tree", {
        "depth": dec.max_depth, "box": (final.box.l, final.box.r, final.box.t, final.box.b),
    })
    return d.normalized()


def width_bound(n: int) -> int:
    return 2 * 2 ** math.ceil(math.log2(n)) * n if n > 1 else 2


def height_bound(n: int) -> float:
    return 2 * 1.5 ** math.ceil(math.log2(n)) * n if n > 1 else 2


def segment_bound(n: int) -> int:
    return math.ceil(3 * (n - 1) / 4)

"""Canonical orders and Schnyder realizers of triangulations.

Geometric conventions: the outer triangle ``(v1, v2, vn)`` is listed
counterclockwise, so in a drawing ``v1`` sits bottom-left, ``v2``
bottom-right and ``vn`` on top. Contours run from ``v1`` to ``v2``.
Interior edges carry one of the labels ``"1"``, ``"2"``, ``"n"`` and are
oriented from child to parent.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Literal, Sequence

import networkx as nx

from .errors import NotMaximalOuterplanar, NotTriangulation, Not3Tree
from .graph import (
    PlanarEmbedding,
    build_embedding,
    default_outer,
    is_maximal_outerplanar,
    is_planar3tree,
    is_triangulation,
    outer_face_id,
    outerplanar_outer_order,
)

Label = Literal["1", "2", "n"]
LABELS: tuple[Label, Label, Label] = ("1", "2", "n")
# cyclic successor of a label in counterclockwise order around a vertex
_NEXT = {"1": "2", "2": "n", "n": "1"}


@dataclass(frozen=True)
class CanonicalOrder:
    order: tuple[int, ...]
    outer: tuple[int, int, int]

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    @property
    def rank(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def contours(self, emb: PlanarEmbedding) -> list[list[int]]:
        """``C_k`` for k = 2..n (index k-2), each from v1 to v2."""
        v1, v2 = self.order[0], self.order[1]
        contour = [v1, v2]
        out = [list(contour)]
        for v in self.order[2:]:
            pos = {w: i for i, w in enumerate(contour)}
            idx = sorted(pos[w] for w in emb.adjacency[v] if w in pos)
            p, q = idx[0], idx[-1]
            contour = contour[: p + 1] + [v] + contour[q:]
            out.append(list(contour))
        return out


@dataclass(frozen=True)
class SchnyderRealizer:
    """Three parent maps over the interior vertices.

    ``parent[label][v]`` is the parent of interior vertex ``v`` in the tree
    with that label; roots are ``v1`` (tree 1), ``v2`` (tree 2) and ``vn``.
    """

    n: int
    outer: tuple[int, int, int]
    parent: dict[str, dict[int, int]]
    delta0: int = 0
    minimized: bool = False

    @property
    def roots(self) -> dict[str, int]:
        return {"1": self.outer[0], "2": self.outer[1], "n": self.outer[2]}

    @property
    def interior(self) -> list[int]:
        o = set(self.outer)
        return [v for v in range(self.n) if v not in o]

    def children(self, label: str) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in range(self.n)}
        for v, p in self.parent[label].items():
            out[p].append(v)
        return out

    def leaves(self, label: str) -> list[int]:
        has_child = set(self.parent[label].values())
        return [v for v in self.interior if v not in has_child]

    def label_of(self, u: int, v: int) -> tuple[str, int] | None:
        """(label, child) of interior edge ``uv``; None for outer edges."""
        for lab in LABELS:
            if self.parent[lab].get(u) == v:
                return lab, u
            if self.parent[lab].get(v) == u:
                return lab, v
        return None

    def tree_edges(self, label: str) -> list[tuple[int, int]]:
        """(child, parent) pairs."""
        return sorted(self.parent[label].items())

    def out_neighbors(self) -> dict[int, set[int]]:
        out = {v: set() for v in range(self.n)}
        for lab in LABELS:
            for c, p in self.parent[lab].items():
                out[c].add(p)
        return out

    def relabeled(self) -> SchnyderRealizer:
        """Cyclic relabelling 1->n, 2->1, n->2 (outer (v2, vn, v1))."""
        o = self.outer
        return SchnyderRealizer(
            self.n,
            (o[1], o[2], o[0]),
            {"1": dict(self.parent["2"]), "2": dict(self.parent["n"]),
             "n": dict(self.parent["1"])},
            self.delta0,
            self.minimized,
        )

    def dump(self) -> str:
        lines = []
        for lab in LABELS:
            for c, p in sorted(self.parent[lab].items()):
                u, v = min(c, p), max(c, p)
                lines.append(f"edge {u} {v} tree={lab} parent={p}")
        lines.sort(key=lambda s: tuple(int(x) for x in s.split()[1:3]))
        l1, l2, ln = leaf_counts(self)
        lines.append(f"leaves {l1} {l2} {ln} delta0 {self.delta0}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Canonical orders
# ---------------------------------------------------------------------------


def _check_outer(emb: PlanarEmbedding, outer: Sequence[int] | None) -> tuple[int, int, int]:
    outer = tuple(outer) if outer is not None else default_outer(emb)
    if len(outer) != 3:
        raise NotTriangulation(f"outer face {outer} is not a triangle")
    outer_face_id(emb, outer)
    return outer  # type: ignore[return-value]


def canonical_order(
    emb: PlanarEmbedding, outer: Sequence[int] | None = None
) -> CanonicalOrder:
    """Reverse construction: peel chord-free contour vertices, lowest id first."""
    if not is_triangulation(emb):
        raise NotTriangulation("canonical order needs a triangulation")
    v1, v2, vn = _check_outer(emb, outer)
    n = emb.n
    alive = [True] * n
    on_contour = [False] * n
    contour_deg = [0] * n  # number of contour neighbours, alive or not
    contour = [v1, vn, v2]
    for v in contour:
        on_contour[v] = True
        for w in emb.adjacency[v]:
            contour_deg[w] += 1
    heap = [vn]
    removed: list[int] = []
    while len(removed) < n - 2:
        while True:
            w = heapq.heappop(heap)
            if alive[w] and on_contour[w] and w not in (v1, v2) and contour_deg[w] == 2:
                break
        i = contour.index(w)
        left, right = contour[i - 1], contour[i + 1]
        path = []
        x = emb.next_ccw(w, left)
        while x != right:
            if alive[x]:
                path.append(x)
            x = emb.next_ccw(w, x)
        alive[w] = False
        on_contour[w] = False
        for y in emb.adjacency[w]:
            contour_deg[y] -= 1
        for x in path:
            on_contour[x] = True
            for y in emb.adjacency[x]:
                contour_deg[y] += 1
        contour[i : i + 1] = path
        removed.append(w)
        for x in [left, right] + path:
            heapq.heappush(heap, x)
        for x in path:
            for y in emb.adjacency[x]:
                if on_contour[y]:
                    heapq.heappush(heap, y)
    order = (v1, v2) + tuple(reversed(removed))
    return CanonicalOrder(order, (v1, v2, vn))


def check_canonical_order(emb: PlanarEmbedding, order: Sequence[int]) -> list[str]:
    """Brute-force the three prefix conditions; returns failure messages."""
    order = list(order)
    n = emb.n
    errors: list[str] = []
    if sorted(order) != list(range(n)):
        return ["order is not a permutation of the vertices"]
    v1, v2 = order[0], order[1]
    if not emb.has_edge(v1, v2):
        return [f"v1={v1} and v2={v2} are not adjacent"]
    prefix: set[int] = {v1, v2}
    prev_contour = [v1, v2]
    g = nx.Graph()
    g.add_edge(v1, v2)
    for k in range(2, n):
        vk = order[k]
        nbrs = [w for w in emb.adjacency[vk] if w in prefix]
        pos = {w: i for i, w in enumerate(prev_contour)}
        if any(w not in pos for w in nbrs):
            errors.append(f"k={k + 1}: neighbour of v_k below the contour")
        else:
            idx = sorted(pos[w] for w in nbrs)
            if len(idx) < 2 or idx[-1] - idx[0] + 1 != len(idx):
                errors.append(f"k={k + 1}: neighbours do not form a contour subpath")
        prefix.add(vk)
        g.add_node(vk)
        g.add_edges_from((vk, w) for w in nbrs)
        if not nx.is_biconnected(g):
            errors.append(f"k={k + 1}: G_k is not biconnected")
        # outer face of G_k: the face left of (v2, v1) in the induced embedding
        face = [v2]
        a, b = v2, v1
        steps = 0
        while b != v2 and steps <= len(prefix) + 1:
            face.append(b)
            rot = emb.adjacency[b]
            j = emb.position[b][a]
            c = rot[j - 1]
            while c not in prefix:
                j -= 1
                c = rot[j - 1]
            a, b = b, c
            steps += 1
        if b != v2 or len(set(face)) != len(face):
            errors.append(f"k={k + 1}: outer face of G_k is not a simple cycle")
            prev_contour = face[1:]
            continue
        contour = face[1:] + [v2]  # v1 ... v2
        if vk not in contour:
            errors.append(f"k={k + 1}: v_k not on the contour")
        prev_contour = contour
    return errors


# ---------------------------------------------------------------------------
# Realizers
# ---------------------------------------------------------------------------


def schnyder_from_order(emb: PlanarEmbedding, order: CanonicalOrder) -> SchnyderRealizer:
    seq = order.order
    n = emb.n
    v1, v2, vn = seq[0], seq[1], seq[-1]
    parent: dict[str, dict[int, int]] = {"1": {}, "2": {}, "n": {}}
    contour = [v1, v2]
    for vk in seq[2:]:
        pos = {w: i for i, w in enumerate(contour)}
        idx = sorted(pos[w] for w in emb.adjacency[vk] if w in pos)
        p, q = idx[0], idx[-1]
        if vk != vn:
            parent["1"][vk] = contour[p]
            parent["2"][vk] = contour[q]
        for w in contour[p + 1 : q]:
            parent["n"][w] = vk
        contour = contour[: p + 1] + [vk] + contour[q:]
    return SchnyderRealizer(n, (v1, v2, vn), parent)


def check_realizer(emb: PlanarEmbedding, r: SchnyderRealizer) -> list[str]:
    """Exhaustive rotation scan of the local pattern plus tree sanity."""
    errors: list[str] = []
    outer = set(r.outer)
    pattern = [("out", "1"), ("in", "n"), ("out", "2"), ("in", "1"), ("out", "n"), ("in", "2")]
    for v in r.interior:
        if any(v not in r.parent[lab] for lab in LABELS):
            errors.append(f"vertex {v} lacks a parent")
            continue
        rot = list(emb.adjacency[v])
        start = rot.index(r.parent["1"][v])
        seq = []
        for w in rot[start:] + rot[:start]:
            tags = [("out", lab) for lab in LABELS if r.parent[lab].get(v) == w]
            tags += [("in", lab) for lab in LABELS if r.parent[lab].get(w) == v]
            if len(tags) != 1:
                errors.append(f"edge {v}-{w} carries {len(tags)} labels")
                break
            seq.append(tags[0])
        else:
            # compress runs and compare with the pattern (incoming runs may be empty)
            k = 0
            ok = True
            for tag in seq:
                while k < len(pattern) and pattern[k] != tag:
                    if pattern[k][0] == "out":
                        ok = False
                        break
                    k += 1
                if not ok or k == len(pattern):
                    ok = False
                    break
                if tag[0] == "out":
                    k += 1
            if not ok:
                errors.append(f"vertex {v}: pattern {seq} violates the Schnyder rule")
    for lab in LABELS:
        root = r.roots[lab]
        for v in r.interior:
            seen = set()
            x = v
            while x != root:
                if x in seen or x in outer and x != root:
                    errors.append(f"tree {lab}: vertex {v} does not reach root {root}")
                    break
                seen.add(x)
                x = r.parent[lab].get(x)
                if x is None:
                    errors.append(f"tree {lab}: broken parent chain from {v}")
                    break
    for u, v in emb.edges:
        if u in outer and v in outer:
            if r.label_of(u, v) is not None:
                errors.append(f"outer edge {u}-{v} is labelled")
        elif r.label_of(u, v) is None:
            errors.append(f"interior edge {u}-{v} unlabelled")
    return errors


def leaf_counts(r: SchnyderRealizer) -> tuple[int, int, int]:
    return tuple(len(r.leaves(lab)) for lab in LABELS)  # type: ignore[return-value]


def _interior_faces(emb: PlanarEmbedding, outer: Sequence[int]) -> list[tuple[int, ...]]:
    oid = outer_face_id(emb, outer)
    return [f for i, f in enumerate(emb.faces.faces) if i != oid]


def _labels_from_orientation(
    emb: PlanarEmbedding, outer: tuple[int, int, int], out: dict[int, set[int]]
) -> dict[str, dict[int, int]]:
    """Recover the unique labelling of a 3-orientation.

    Around an interior vertex the outgoing edges read 1, 2, n
    counterclockwise; an incoming edge takes the label of the wedge it sits
    in (n between out-1 and out-2, 1 between out-2 and out-n, 2 between
    out-n and out-1). Labels are seeded at the roots and propagated.
    """
    v1, v2, vn = outer
    root_label = {v1: "1", v2: "2", vn: "n"}
    out_label: dict[int, dict[int, str]] = {}
    queue: deque[tuple[int, int, str]] = deque()
    for v in range(emb.n):
        if v in root_label:
            continue
        for w in out[v]:
            if w in root_label:
                queue.append((v, w, root_label[w]))
    while queue:
        v, w, lab = queue.popleft()
        if v in out_label:
            continue
        rot = list(emb.adjacency[v])
        i = rot.index(w)
        rot = rot[i:] + rot[:i]
        labels: dict[int, str] = {}
        cur = lab
        wedge_in = {"1": "n", "2": "1", "n": "2"}
        for x in rot:
            if x in out[v]:
                if x != w:
                    cur = _NEXT[cur]
                labels[x] = cur
            else:
                inc = wedge_in[cur]
                if x not in root_label and x not in out_label:
                    queue.append((x, v, inc))
        out_label[v] = labels
    parent: dict[str, dict[int, int]] = {"1": {}, "2": {}, "n": {}}
    for v, labels in out_label.items():
        for w, lab in labels.items():
            parent[lab][v] = w
    return parent


def _count_oriented_faces(faces, out) -> tuple[int, int]:
    ccw = cw = 0
    for a, b, c in faces:
        if b in out[a] and c in out[b] and a in out[c]:
            ccw += 1
        elif a in out[b] and b in out[c] and c in out[a]:
            cw += 1
    return ccw, cw


def minimize_realizer(emb: PlanarEmbedding, r: SchnyderRealizer) -> SchnyderRealizer:
    """Flip counterclockwise facial triangles until none is left.

    Every flip moves one step down the lattice of Schnyder woods, so the loop
    terminates in the minimal realizer. ``delta0`` counts the clockwise
    facial triangles of the result.
    """
    out = r.out_neighbors()
    faces = _interior_faces(emb, r.outer)
    by_edge: dict[frozenset[int], list[int]] = {}
    for i, (a, b, c) in enumerate(faces):
        for e in ((a, b), (b, c), (c, a)):
            by_edge.setdefault(frozenset(e), []).append(i)
    work = list(range(len(faces)))
    queued = [True] * len(faces)
    flips = 0
    while work:
        i = work.pop()
        queued[i] = False
        a, b, c = faces[i]
        if b in out[a] and c in out[b] and a in out[c]:
            out[a].remove(b); out[b].add(a)
            out[b].remove(c); out[c].add(b)
            out[c].remove(a); out[a].add(c)
            flips += 1
            for e in ((a, b), (b, c), (c, a)):
                for j in by_edge[frozenset(e)]:
                    if not queued[j]:
                        queued[j] = True
                        work.append(j)
    parent = _labels_from_orientation(emb, r.outer, out) if flips else {
        lab: dict(r.parent[lab]) for lab in LABELS
    }
    _, cw = _count_oriented_faces(faces, out)
    return SchnyderRealizer(r.n, r.outer, parent, delta0=cw, minimized=True)


def ccw_triangles(emb: PlanarEmbedding, r: SchnyderRealizer) -> list[tuple[int, int, int]]:
    out = r.out_neighbors()
    return [
        (a, b, c)
        for a, b, c in _interior_faces(emb, r.outer)
        if b in out[a] and c in out[b] and a in out[c]
    ]


def realizer(emb: PlanarEmbedding, outer: Sequence[int] | None = None) -> SchnyderRealizer:
    return schnyder_from_order(emb, canonical_order(emb, outer))


def is_acyclic_union(r: SchnyderRealizer) -> bool:
    g = nx.DiGraph()
    g.add_nodes_from(range(r.n))
    for lab in LABELS:
        g.add_edges_from(r.parent[lab].items())
    return nx.is_directed_acyclic_graph(g)


def planar3tree_realizer(
    emb: PlanarEmbedding, outer: Sequence[int] | None = None
) -> SchnyderRealizer:
    """The unique (cycle-free) realizer of a planar 3-tree."""
    if not is_planar3tree(emb):
        raise Not3Tree("graph is not a planar 3-tree")
    r = realizer(emb, outer)
    if not is_acyclic_union(r):
        raise Not3Tree("realizer of a planar 3-tree must be cycle-free")
    return r


# ---------------------------------------------------------------------------
# Orders from trees
# ---------------------------------------------------------------------------


def _root_children(emb: PlanarEmbedding, root: int, others: Sequence[int],
                   kids: set[int], direction: str) -> list[int]:
    a, b = others
    rot = list(emb.adjacency[root])
    # interior neighbours lie on the side of the rotation not between a and b
    if emb.next_ccw(root, a) == b:
        start, stop = b, a
    else:
        start, stop = a, b
    seq = []
    x = emb.next_ccw(root, start)
    while x != stop:
        seq.append(x)
        x = emb.next_ccw(root, x)
    if direction == "cw":
        seq.reverse()
    return [x for x in seq if x in kids]


def _child_order(emb: PlanarEmbedding, v: int, parent: int, kids: set[int],
                 direction: str) -> list[int]:
    step = emb.next_cw if direction == "cw" else emb.next_ccw
    seq = []
    x = step(v, parent)
    while x != parent:
        if x in kids:
            seq.append(x)
        x = step(v, x)
    return seq


def tree_preorder(emb: PlanarEmbedding, r: SchnyderRealizer, which: str,
                  direction: Literal["cw", "ccw"]) -> list[int]:
    label = {"T1": "1", "T2": "2", "Tn": "n"}.get(which, which)
    root = r.roots[label]
    ch = r.children(label)
    others = [x for x in r.outer if x != root]
    out = [root]
    stack = list(reversed(_root_children(emb, root, others, set(ch[root]), direction)))
    while stack:
        v = stack.pop()
        out.append(v)
        kids = _child_order(emb, v, r.parent[label][v], set(ch[v]), direction)
        stack.extend(reversed(kids))
    return out


def order_from_tree(
    emb: PlanarEmbedding,
    r: SchnyderRealizer,
    which: Literal["T1", "T2", "Tn"],
    direction: Literal["cw", "ccw"],
) -> CanonicalOrder:
    """Canonical order read off a pre-order walk of one realizer tree.

    A counterclockwise walk treats the chosen tree as tree 1, a clockwise
    walk as tree 2. The realizer is rotated cyclically until the chosen
    tree holds that role, so the returned order carries the rotated outer
    triangle. Its derived realizer is the rotated ``r``.
    """
    label = {"T1": "1", "T2": "2", "Tn": "n"}[which]
    role = "1" if direction == "ccw" else "2"
    rr = rotate_to(r, label, role)
    v1, v2, vn = rr.outer
    pre = tree_preorder(emb, rr, role, direction)
    return CanonicalOrder(tuple([v1, v2] + pre[1:] + [vn]), rr.outer)


def rotate_to(r: SchnyderRealizer, label: str, role: str) -> SchnyderRealizer:
    """Cyclically relabel so that tree ``label`` of ``r`` becomes ``role``."""
    rr = r
    for _ in range(3):
        if rr.parent[role] == r.parent[label]:
            return rr
        rr = rr.relabeled()
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# Maximal outerplanar graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OuterplanarAugmentation:
    """Planar 3-tree obtained by adding an apex in the outer face.

    ``realizer`` is the standard realizer with outer triangle
    ``(v1, v2, apex)``; its trees 1 and 2 hold every original edge except
    the base edge ``v1 v2``. ``moved`` lists the outer apex edges that the
    construction re-assigns to trees 1 and 2.
    """

    embedding: PlanarEmbedding
    realizer: SchnyderRealizer
    apex: int
    base: tuple[int, int]
    moved: dict[str, tuple[int, int]] = field(default_factory=dict)

    def tree_edge_set(self, label: str) -> set[frozenset[int]]:
        edges = {frozenset(e) for e in self.realizer.parent[label].items()}
        if label in self.moved:
            edges.add(frozenset(self.moved[label]))
        return edges


def outerplanar_augment(
    emb: PlanarEmbedding, base: tuple[int, int] | None = None
) -> OuterplanarAugmentation:
    if not is_maximal_outerplanar(emb):
        raise NotMaximalOuterplanar("graph is not maximal outerplanar")
    n = emb.n
    ring = outerplanar_outer_order(emb)  # counterclockwise boundary
    if base is None:
        base = (ring[0], ring[1])
    v1, v2 = base
    i = ring.index(v1)
    if ring[(i + 1) % n] != v2:
        raise NotMaximalOuterplanar(f"{base} is not a counterclockwise boundary edge")
    apex = n
    rot = emb.rotations()
    # boundary traversal (outer face on the left) is the reverse ring
    trav = list(reversed(ring))
    for j in range(n):
        u, v = trav[j], trav[(j + 1) % n]
        rot[v].insert(rot[v].index(u), apex)
    rot.append(list(trav))
    # outer triangle (v1, v2, apex) counterclockwise
    aug = build_embedding(n + 1, rot, (v1, v2, apex))
    r = planar3tree_realizer(aug, (v1, v2, apex))
    return OuterplanarAugmentation(
        aug, r, apex, (v1, v2), {"1": (v1, apex), "2": (v2, apex)}
    )


def best_outer_face(
    emb: PlanarEmbedding, minimal: bool = True, target: int | None = None
) -> tuple[int, int, int]:
    """Outer face whose realizer has the smallest fewest-leaf tree.

    Faces are tried starting with the default one, then by face index. With
    ``target`` set, the first face reaching at most ``target`` leaves wins;
    otherwise (or if none does) the global minimum, ties to the earliest
    face tried. Leaf counts do not depend on the cyclic relabelling, so one
    realizer per face suffices.
    """
    start = tuple(default_outer(emb))
    candidates = [start]
    for face in emb.faces.faces:
        outer = (face[0], face[2], face[1])  # bounded faces are traced ccw
        if set(outer) != set(start):
            candidates.append(outer)
    best: tuple[int, int] | None = None
    choice = start
    for idx, outer in enumerate(candidates):
        r = realizer(emb, outer)
        if minimal:
            r = minimize_realizer(emb, r)
        leaves = min(leaf_counts(r))
        if target is not None and leaves <= target:
            return outer  # type: ignore[return-value]
        if best is None or (leaves, idx) < best:
            best, choice = (leaves, idx), outer
    return choice  # type: ignore[return-value]

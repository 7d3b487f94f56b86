"""Combinatorial plane graphs given as rotation systems.

A rotation lists the neighbours of a vertex in counterclockwise order.
Faces are traced with the face on the left of every directed edge: after
arriving at ``v`` from ``u`` we leave along the neighbour that precedes
``u`` in the rotation of ``v``. Bounded faces therefore come out
counterclockwise and the outer face clockwise.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal, Sequence

from .errors import (
    InvalidRotation,
    MultiEdge,
    NotConnected,
    NotPlanarEmbedding,
    NTooSmall,
)
from .rng import XorShift64Star

Edge = tuple[int, int]

GraphClass = Literal[
    "tree", "maximal_outerplanar", "planar_3tree", "triangulation", "planar_other"
]


# ---------------------------------------------------------------------------
# Data types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FaceSet:
    faces: tuple[tuple[int, ...], ...]
    face_of: dict[Edge, int] = field(repr=False, compare=False)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.faces)

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)


@dataclass(frozen=True)
class Chord:
    u: int
    v: int
    face: int  # index of the input face this chord subdivides


@dataclass(frozen=True)
class PlanarEmbedding:
    """Immutable rotation system.

    ``outer`` optionally names the outer face by listing its vertices in
    counterclockwise order as they appear in a drawing (for a triangulation
    this is ``(v1, v2, vn)``). Use :func:`build_embedding` to construct
    validated instances.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    outer: tuple[int, ...] | None = None

    @cached_property
    def position(self) -> tuple[dict[int, int], ...]:
        return tuple({w: i for i, w in enumerate(rot)} for rot in self.adjacency)

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(rot) for rot in self.adjacency)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(
            (u, v) for u, rot in enumerate(self.adjacency) for v in rot if u < v
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def next_ccw(self, v: int, w: int) -> int:
        rot = self.adjacency[v]
        return rot[(self.position[v][w] + 1) % len(rot)]

    def next_cw(self, v: int, w: int) -> int:
        rot = self.adjacency[v]
        return rot[self.position[v][w] - 1]

    def face_successor(self, u: int, v: int) -> int:
        """Vertex following ``u -> v`` on the face to the left of that edge."""
        return self.next_cw(v, u)

    @cached_property
    def faces(self) -> FaceSet:
        return faces(self)

    def is_connected(self) -> bool:
        return len(components(self)) <= 1

    def rotations(self) -> list[list[int]]:
        return [list(r) for r in self.adjacency]

    def with_outer(self, outer: Sequence[int] | None) -> PlanarEmbedding:
        return build_embedding(self.n, self.adjacency, outer)

    def mirrored(self) -> PlanarEmbedding:
        """Reflection: every rotation reversed, outer order reversed."""
        rot = [tuple(reversed(r)) for r in self.adjacency]
        outer = None
        if self.outer is not None:
            o = self.outer
            # keep o[0], o[1] as the base edge but swapped: (v2, v1, ...)
            outer = (o[1], o[0]) + tuple(reversed(o[2:]))
        return build_embedding(self.n, rot, outer)


# ---------------------------------------------------------------------------
# Construction and validation
# ---------------------------------------------------------------------------


def components(emb: PlanarEmbedding) -> list[list[int]]:
    seen = [False] * emb.n
    comps = []
    for s in range(emb.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            u = queue.popleft()
            for w in emb.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def faces(emb: PlanarEmbedding) -> FaceSet:
    """Trace every face; each directed edge is consumed exactly once.

    Faces are ordered by their lexicographically smallest unvisited
    directed edge, and each face list starts at that edge's tail.
    """
    face_of: dict[Edge, int] = {}
    out: list[tuple[int, ...]] = []
    for u in range(emb.n):
        for v in sorted(emb.adjacency[u]):
            if (u, v) in face_of:
                continue
            fid = len(out)
            cycle = []
            a, b = u, v
            while (a, b) not in face_of:
                face_of[(a, b)] = fid
                cycle.append(a)
                a, b = b, emb.face_successor(a, b)
            out.append(tuple(cycle))
    return FaceSet(tuple(out), face_of)


def _face_matching_outer(fs: FaceSet, outer: Sequence[int]) -> int | None:
    """Face id whose traversal is the reverse of ``outer`` (cyclically)."""
    target = tuple(reversed(outer))
    k = len(target)
    for fid, f in enumerate(fs.faces):
        if len(f) != k:
            continue
        for s in range(k):
            if f[s:] + f[:s] == target:
                return fid
    return None


def build_embedding(
    n: int,
    rotations: Sequence[Iterable[int]],
    outer: Sequence[int] | None = None,
) -> PlanarEmbedding:
    """Validate a rotation system and freeze it.

    Raises InvalidRotation for out-of-range ids, self-loops or asymmetric
    adjacency, MultiEdge for repeated neighbours and NotPlanarEmbedding when
    some connected component violates Euler's formula.
    """
    if n < 1:
        raise InvalidRotation("need at least one vertex")
    if len(rotations) != n:
        raise InvalidRotation(f"expected {n} rotations, got {len(rotations)}")
    adj = tuple(tuple(int(w) for w in rot) for rot in rotations)
    for v, rot in enumerate(adj):
        if len(set(rot)) != len(rot):
            raise MultiEdge(f"vertex {v} lists a neighbour twice: {rot}")
        for w in rot:
            if not 0 <= w < n:
                raise InvalidRotation(f"vertex {v}: neighbour {w} out of range")
            if w == v:
                raise InvalidRotation(f"self-loop at {v}")
    sets = [set(rot) for rot in adj]
    for v in range(n):
        for w in adj[v]:
            if v not in sets[w]:
                raise InvalidRotation(f"edge {v}-{w} missing from rotation of {w}")

    emb = PlanarEmbedding(n, adj, None)
    fs = emb.faces
    face_count = [0] * n
    for f in fs.faces:
        face_count[f[0]] += 1
    for comp in components(emb):
        if len(comp) == 1:
            continue
        v_c = len(comp)
        e_c = sum(len(adj[v]) for v in comp) // 2
        f_c = sum(face_count[v] for v in comp)
        if v_c - e_c + f_c != 2:
            raise NotPlanarEmbedding(
                f"component of {v_c} vertices, {e_c} edges has {f_c} faces "
                f"(Euler requires {2 - v_c + e_c})"
            )
    if outer is not None:
        outer = tuple(int(x) for x in outer)
        if _face_matching_outer(fs, outer) is None:
            raise InvalidRotation(f"outer {outer} is not a face of the embedding")
    emb = PlanarEmbedding(n, adj, outer)
    emb.__dict__["faces"] = fs  # reuse the traversal
    return emb


def default_outer(emb: PlanarEmbedding) -> tuple[int, ...]:
    """The recorded outer face, else the lowest-id face through vertex 0."""
    if emb.outer is not None:
        return emb.outer
    for f in emb.faces.faces:
        if 0 in f:
            i = f.index(0)
            cyc = f[i:] + f[:i]
            return (cyc[0],) + tuple(reversed(cyc[1:]))
    raise NotConnected("vertex 0 has no incident face")


def outer_face_id(emb: PlanarEmbedding, outer: Sequence[int]) -> int:
    fid = _face_matching_outer(emb.faces, outer)
    if fid is None:
        raise InvalidRotation(f"{tuple(outer)} is not a face")
    return fid


def ccw_face_orders(emb: PlanarEmbedding) -> list[tuple[int, ...]]:
    """Every face as an outer-face candidate (counterclockwise order)."""
    return [(f[0],) + tuple(reversed(f[1:])) for f in emb.faces.faces]


# ---------------------------------------------------------------------------
# Mutable helpers for generators
# ---------------------------------------------------------------------------


def _insert_before(rot: list[int], anchor: int, new: int) -> None:
    rot.insert(rot.index(anchor), new)


def _insert_after(rot: list[int], anchor: int, new: int) -> None:
    rot.insert(rot.index(anchor) + 1, new)


def _stack(rot: list[list[int]], face: Sequence[int]) -> int:
    """Add a vertex adjacent to every vertex of ``face`` (traversal order)."""
    w = len(rot)
    k = len(face)
    for i in range(k):
        u, v = face[i], face[(i + 1) % k]
        _insert_before(rot[v], u, w)
    rot.append(list(face))
    return w


_K4 = [[1, 3, 2], [2, 3, 0], [0, 3, 1], [1, 2, 0]]


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def generate_planar3tree(
    n: int, seed: int
) -> tuple[PlanarEmbedding, list[tuple[int, tuple[int, int, int]]]]:
    """Random stacked triangulation with outer face (0, 1, 2).

    Returns the embedding and the stacking sequence: for every vertex past
    the initial K4, the bounded face (in traversal order) it was put into.
    """
    if n < 4:
        raise NTooSmall(f"planar 3-tree needs n >= 4, got {n}")
    rng = XorShift64Star(seed)
    rot = [list(r) for r in _K4]
    bounded = [(0, 1, 3), (1, 2, 3), (2, 0, 3)]
    stacking: list[tuple[int, tuple[int, int, int]]] = []
    while len(rot) < n:
        i = rng.randbelow(len(bounded))
        a, b, c = bounded[i]
        w = _stack(rot, (a, b, c))
        bounded[i] = (a, b, w)
        bounded.extend([(b, c, w), (c, a, w)])
        stacking.append((w, (a, b, c)))
    return build_embedding(n, rot, (0, 1, 2)), stacking


def generate_maximal_outerplanar(n: int, seed: int) -> PlanarEmbedding:
    """Random triangulated polygon built by repeated ear insertion.

    Vertex ``k`` (k >= 3) is the k-th inserted ear, so deleting the
    highest-numbered vertex always leaves a maximal outerplanar graph.
    """
    if n < 3:
        raise NTooSmall(f"maximal outerplanar graph needs n >= 3, got {n}")
    rng = XorShift64Star(seed)
    rot = [[1, 2], [2, 0], [0, 1]]
    cycle = [0, 2, 1]  # outer face, traversal order
    while len(rot) < n:
        i = rng.randbelow(len(cycle))
        u, v = cycle[i], cycle[(i + 1) % len(cycle)]
        w = len(rot)
        _insert_before(rot[v], u, w)
        _insert_after(rot[u], v, w)
        rot.append([u, v])
        cycle.insert(i + 1, w)
    outer = (cycle[0],) + tuple(reversed(cycle[1:]))
    return build_embedding(n, rot, outer)


def generate_triangulation(n: int, seed: int, flips: int) -> PlanarEmbedding:
    """Planar 3-tree followed by ``flips`` random valid diagonal flips.

    Edges of the outer triangle are never flipped. A flip of ``uv`` with
    opposite vertices ``a``, ``b`` is valid when ``ab`` is not yet an edge and
    both ``u`` and ``v`` keep degree at least 3.
    """
    emb, _ = generate_planar3tree(n, seed)
    if flips <= 0:
        return emb
    rng = XorShift64Star(seed ^ 0x5DEECE66D)
    rot = emb.rotations()
    outer = set(emb.outer or ())
    done = attempts = 0
    while done < flips and attempts < 50 * flips + 100:
        attempts += 1
        edges = sorted(
            (u, v)
            for u in range(n)
            for v in rot[u]
            if u < v and not (u in outer and v in outer)
        )
        u, v = rng.choice(edges)
        a = rot[v][rot[v].index(u) - 1]
        b = rot[u][rot[u].index(v) - 1]
        if a == b or b in rot[a] or len(rot[u]) <= 3 or len(rot[v]) <= 3:
            continue
        rot[u].remove(v)
        rot[v].remove(u)
        _insert_after(rot[a], u, b)
        _insert_after(rot[b], v, a)
        done += 1
    return build_embedding(n, rot, emb.outer)


def random_tree_edges(n: int, seed: int) -> list[Edge]:
    """Uniform random labelled tree on ``n`` vertices (Pruefer decoding)."""
    if n < 1:
        raise NTooSmall("tree needs n >= 1")
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    rng = XorShift64Star(seed)
    seq = [rng.randbelow(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((min(u, v), max(u, v)))
    return sorted(edges)


def tree_embedding(n: int, edges: Iterable[Edge]) -> PlanarEmbedding:
    """Any rotation system of a forest is planar; use sorted neighbour lists."""
    rot: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        rot[u].append(v)
        rot[v].append(u)
    return build_embedding(n, [sorted(r) for r in rot])


def generate_tree(n: int, seed: int) -> PlanarEmbedding:
    return tree_embedding(n, random_tree_edges(n, seed))


def delete_edges(emb: PlanarEmbedding, edges: Iterable[Edge]) -> PlanarEmbedding:
    rot = emb.rotations()
    for u, v in edges:
        rot[u].remove(v)
        rot[v].remove(u)
    outer = emb.outer
    out = build_embedding(emb.n, rot)
    if outer is not None and _face_matching_outer(out.faces, outer) is None:
        outer = None
    return build_embedding(emb.n, rot, outer)


def generate_planar(n: int, seed: int, target_edges: int | None = None,
                    flips: int | None = None) -> PlanarEmbedding:
    """Connected plane graph: a random triangulation minus random edges.

    Edges are removed in random order, skipping bridges, until
    ``target_edges`` remain (default ``3n // 2``).
    """
    tri = generate_triangulation(n, seed, 3 * n if flips is None else flips)
    target = max(n - 1, 3 * n // 2 if target_edges is None else target_edges)
    rng = XorShift64Star(seed ^ 0xA5A5A5A5)
    edges = list(tri.edges)
    rng.shuffle(edges)
    adj = [set(r) for r in tri.adjacency]
    removed = []
    m = len(edges)
    for u, v in edges:
        if m <= target:
            break
        adj[u].discard(v)
        adj[v].discard(u)
        if _reachable(adj, u, v):
            removed.append((u, v))
            m -= 1
        else:
            adj[u].add(v)
            adj[v].add(u)
    return delete_edges(tri, removed)


def _reachable(adj: list[set[int]], s: int, t: int) -> bool:
    seen = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            return True
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return False


# ---------------------------------------------------------------------------
# Triangulation by face fans
# ---------------------------------------------------------------------------


def _apex_score(adj: list[set[int]], face: Sequence[int], a: int) -> int:
    return sum(1 for w in set(face) if w != a and w not in adj[a])


def _choose_apex(adj: list[set[int]], face: Sequence[int],
                 exclude: set[int] = frozenset()) -> int | None:
    best = None
    for a in sorted(set(face) - exclude):
        s = _apex_score(adj, face, a)
        if best is None or s > best[0]:
            best = (s, a)
    return None if best is None else best[1]


def triangulate(
    emb: PlanarEmbedding, strategy: str = "fan_single_vertex"
) -> tuple[PlanarEmbedding, list[Chord]]:
    """Triangulate every face by a fan of chords from one apex vertex.

    The apex of a face is the face vertex with the most non-adjacent face
    vertices (lowest id on ties). When the fan would duplicate an edge, the
    remaining sub-face is split at a valid chord from a freshly chosen apex
    and each part is fanned again.
    """
    if strategy != "fan_single_vertex":
        raise ValueError(f"unknown strategy {strategy!r}")
    if emb.n < 3:
        raise NTooSmall("triangulate needs n >= 3")
    if not emb.is_connected():
        raise NotConnected("triangulate needs a connected graph")
    rot = emb.rotations()
    adj = [set(r) for r in rot]
    chords: list[Chord] = []

    def add_chord(face: list[int], x: int, y: int, fid: int):
        k = len(face)
        u, v = face[x], face[y]
        _insert_after(rot[u], face[(x + 1) % k], v)
        _insert_after(rot[v], face[(y + 1) % k], u)
        adj[u].add(v)
        adj[v].add(u)
        chords.append(Chord(min(u, v), max(u, v), fid))
        if x < y:
            part1 = face[x:y + 1]
            part2 = face[y:] + face[:x + 1]
        else:
            part1 = face[x:] + face[:y + 1]
            part2 = face[y:x + 1]
        return part1, part2

    def valid(face: list[int], x: int, y: int) -> bool:
        u, v = face[x], face[y]
        return u != v and v not in adj[u]

    for fid, f in enumerate(emb.faces.faces):
        if len(f) <= 3:
            continue
        apex = _choose_apex(adj, f)
        stack = [(list(f), apex)]
        while stack:
            face, a = stack.pop()
            k = len(face)
            if k <= 3:
                continue
            split = None
            for x in (i for i, w in enumerate(face) if w == a):
                for y in ((x + 2) % k, (x - 2) % k):
                    if valid(face, x, y):
                        split = (x, y)
                        break
                if split:
                    break
            if split is None:
                tried: set[int] = set()
                while split is None:
                    b = _choose_apex(adj, face, tried)
                    if b is None:
                        raise NotPlanarEmbedding(f"face {face} admits no chord")
                    tried.add(b)
                    for x in (i for i, w in enumerate(face) if w == b):
                        for d in range(2, k - 1):
                            y = (x + d) % k
                            if valid(face, x, y):
                                split = (x, y)
                                break
                        if split:
                            break
                    a = b
            p1, p2 = add_chord(face, split[0], split[1], fid)
            stack.append((p1, a))
            stack.append((p2, a))
    out = build_embedding(emb.n, rot)
    if emb.outer is not None and _face_matching_outer(out.faces, emb.outer) is not None:
        out = build_embedding(emb.n, rot, emb.outer)
    return out, chords


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


def is_triangulation(emb: PlanarEmbedding) -> bool:
    return (
        emb.n >= 3
        and emb.m == 3 * emb.n - 6
        and all(len(f) == 3 for f in emb.faces.faces)
        and emb.is_connected()
    )


def is_planar3tree(emb: PlanarEmbedding) -> bool:
    """Reverse deconstruction: peel degree-3 vertices down to K4."""
    if emb.n < 4 or not is_triangulation(emb):
        return False
    adj = [set(r) for r in emb.adjacency]
    alive = emb.n
    queue = [v for v in range(emb.n) if len(adj[v]) == 3]
    removed = [False] * emb.n
    while alive > 4 and queue:
        v = queue.pop()
        if removed[v] or len(adj[v]) != 3:
            continue
        a, b, c = adj[v]
        if not (b in adj[a] and c in adj[a] and c in adj[b]):
            continue
        removed[v] = True
        alive -= 1
        for w in (a, b, c):
            adj[w].discard(v)
            if len(adj[w]) == 3:
                queue.append(w)
    if alive != 4:
        return False
    rest = [v for v in range(emb.n) if not removed[v]]
    return all(len(adj[v]) == 3 for v in rest)


def is_maximal_outerplanar(emb: PlanarEmbedding) -> bool:
    n = emb.n
    if n < 3 or emb.m != 2 * n - 3 or not emb.is_connected():
        return False
    big = [f for f in emb.faces.faces if len(f) == n and len(set(f)) == n]
    if len(big) != 1 and not (n == 3 and big):
        return False
    return sum(1 for f in emb.faces.faces if len(f) == 3) == len(emb.faces) - (0 if n == 3 else 1)


def outerplanar_outer_order(emb: PlanarEmbedding) -> tuple[int, ...]:
    """Counterclockwise boundary of the face holding every vertex."""
    if emb.outer is not None and len(emb.outer) == emb.n:
        return emb.outer
    for f in emb.faces.faces:
        if len(f) == emb.n and len(set(f)) == emb.n:
            i = f.index(min(f))
            cyc = f[i:] + f[:i]
            return (cyc[0],) + tuple(reversed(cyc[1:]))
    raise InvalidRotation("no face contains every vertex")


def is_tree(emb: PlanarEmbedding) -> bool:
    return emb.m == emb.n - 1 and emb.is_connected()


def classify(emb: PlanarEmbedding) -> GraphClass:
    if is_tree(emb):
        return "tree"
    if is_maximal_outerplanar(emb):
        return "maximal_outerplanar"
    if is_planar3tree(emb):
        return "planar_3tree"
    if emb.n >= 4 and is_triangulation(emb):
        return "triangulation"
    return "planar_other"

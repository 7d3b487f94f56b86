from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from oracles import is_plane_graph
from viscomp.errors import InvalidRotation, MultiEdge, NotConnected, NotPlanarEmbedding, NTooSmall
from viscomp.graph import (
    build_embedding, ccw_face_orders, classify, default_outer, delete_edges,
    generate_maximal_outerplanar, generate_planar, generate_planar3tree, generate_tree,
    generate_triangulation, is_maximal_outerplanar, is_planar3tree, is_tree, is_triangulation,
    outerplanar_outer_order, random_tree_edges, triangulate,
)


def test_k4_faces(k4):
    assert len(k4.faces) == 4
    assert k4.faces.sizes == (3, 3, 3, 3)
    assert k4.m == 6


def test_face_successor_turns_clockwise(k4):
    # leaving 1 towards 0: face on the left continues to the vertex before 1 at 0
    assert k4.face_successor(1, 0) == k4.next_cw(0, 1)


def test_rejects_asymmetric_rotation():
    with pytest.raises(InvalidRotation):
        build_embedding(3, [[1], [0, 2], [1, 0]])


def test_rejects_repeated_neighbour():
    with pytest.raises(MultiEdge):
        build_embedding(2, [[1, 1], [0, 0]])


def test_rejects_self_loop():
    with pytest.raises(InvalidRotation):
        build_embedding(2, [[0, 1], [0]])


def test_rejects_nonplanar_rotation():
    # K4 with one rotation reversed traces too few faces
    with pytest.raises(NotPlanarEmbedding):
        build_embedding(4, [[1, 2, 3], [2, 3, 0], [0, 3, 1], [1, 2, 0]])


def test_rejects_unknown_outer_face(k4):
    with pytest.raises(InvalidRotation):
        k4.with_outer((0, 2, 1, 3))


def test_generator_sizes():
    assert generate_planar3tree(10, 1)[0].m == 24
    assert generate_maximal_outerplanar(8, 0).m == 13
    assert generate_tree(9, 4).m == 8
    assert generate_triangulation(12, 3, 36).m == 30


def test_too_small():
    with pytest.raises(NTooSmall):
        generate_planar3tree(3, 0)
    with pytest.raises(NTooSmall):
        generate_maximal_outerplanar(2, 0)


def test_generators_are_deterministic():
    assert generate_triangulation(20, 7, 60) == generate_triangulation(20, 7, 60)
    assert generate_planar3tree(15, 2)[0] != generate_planar3tree(15, 3)[0]
    assert random_tree_edges(30, 5) == random_tree_edges(30, 5)


def test_stacking_sequence_names_faces():
    emb, stacking = generate_planar3tree(9, 4)
    assert [w for w, _ in stacking] == list(range(4, 9))
    for w, face in stacking:
        assert set(face) <= set(emb.adjacency[w])


def test_octahedron_is_triangulation_not_3tree(octahedron):
    assert is_triangulation(octahedron)
    assert not is_planar3tree(octahedron)
    assert classify(octahedron) == "triangulation"


def test_classify():
    assert classify(generate_tree(10, 0)) == "tree"
    assert classify(generate_maximal_outerplanar(10, 0)) == "maximal_outerplanar"
    assert classify(generate_planar3tree(10, 0)[0]) == "planar_3tree"
    assert classify(generate_planar(12, 0, 20)) == "planar_other"


def test_outerplanar_boundary_is_hamiltonian():
    emb = generate_maximal_outerplanar(11, 3)
    ring = outerplanar_outer_order(emb)
    assert sorted(ring) == list(range(11))
    for a, b in zip(ring, ring[1:] + ring[:1]):
        assert emb.has_edge(a, b)


def test_default_outer_is_a_face(octahedron):
    outer = default_outer(octahedron)
    assert outer in ccw_face_orders(octahedron) or len(outer) == 3
    assert octahedron.with_outer(outer).outer == outer


def test_triangulate_cycle():
    c6 = build_embedding(6, [[(i + 1) % 6, (i - 1) % 6] for i in range(6)])
    tri, chords = triangulate(c6)
    assert is_triangulation(tri)
    assert len(chords) == 2 * (6 - 3)
    assert set(c6.edges) <= set(tri.edges)


def test_triangulate_needs_connected():
    two = build_embedding(4, [[1], [0], [3], [2]])
    with pytest.raises(NotConnected):
        triangulate(two)


def test_delete_edges_round_trip():
    tri = generate_triangulation(10, 2, 30)
    e = tri.edges[5]
    out = delete_edges(tri, [e])
    assert out.m == tri.m - 1
    assert not out.has_edge(*e)


def test_mirror_reverses_faces(octahedron):
    m = octahedron.mirrored()
    assert sorted(map(sorted, m.faces.faces)) == sorted(map(sorted, octahedron.faces.faces))
    assert m.mirrored().adjacency == octahedron.adjacency


@given(n=st.integers(4, 60), seed=st.integers(0, 10_000))
def test_random_triangulation_is_plane(n, seed):
    emb = generate_triangulation(n, seed, 3 * n)
    assert is_triangulation(emb)
    assert len(emb.faces) == 2 * n - 4
    assert is_plane_graph(emb)


@given(n=st.integers(4, 60), seed=st.integers(0, 10_000))
def test_random_3tree_recognised(n, seed):
    emb, _ = generate_planar3tree(n, seed)
    assert is_planar3tree(emb)
    assert emb.n - emb.m + len(emb.faces) == 2


@given(n=st.integers(3, 60), seed=st.integers(0, 10_000))
def test_random_outerplanar_recognised(n, seed):
    assert is_maximal_outerplanar(generate_maximal_outerplanar(n, seed))


@given(n=st.integers(2, 80), seed=st.integers(0, 10_000))
def test_random_tree_recognised(n, seed):
    emb = generate_tree(n, seed)
    assert is_tree(emb)
    assert len(emb.faces) == 1


@given(n=st.integers(5, 30), seed=st.integers(0, 10_000), data=st.data())
def test_planar_generator_hits_edge_target(n, seed, data):
    e = data.draw(st.integers(n - 1, 3 * n - 6))
    emb = generate_planar(n, seed, e)
    assert emb.m == e
    assert emb.is_connected()
    assert emb.n - emb.m + len(emb.faces) == 2


@given(n=st.integers(4, 25), seed=st.integers(0, 10_000), data=st.data())
def test_triangulate_keeps_edges_and_counts_chords(n, seed, data):
    e = data.draw(st.integers(n - 1, 3 * n - 6))
    emb = generate_planar(n, seed, e)
    tri, chords = triangulate(emb)
    assert is_triangulation(tri)
    assert set(emb.edges) <= set(tri.edges)
    assert len(chords) == 3 * n - 6 - e
    assert {frozenset((c.u, c.v)) for c in chords} == {
        frozenset(x) for x in set(tri.edges) - set(emb.edges)
    }

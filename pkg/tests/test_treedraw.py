from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from oracles import min_segment_cover, sympy_crossing
from viscomp.errors import NotATree
from viscomp.graph import generate_tree, tree_embedding
from viscomp.treedraw import (
    UNIT, LBox, draw_tree, heavy_path_decompose, height_bound, layout_heavy_path,
    merge_boxes, segment_bound, width_bound,
)
from viscomp.verify import check_planarity_exact, count_segments


def _path(n):
    return tree_embedding(n, [(i, i + 1) for i in range(n - 1)])


def _complete_binary(n):
    return tree_embedding(n, [((i - 1) // 2, i) for i in range(1, n)])


def test_path_is_one_heavy_path():
    dec = heavy_path_decompose(_path(5), 0)
    assert dec.paths == [[0, 1, 2, 3, 4]]
    assert dec.depth == [1]


def test_star_decomposition():
    star = tree_embedding(5, [(0, i) for i in range(1, 5)])
    dec = heavy_path_decompose(star, 0)
    assert dec.paths[0] == [0, 1]
    assert sorted(dec.paths[1:]) == [[2], [3], [4]]
    assert [dec.depth[dec.path_of[v]] for v in (2, 3, 4)] == [0, 0, 0]


def test_complete_binary_depth():
    assert heavy_path_decompose(_complete_binary(15), 0).max_depth <= math.ceil(math.log2(15))


def test_merge_boxes():
    assert merge_boxes([UNIT, UNIT]) == [UNIT]
    assert merge_boxes([LBox(1, 2, 1, 3), LBox(2, 1, 2, 2)]) == [LBox(2, 2, 2, 3)]
    assert len(merge_boxes([UNIT, UNIT, UNIT])) == 2


def test_leaf_path_is_unit_box():
    assert layout_heavy_path([7], {}, 0).box == UNIT


def test_rejects_non_tree():
    with pytest.raises(NotATree):
        heavy_path_decompose((3, [(0, 1), (1, 2), (2, 0)]))
    with pytest.raises(NotATree):
        draw_tree((4, [(0, 1), (2, 3)]))


def test_single_edge():
    d = draw_tree(_path(2))
    assert count_segments(d) == 1


def test_p9_is_one_segment():
    assert count_segments(draw_tree(_path(9))) == 1


def test_two_light_children_share_a_segment():
    # root 0 with heavy child 1 (subtree of 3) and two single-leaf children
    t = tree_embedding(6, [(0, 1), (1, 2), (2, 3), (0, 4), (0, 5)])
    d = draw_tree(t, 0)
    assert count_segments(d) == 2
    assert check_planarity_exact(d).ok


def test_three_light_children_need_two_segments():
    t = tree_embedding(7, [(0, 1), (1, 2), (2, 3), (0, 4), (0, 5), (0, 6)])
    d = draw_tree(t, 0)
    # heavy path, a straight pair through 0, and the third light edge
    assert count_segments(d) == 3
    assert check_planarity_exact(d).ok


def test_one_vertex():
    d = draw_tree((1, []))
    assert d.points == {0: (0, 0)} and d.edges == []


def test_bounds_known_values():
    assert segment_bound(10) == 7
    assert width_bound(10) == 2 * 16 * 10
    assert height_bound(10) == pytest.approx(2 * 1.5 ** 4 * 10)


@given(n=st.integers(2, 13), seed=st.integers(0, 10_000))
def test_small_trees_against_oracles(n, seed):
    d = draw_tree(generate_tree(n, seed))
    assert count_segments(d) == min_segment_cover(d.points, d.edges)
    assert sympy_crossing(d.points, d.edges) is None


@given(n=st.integers(2, 300), seed=st.integers(0, 10_000))
def test_random_tree_bounds(n, seed):
    t = generate_tree(n, seed)
    d = draw_tree(t)
    assert sorted(d.edges) == sorted(t.edges)
    assert len(set(d.points.values())) == n
    w, h = d.extents()
    assert count_segments(d) <= segment_bound(n)
    assert w <= width_bound(n)
    assert h <= height_bound(n)
    assert check_planarity_exact(d).ok


@given(n=st.integers(3, 200), seed=st.integers(0, 10_000), root=st.integers(0, 199))
def test_any_root(n, seed, root):
    d = draw_tree(generate_tree(n, seed), root % n)
    assert check_planarity_exact(d).ok
    assert count_segments(d) <= segment_bound(n)

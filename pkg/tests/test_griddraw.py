from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import min_segment_cover, sympy_crossing
from viscomp.drawing import GridDrawing
from viscomp.errors import Not3Tree, NotMaximalOuterplanar, ParseError
from viscomp.graph import (
    build_embedding, generate_maximal_outerplanar, generate_planar3tree, generate_tree,
)
from viscomp.griddraw import (
    StepTrace, check_invariants, draw_outerplanar, draw_planar3tree, fewest_leaf_rotation,
    insertion_step, replay, segment_bound_3tree, shifting_step, start_state,
)
from viscomp.realizer import leaf_counts, order_from_tree, planar3tree_realizer
from viscomp.verify import check_planarity_exact, count_segments


def _state(emb):
    r = fewest_leaf_rotation(planar3tree_realizer(emb))
    order = list(order_from_tree(emb, r, "T2", "cw").order)
    return start_state(emb, r, order), r


def _fan(n):
    # vertex 0 joined to the path 1..n-1
    rot = [list(range(1, n))]
    for i in range(1, n):
        nb = [0]
        if i > 1:
            nb.append(i - 1)
        if i < n - 1:
            nb.insert(0, i + 1)
        rot.append(nb)
    return build_embedding(n, rot)


def test_start_state(k4):
    st_, _ = _state(k4)
    v1, v2, v3 = st_.order[:3]
    assert st_.pos[v1] == [0, 0] and st_.pos[v2] == [2, 0] and st_.pos[v3] == [1, 1]
    assert check_invariants(st_).ok


def test_k4(k4):
    res = draw_planar3tree(k4)
    v1, v2, _ = res.trace.order[:3]
    assert res.drawing.points[v1] == (0, 0)
    assert res.drawing.points[v2] == (3, 0)
    assert count_segments(res.drawing) == 6
    assert len(res.drawing.points) == 4 and len(res.drawing.edges) == 6


def test_k4_inserts_vn_by_case_iii(k4):
    # v1 already has the incoming 1-edge of v3, so vn cannot use case i
    st_, _ = _state(k4)
    rec = insertion_step(st_)
    assert rec.case == "iii"
    assert st_.outl1[rec.vertex] == 2


def test_case_i_extends_the_1_edge():
    emb, _ = generate_planar3tree(40, 2)
    st_, _ = _state(emb)
    hits = 0
    while st_.k < emb.n:
        segs = st_.lam()
        rec = insertion_step(st_)
        if rec.case == "i":
            vl = st_.p1[rec.vertex]
            assert st_.outl1[rec.vertex] == st_.outl1[vl]
            hits += 1
        shifting_step(st_, rec)
        if rec.case == "i":
            assert st_.lam() == segs
    assert hits


def test_shift_moves_along_1_edge():
    emb, _ = generate_planar3tree(10, 3)
    st_, _ = _state(emb)
    while st_.k < emb.n:
        rec = insertion_step(st_)
        before = {v: tuple(st_.pos[v]) for v in st_.contour}
        shifting_step(st_, rec)
        for v, dx, dy in rec.shifts:
            assert dx == 1
            assert dy == (0 if v == st_.v2 else st_.outl1[v])
            assert tuple(st_.pos[v]) == (before[v][0] + 1, before[v][1] + dy)
        right = st_.contour[st_.contour.index(rec.vertex):]
        xs = [st_.pos[v][0] for v in right]
        assert xs == list(range(xs[0], xs[0] + len(xs)))


def test_case_slopes():
    emb, _ = generate_planar3tree(40, 8)
    st_, _ = _state(emb)
    seen = set()
    while st_.k < emb.n:
        eta, inl = st_.eta, dict(st_.inl)
        rec = insertion_step(st_)
        vl = st_.p1[rec.vertex]
        slope = st_.outl1[rec.vertex]
        if rec.case == "ii":
            assert slope > inl[vl]
        if rec.case == "iii":
            assert slope > eta
        seen.add(rec.case)
        shifting_step(st_, rec)
    assert seen == {"i", "ii", "iii"}


def test_perturbed_state_is_rejected():
    emb, _ = generate_planar3tree(12, 1)
    st_, _ = _state(emb)
    for _ in range(5):
        shifting_step(st_, insertion_step(st_))
    assert check_invariants(st_).ok
    v = st_.contour[len(st_.contour) // 2]
    x, y = st_.pos[v]
    st_.move(v, x, y + 1)
    assert not check_invariants(st_).ok


def test_n50_all_steps_pass():
    emb, _ = generate_planar3tree(50, 4)
    res = draw_planar3tree(emb, check=True, full_check=True)
    assert len(res.trace.steps) == 47
    assert len(res.reports) == 48
    assert all(rep.ok for rep in res.reports)


def test_trace_replay_and_parse():
    emb, _ = generate_planar3tree(30, 6)
    res = draw_planar3tree(emb)
    again = StepTrace.parse(res.trace.dump())
    assert again == res.trace
    assert replay(again) == res.drawing.points


def test_trace_parse_errors():
    with pytest.raises(ParseError):
        StepTrace.parse("step 4 case i place 1 1\n")
    with pytest.raises(ParseError):
        StepTrace.parse("order 0 1 2\nbogus line\n")


def test_rejects_wrong_class():
    with pytest.raises(Not3Tree):
        draw_planar3tree(generate_tree(6, 0))
    with pytest.raises(NotMaximalOuterplanar):
        draw_outerplanar(generate_planar3tree(6, 0)[0])


def test_triangle_outerplanar():
    tri = build_embedding(3, [[1, 2], [2, 0], [0, 1]])
    assert count_segments(draw_outerplanar(tri).drawing) == 3


def test_fan_outerplanar():
    d = draw_outerplanar(_fan(6)).drawing
    assert count_segments(d) <= 9
    assert check_planarity_exact(d).ok


def test_segment_bound_value():
    assert segment_bound_3tree(10) == Fraction(63, 3)


def _t1_only(res):
    p1 = dict(res.realizer.parent["1"])
    v1, _, vn = res.realizer.outer
    edges = [(c, p) for c, p in p1.items()] + [(vn, v1)]
    return GridDrawing(res.drawing.points, edges)


@given(n=st.integers(4, 120), seed=st.integers(0, 10_000),
       policy=st.sampled_from(["given", "auto"]))
def test_random_3trees(n, seed, policy):
    emb, _ = generate_planar3tree(n, seed)
    res = draw_planar3tree(emb, check=True, outer_policy=policy)
    d = res.drawing
    assert sorted(d.edges) == sorted(emb.edges)
    w, h = d.extents()
    assert w == n - 1
    assert min(y for _, y in d.points.values()) == 0
    assert h <= (n - 1) * res.lam <= (n - 1) * n
    assert check_planarity_exact(d).ok
    assert count_segments(_t1_only(res)) == res.lam
    # vn hangs off v1 as an extra tree-1 leaf
    assert res.lam == leaf_counts(res.realizer)[0] + 1 == min(leaf_counts(res.realizer)) + 1
    # with an arbitrary outer face the exact count can reach (8n-17)/3 + 1
    assert count_segments(d) <= (8 * n - 14) / 3


@settings(max_examples=15)
@given(n=st.integers(4, 9), seed=st.integers(0, 10_000))
def test_small_3trees_against_oracles(n, seed):
    emb, _ = generate_planar3tree(n, seed)
    d = draw_planar3tree(emb).drawing
    if len(d.edges) <= 12:
        assert count_segments(d) == min_segment_cover(d.points, d.edges)
    assert sympy_crossing(d.points, d.edges) is None


@given(n=st.integers(3, 150), seed=st.integers(0, 10_000))
def test_random_outerplanar(n, seed):
    emb = generate_maximal_outerplanar(n, seed)
    res = draw_outerplanar(emb, check=True)
    d = res.drawing
    assert sorted(d.edges) == sorted(emb.edges)
    assert count_segments(d) <= 3 * n / 2
    w, h = d.extents()
    N = n + 1
    assert w <= N - 1 and h <= (N - 1) * N
    assert check_planarity_exact(d).ok

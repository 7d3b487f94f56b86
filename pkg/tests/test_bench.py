from __future__ import annotations

import pytest

from viscomp.bench import COLUMNS, aggregate, format_table, parse_csv, run_bench, to_csv
from viscomp.pipeline import bound_value


def test_csv_round_trip():
    rows = run_bench("tree", [8, 16], range(3), timing=False)
    text = to_csv(rows)
    assert text.splitlines()[0] == ",".join(COLUMNS)
    assert parse_csv(text) == rows


def test_3tree_width_is_n_minus_1():
    rows = run_bench("3tree", [10, 25], range(4), timing=False)
    assert all(r["width"] == r["n"] - 1 for r in rows)
    assert all(r["slack"] >= 0 for r in rows)
    assert all(r["e"] == 3 * r["n"] - 6 for r in rows)


def test_tri_arcs_dof_within_bound():
    rows = run_bench("tri-arcs", [8, 15], range(3), timing=False)
    for r in rows:
        assert r["dof"] <= (23 * r["n"] - 50) / 3
        assert r["count"] <= r["bound"]


def test_planar_arcs_edges():
    rows = run_bench("planar-arcs", [12], range(3), timing=False, edges=20)
    assert {r["e"] for r in rows} == {20}
    assert all(r["bound"] == pytest.approx(bound_value("planar-arcs", 12, 20), abs=1e-6) for r in rows)


def test_aggregate_and_table():
    rows = run_bench("outerplanar", [6, 9], range(2), timing=False)
    agg = aggregate(rows)
    assert [a["n"] for a in agg] == [6, 9]
    assert all(a["instances"] == 2 for a in agg)
    table = format_table(rows)
    assert "n=9:" in table


def test_timing_flag():
    assert all(r["time_s"] == 0.0 for r in run_bench("tree", [30], range(2), timing=False))
    assert any(r["time_s"] > 0 for r in run_bench("tree", [300], range(2), timing=True))

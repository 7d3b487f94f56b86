from __future__ import annotations

import subprocess
import sys

import pytest

from viscomp.cli import config_from_args, main
from viscomp.io import format_grid, parse_graph, read_drawing
from viscomp.graph import tree_embedding
from viscomp.treedraw import draw_tree


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def _gen(tmp_path, cls, n, seed=1, name="g.txt"):
    path = tmp_path / name
    assert main(["generate", "--class", cls, "--n", str(n), "--seed", str(seed),
                 "--out", str(path)]) == 0
    return path


def test_generate_3tree_edge_count(tmp_path):
    g = parse_graph(_gen(tmp_path, "3tree", 10).read_text())
    assert (g.n, g.m) == (10, 24)


def test_generate_outerplanar_edge_count(tmp_path):
    g = parse_graph(_gen(tmp_path, "outerplanar", 8).read_text())
    assert (g.n, g.m) == (8, 13)


def test_generate_to_stdout(capsys):
    code, out, _ = _run(["generate", "--class", "tree", "--n", "5"], capsys)
    assert code == 0 and out.splitlines()[0] == "5 4"


def test_draw_k4(tmp_path, k4, capsys):
    from viscomp.io import format_graph
    src = tmp_path / "k4.txt"
    src.write_text(format_graph(k4))
    dst = tmp_path / "k4.draw"
    code, _, _ = _run(["draw", "--algo", "3tree", "--input", str(src), "--out", str(dst)], capsys)
    assert code == 0
    lines = dst.read_text().splitlines()
    assert sum(ln.startswith("v ") for ln in lines) == 4
    assert sum(ln.startswith("e ") for ln in lines) == 6


def test_k4_exceeds_the_3tree_segment_bound(tmp_path, k4, capsys):
    # any straight-line K4 needs 6 segments while (8n-17)/3 = 5 at n = 4
    from viscomp.io import format_graph
    src = tmp_path / "k4.txt"
    src.write_text(format_graph(k4))
    code, out, _ = _run(["draw", "--algo", "3tree", "--input", str(src), "--out",
                         str(tmp_path / "k4.draw"), "--verify"], capsys)
    assert code == 1
    assert "segments<= (8n-17)/3: FAIL  (6 vs 5)" in out
    assert "planarity: PASS" in out


def test_verify_path_is_one_segment(tmp_path, capsys):
    p = tmp_path / "p9.txt"
    p.write_text(format_grid(draw_tree(tree_embedding(9, [(i, i + 1) for i in range(8)]))))
    code, out, _ = _run(["verify", "--input", str(p)], capsys)
    assert code == 0
    assert "segments=1" in out
    assert "lower bounds:" in out


def test_tampered_drawing_fails(tmp_path, capsys):
    g = _gen(tmp_path, "tree", 12)
    d = tmp_path / "d.txt"
    assert main(["draw", "--algo", "tree", "--input", str(g), "--out", str(d)]) == 0
    text = d.read_text().splitlines()
    # move every vertex onto one point: edges overlap
    bad = [ln if not ln.startswith("v ") else " ".join(ln.split()[:2] + ["0", "0"]) for ln in text]
    d.write_text("\n".join(bad) + "\n")
    code, out, _ = _run(["verify", "--input", str(d)], capsys)
    assert code == 1
    assert "planarity: FAIL" in out


def test_verify_report_file(tmp_path, capsys):
    g = _gen(tmp_path, "triangulation", 9)
    d = tmp_path / "d.txt"
    rep = tmp_path / "rep.txt"
    assert main(["draw", "--algo", "tri-arcs", "--input", str(g), "--out", str(d)]) == 0
    code, _, _ = _run(["verify", "--input", str(d), "--graph", str(g), "--report", str(rep)], capsys)
    assert code == 0
    text = rep.read_text()
    assert "lower bounds:" in text
    assert "arcs<= (5n-11)/3: PASS" in text
    assert "edges match graph: PASS" in text


@pytest.mark.parametrize("algo,cls", [("3tree", "tree"), ("outerplanar", "triangulation"),
                                      ("tri-arcs", "outerplanar"), ("tree", "outerplanar")])
def test_class_mismatch_is_usage_error(tmp_path, algo, cls, capsys):
    g = _gen(tmp_path, cls, 10)
    code, _, err = _run(["draw", "--algo", algo, "--input", str(g)], capsys)
    assert code == 2
    assert f"algorithm {algo} does not accept" in err


def test_parse_error_is_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 3\nnonsense\n")
    code, _, _ = _run(["draw", "--algo", "tree", "--input", str(bad)], capsys)
    assert code == 2


def test_missing_file_is_usage_error(tmp_path, capsys):
    code, _, _ = _run(["verify", "--input", str(tmp_path / "nope.txt")], capsys)
    assert code == 2


def test_bad_arguments(capsys):
    assert _run(["draw"], capsys)[0] == 2
    assert _run(["frobnicate"], capsys)[0] == 2


def test_low_precision_is_geometry_error(tmp_path, capsys):
    g = _gen(tmp_path, "triangulation", 30)
    code, _, err = _run(["draw", "--algo", "tri-arcs", "--input", str(g), "--precision", "16"], capsys)
    assert code == 3
    assert "geometry breakdown" in err


def test_draw_outputs(tmp_path, capsys):
    args = ["draw", "--algo", "outerplanar", "--n", "12", "--seed", "3",
            "--out", str(tmp_path / "d.txt"), "--trace", str(tmp_path / "t.txt"),
            "--svg", str(tmp_path / "d.svg"), "--figure", str(tmp_path / "d.png"), "--verify"]
    code, out, _ = _run(args, capsys)
    assert code == 0
    assert "segments<= 3n/2: PASS" in out
    assert (tmp_path / "t.txt").read_text().startswith("order")
    assert (tmp_path / "d.svg").read_text().startswith("<?xml")
    assert (tmp_path / "d.png").stat().st_size > 0
    assert read_drawing((tmp_path / "d.txt").read_text()).n == 12


def test_svg_subcommand(tmp_path, capsys):
    g = _gen(tmp_path, "3tree", 10)
    d = tmp_path / "d.txt"
    assert main(["draw", "--algo", "3tree", "--input", str(g), "--out", str(d)]) == 0
    out = tmp_path / "c.svg"
    assert main(["svg", "--input", str(d), "--graph", str(g), "--algo", "3tree", "--out", str(out)]) == 0
    assert "#d62728" in out.read_text()


def test_bench_subcommand(tmp_path, capsys):
    csv = tmp_path / "b.csv"
    code, out, _ = _run(["bench", "--algo", "tree", "--n", "10", "20", "--seeds", "3",
                         "--csv", str(csv), "--figure", str(tmp_path / "b.png")], capsys)
    assert code == 0
    assert "per n:" in out
    assert len(csv.read_text().splitlines()) == 1 + 6


def test_best_outer_face_flag():
    cfg = config_from_args(["draw", "--algo", "3tree", "--n", "8", "--best-outer-face"])
    assert cfg.outer_policy == "best"
    assert config_from_args(["draw", "--algo", "3tree", "--n", "8"]).outer_policy == "auto"


def test_console_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "viscomp.cli", "generate", "--class", "tree",
                          "--n", "4"], capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout.startswith("4 3")

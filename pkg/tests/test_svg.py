from __future__ import annotations

import math
import re
import xml.etree.ElementTree as ET

from viscomp.figures import plot_bench, plot_drawing
from viscomp.pipeline import draw, generate
from viscomp.svg import TREE_COLORS, to_svg

NS = "{http://www.w3.org/2000/svg}"


def _numbers(svg):
    return [float(t) for t in re.findall(r"-?\d+(?:\.\d+)?(?:e[-+]?\d+)?", svg)]


def test_grid_svg_is_valid_xml():
    out = draw("3tree", generate("3tree", 15, 2))
    svg = to_svg(out.drawing, out.colors())
    root = ET.fromstring(svg)
    lines = root.findall(f".//{NS}line")
    circles = root.findall(f".//{NS}circle")
    assert len(lines) == 3 * 15 - 6
    assert len(circles) == 15
    assert not re.search(r"\bnan\b|\binf\b", svg)
    assert all(math.isfinite(x) for x in _numbers(svg))
    used = {ln.get("stroke") for ln in lines}
    assert used <= set(TREE_COLORS.values()) | {"#000000"}
    assert used & set(TREE_COLORS.values())


def test_y_axis_is_flipped():
    out = draw("tree", generate("tree", 5, 0))
    root = ET.fromstring(to_svg(out.drawing, labels=False))
    cy = {float(c.get("cy")) for c in root.findall(f".//{NS}circle")}
    ys = {float(p[1]) for p in out.drawing.points.values()}
    assert cy == {-y + 0.0 for y in ys}


def test_arc_svg_uses_arc_commands():
    out = draw("tri-arcs", generate("triangulation", 10, 1))
    svg = to_svg(out.drawing, out.colors())
    root = ET.fromstring(svg)
    paths = [p.get("d") for p in root.findall(f".//{NS}path")]
    assert len(paths) == 3 * 10 - 6
    arcs = [p for p in paths if " A " in p]
    assert len(arcs) == sum(1 for e in out.drawing.edges.values() if hasattr(e, "radius"))
    assert all(math.isfinite(x) for x in _numbers(svg))


def test_uncoloured_is_black():
    out = draw("tree", generate("tree", 6, 1))
    svg = to_svg(out.drawing)
    assert set(re.findall(r'stroke="(#[0-9a-f]{6})"', svg)) == {"#000000"}


def test_figures_written(tmp_path):
    out = draw("tri-arcs", generate("triangulation", 8, 2))
    plot_drawing(out.drawing, tmp_path / "d.png", out.colors(), "tri")
    grid = draw("tree", generate("tree", 8, 2)).drawing
    plot_drawing(grid, tmp_path / "g.png")
    rows = [{"n": n, "count": n, "bound": 2 * n, "seed": 0} for n in (5, 10)]
    plot_bench(rows, tmp_path / "b.png", "x")
    for name in ("d.png", "g.png", "b.png"):
        assert (tmp_path / name).read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

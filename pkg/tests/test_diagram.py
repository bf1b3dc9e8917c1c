"""Tests for core/diagram.py"""
from pathlib import Path

from bell_rogalski.core.automorphism import WeightPoint
from bell_rogalski.core.datafile import load_datum
from bell_rogalski.core.datum import BellRogalskiDatum
from bell_rogalski.core.diagram import diagram
from bell_rogalski.core.poly import RingSpec

DATA = Path(__file__).resolve().parent.parent / "data"


def _make_rank3():
    ring = RingSpec.polynomial("x", "y", "w")
    return BellRogalskiDatum.from_texts(
        ring,
        [{"x": "x + 1"}, {"y": "y + 1"}, {"w": "w + 1"}],
        None,
        [["1"], ["1"], ["1"]],
        [["x"], ["y"], ["w"]],
        name="cube",
    )


def test_weyl_number_line():
    weyl = load_datum(DATA / "weyl.yaml")
    pic = diagram(weyl, WeightPoint(weyl.ring, (0,)), window=3)
    assert not pic.fallback
    assert pic.svg.startswith('<svg xmlns="http://www.w3.org/2000/svg"')
    assert pic.svg.endswith("</svg>\n")
    assert "\\begin{tikzpicture}" in pic.tikz
    assert pic.svg.count("<circle") == 7
    d = pic.to_dict()
    assert d["break_lines"] == [{"axis": 1, "at": "0.5"}]
    assert d["boxes"] == [[[-3, 0]], [[1, 3]]]
    assert "table" not in d


def test_box_breaks_square_lattice():
    datum = load_datum(DATA / "box_breaks.yaml")
    pic = diagram(datum, WeightPoint(datum.ring, (0, 0)), window=3)
    assert pic.svg.count("<circle") == 49
    assert pic.svg.count("<rect") == 9
    assert len(pic.break_lines) == 4
    assert pic.tikz.count("\\fill[") == 9


def test_output_is_deterministic():
    datum = load_datum(DATA / "box_breaks.yaml")
    pt = WeightPoint(datum.ring, (0, 0))
    first = diagram(datum, pt, window=2)
    second = diagram(datum, pt, window=2)
    assert first.svg == second.svg
    assert first.tikz == second.tikz


def test_higher_rank_falls_back_to_table():
    datum = _make_rank3()
    pic = diagram(datum, WeightPoint(datum.ring, (0, 0, 0)), window=1)
    assert pic.fallback
    assert pic.tikz is None
    assert "axis 3 breaks: -1" in pic.table
    assert "module 8:" in pic.table
    assert pic.to_dict()["table"] == pic.table

import re
import statistics
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from diagramma import corpus
from diagramma.diaglang import WIRE2D, Diagram, Token
from diagramma.errors import IllFormedDiagram
from diagramma.svg import render_svg

GOLDEN = Path(__file__).parent / "golden"
NS = "{http://www.w3.org/2000/svg}"


def parse(svg):
    root = ET.fromstring(svg)
    return root.findall(f"{NS}line"), root.findall(f"{NS}text")


def test_water():
    svg, warnings = render_svg(corpus.diagram("water-wire"))
    lines, texts = parse(svg)
    assert len(lines) == 2 and len(texts) == 3
    assert sorted(t.text for t in texts) == ["H", "H", "O"]
    assert warnings == []


def test_empty_diagram_is_valid_svg():
    svg, _ = render_svg(Diagram(WIRE2D))
    lines, texts = parse(svg)
    assert lines == [] and texts == []


def test_triple_bond_draws_three_strokes():
    d = Diagram(
        WIRE2D,
        {1: Token(1, "vertex:N", (0, 0)), 2: Token(2, "vertex:N", (110, 0)), 3: Token(3, "line:3")},
        frozenset({(1, 3), (2, 3)}),
    )
    lines, _ = parse(render_svg(d)[0])
    assert len(lines) == 3
    ys = sorted(float(l.get("y1")) for l in lines)
    assert ys[1] - ys[0] == pytest.approx(4.0) and ys[2] - ys[1] == pytest.approx(4.0)


def test_double_bonds_draw_two_strokes():
    lines, _ = parse(render_svg(corpus.diagram("carbon_dioxide-wire"))[0])
    assert len(lines) == 4


def test_median_bond_is_40px():
    lines, _ = parse(render_svg(corpus.diagram("ethanol-wire"))[0])
    lengths = [
        ((float(l.get("x2")) - float(l.get("x1"))) ** 2 + (float(l.get("y2")) - float(l.get("y1"))) ** 2) ** 0.5
        for l in lines
    ]
    assert statistics.median(lengths) == pytest.approx(40.0, abs=0.02)


def test_3d_is_projected_with_warning():
    svg, warnings = render_svg(corpus.diagram("water-bs"))
    assert warnings and "project" in warnings[0]
    lines, texts = parse(svg)
    assert len(lines) == 2 and len(texts) == 3


def test_spacefill_draws_derived_connections():
    svg, warnings = render_svg(corpus.diagram("water-sf"))
    lines, texts = parse(svg)
    assert len(lines) == 2 and len(texts) == 3 and warnings


def test_ill_formed_rejected():
    d = Diagram(WIRE2D, {1: Token(1, "vertex:C")})
    with pytest.raises(IllFormedDiagram):
        render_svg(d)


@pytest.mark.parametrize("name", ["water-wire", "acetylene-wire", "caffeine-hdep"])
def test_goldens(name):
    assert render_svg(corpus.diagram(name))[0] == (GOLDEN / f"{name}.svg").read_text()


def test_byte_stable(bundled_diagrams):
    for d in bundled_diagrams.values():
        a, _ = render_svg(d)
        b, _ = render_svg(d)
        assert a == b
        assert not re.search(r"\d\.\d{3,}", a)

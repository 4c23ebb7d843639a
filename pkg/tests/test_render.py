import pytest
from mpmath import mp
from svgpathtools import Line

from src.data_schema.chain import GeodesicChain
from src.data_schema.surface import FluteDescriptor
from src.FluteType.modules.hyp_core import BoundaryPoint
from src.FluteType.modules.limit_polygon import develop_chain
from src.FluteType.modules.render import RenderOptions, geodesic_segment, render_disk, save_svg, to_disk
from src.FluteType.modules.shear_seq import shear_sequence

CENTER = complex(400, 400)


def three_geodesic_chain():
    vertices = (BoundaryPoint(0), BoundaryPoint.infinity(), BoundaryPoint(1), BoundaryPoint(2))
    return GeodesicChain(vertices=vertices, precision_bits=128)


def test_three_geodesics_four_vertices():
    svg = render_disk(three_geodesic_chain()).tostring()
    assert svg.count("<path") == 3
    # boundary circle plus one dot per vertex
    assert svg.count("<circle") == 5
    assert "final gap" in svg


def test_empty_canvas():
    svg = render_disk(None).tostring()
    assert svg.count("<circle") == 1
    assert "<path" not in svg


def test_options_limit_and_hide_markers():
    options = RenderOptions(vertex_markers=False, annotate_gap=False, max_geodesics=2)
    svg = render_disk(three_geodesic_chain(), options).tostring()
    assert svg.count("<path") == 2
    assert svg.count("<circle") == 1
    assert "final gap" not in svg


def test_developed_chain_renders_every_geodesic():
    lengths = [2 * mp.log(n + 1) for n in range(1, 51)]
    chain = develop_chain(shear_sequence(FluteDescriptor.from_lengths(lengths)), 128)
    svg = render_disk(chain).tostring()
    assert svg.count("<path") == len(chain) == 99


def test_to_disk():
    assert to_disk(BoundaryPoint.infinity()) == 1
    assert to_disk(BoundaryPoint(0)) == pytest.approx(-1)
    assert to_disk(BoundaryPoint(1)) == pytest.approx(-1j)


def test_diameter_is_a_line():
    seg = geodesic_segment(complex(1, 0), complex(-1, 0), CENTER, 380)
    assert isinstance(seg, Line)


def test_arc_bows_toward_center():
    p, q = complex(1, 0), complex(0, 1)
    seg = geodesic_segment(p, q, CENTER, 380)
    chord_mid = (seg.start + seg.end) / 2
    assert abs(seg.point(0.5) - CENTER) < abs(chord_mid - CENTER)
    # orthogonal circle through p and q has radius tan(pi/4) in disk units
    assert seg.radius.real == pytest.approx(380)


def test_save_svg(tmp_path):
    path = save_svg(render_disk(three_geodesic_chain()), tmp_path / "out" / "chain.svg")
    assert path.exists()
    assert path.read_text().count("<path") == 3

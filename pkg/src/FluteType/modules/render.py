"""
SVG drawing of a developed chain in the Poincaré disk.

Each geodesic is the arc of the circle orthogonal to the unit circle
through its two endpoints. Arcs are built as svgpathtools segments and
written into an svgwrite document.
"""

import logging
import math
from pathlib import Path
from typing import Optional

import svgwrite
from mpmath import mp
from pydantic import BaseModel, Field
from svgpathtools import Arc, Line, Path as SvgPath

from src.data_schema.chain import GeodesicChain
from src.FluteType.modules.hyp_core import BoundaryPoint, cayley_chord

logger = logging.getLogger(__name__)


class RenderOptions(BaseModel):
    """Drawing options for render_disk."""
    size: int = Field(default=800, ge=100, description="Canvas width and height in px")
    margin: int = Field(default=20, ge=0, description="Padding around the disk in px")
    stroke_width: float = Field(default=1.0, gt=0, description="Geodesic stroke width")
    vertex_markers: bool = Field(default=True, description="Draw a dot at every ideal vertex")
    marker_radius: float = Field(default=2.5, gt=0, description="Vertex dot radius in px")
    annotate_gap: bool = Field(default=True, description="Write the final gap under the disk")
    max_geodesics: Optional[int] = Field(default=None, ge=1, description="Draw only the first n geodesics")


def to_disk(p: BoundaryPoint) -> complex:
    """Cayley transform z -> (z - i) / (z + i) of a boundary point."""
    if p.is_infinite:
        return complex(1, 0)
    z = mp.mpc(p.value, 0)
    w = (z - 1j) / (z + 1j)
    return complex(w)


def geodesic_segment(p: complex, q: complex, center: complex, scale: float):
    """Canvas segment for the geodesic between unit-circle points p and q."""
    start = center + scale * p.conjugate()
    end = center + scale * q.conjugate()
    half = abs(math.atan2((q / p).imag, (q / p).real)) / 2
    if abs(half - math.pi / 2) < 1e-9:
        return Line(start, end)
    r = scale * math.tan(half)
    candidates = [Arc(start, complex(r, r), 0, False, sweep, end) for sweep in (False, True)]
    # the geodesic bows toward the disk center
    return min(candidates, key=lambda seg: abs(seg.point(0.5) - center))


def render_disk(chain: Optional[GeodesicChain], options: Optional[RenderOptions] = None) -> svgwrite.Drawing:
    """
    Draw the unit circle and the chain's geodesics.

    Args:
        chain: Developed chain; None or an empty chain draws the circle only
        options: Drawing options

    Returns:
        svgwrite Drawing; call ``saveas`` or ``tostring``
    """
    options = options or RenderOptions()
    size = options.size
    scale = size / 2 - options.margin
    center = complex(size / 2, size / 2)
    dwg = svgwrite.Drawing(size=(size, size + (30 if options.annotate_gap else 0)))
    dwg.add(dwg.circle(center=(center.real, center.imag), r=scale, fill="none", stroke="black"))

    geodesics = chain.geodesics if chain is not None else ()
    if options.max_geodesics is not None:
        geodesics = geodesics[: options.max_geodesics]

    arcs = dwg.add(dwg.g(id="geodesics", fill="none", stroke="steelblue", stroke_width=options.stroke_width))
    vertices = {}
    for g in geodesics:
        p, q = to_disk(g.initial), to_disk(g.terminal)
        if abs(p - q) == 0:
            # below float resolution
            continue
        seg = geodesic_segment(p, q, center, scale)
        arcs.add(dwg.path(d=SvgPath(seg).d()))
        vertices[g.initial] = p
        vertices[g.terminal] = q

    if options.vertex_markers and vertices:
        dots = dwg.add(dwg.g(id="vertices", fill="crimson"))
        for w in vertices.values():
            pt = center + scale * w.conjugate()
            dots.add(dwg.circle(center=(pt.real, pt.imag), r=options.marker_radius))

    if options.annotate_gap and geodesics:
        last = geodesics[-1]
        gap = cayley_chord(last.initial, last.terminal)
        dwg.add(dwg.text(
            f"geodesics: {len(geodesics)}  final gap: {mp.nstr(gap, 6)}",
            insert=(options.margin, size + 20), font_size=14,
        ))
    logger.debug("rendered %d geodesics, %d vertices", len(geodesics), len(vertices))
    return dwg


def save_svg(dwg: svgwrite.Drawing, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    dwg.saveas(str(path))
    logger.info("drawing written to %s", path)
    return path

"""SVG rendering of walls in the strip s in [0,1], t in [0, 0.6].

Exact data is converted to 6-decimal floats only here, at the render
boundary.  The viewport is 1000x600 with a uniform 1000 px/unit scale, so
circular walls stay circular arcs.
"""

from __future__ import annotations

import math
from typing import List, Tuple
from xml.etree import ElementTree as ET

from .walls import Circle, Empty, Everywhere, VerticalLine, Wall

WIDTH, HEIGHT = 1000, 600
SCALE = 1000  # px per unit in both s and t


def _fmt(v: float) -> str:
    return f"{v:.6f}"


def _x(s: float) -> float:
    return SCALE * s


def _y(t: float) -> float:
    return HEIGHT - SCALE * t


def render_walls_svg(entries: List[Tuple[Wall, str]]) -> str:
    """Render labeled walls; arcs for circles, dashed lines for vertical
    walls; Empty and Everywhere entries are skipped."""
    root = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "width": str(WIDTH),
            "height": str(HEIGHT),
            "viewBox": f"0 0 {WIDTH} {HEIGHT}",
        },
    )
    defs = ET.SubElement(root, "defs")
    clip = ET.SubElement(defs, "clipPath", {"id": "strip"})
    ET.SubElement(clip, "rect", {"x": "0", "y": "0", "width": str(WIDTH), "height": str(HEIGHT)})
    ET.SubElement(
        root,
        "rect",
        {"x": "0", "y": "0", "width": str(WIDTH), "height": str(HEIGHT), "fill": "white", "stroke": "black"},
    )
    group = ET.SubElement(root, "g", {"clip-path": "url(#strip)", "fill": "none", "stroke": "steelblue"})
    for w, label in entries:
        if isinstance(w, (Empty, Everywhere)):
            continue
        if isinstance(w, VerticalLine):
            x = _x(float(w.s0))
            ET.SubElement(
                group,
                "line",
                {
                    "x1": _fmt(x),
                    "y1": "0",
                    "x2": _fmt(x),
                    "y2": str(HEIGHT),
                    "stroke-dasharray": "6 4",
                },
            )
            continue
        assert isinstance(w, Circle)
        center = float(w.center_s)
        radius = math.sqrt(float(w.radius_sq))
        x1, x2 = _x(center - radius), _x(center + radius)
        rp = SCALE * radius
        ET.SubElement(
            group,
            "path",
            {
                "d": (
                    f"M {_fmt(x1)} {_fmt(float(HEIGHT))} "
                    f"A {_fmt(rp)} {_fmt(rp)} 0 0 1 {_fmt(x2)} {_fmt(float(HEIGHT))}"
                ),
            },
        )
        text = ET.SubElement(
            root,
            "text",
            {
                "x": _fmt(_x(center)),
                "y": _fmt(max(12.0, _y(radius) - 4)),
                "font-size": "11",
                "text-anchor": "middle",
                "fill": "black",
            },
        )
        text.text = label
    return ET.tostring(root, encoding="unicode")

"""SVG pictures of planar cube packings."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional

from .errors import UsageError
from .geometry import Box, box_intersect
from .packing import CubeSystem, unfold

GRID_COLOR = "#d0d0d0"
PART_FILL = ("#ffffff", "#000000")
PLAIN_FILL = "#9ecae1"
OUTLINE = "#404040"


def _num(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    text = f"{float(value):.6f}".rstrip("0")
    return text.rstrip(".")


def default_window(sys: CubeSystem) -> Box:
    """Two periods of a torus system, or the bounding box of a finite one."""
    if sys.periods is not None:
        return Box((0,) * sys.dim, tuple(2 * p for p in sys.periods))
    if not sys.origins:
        return Box((0,) * sys.dim, (1,) * sys.dim)
    lower = tuple(min(s[i] for s in sys.origins) for i in range(sys.dim))
    upper = tuple(max(s[i] for s in sys.origins) + 1 for i in range(sys.dim))
    return Box(lower, upper)


def render_svg(
    sys: CubeSystem,
    window: Optional[Box] = None,
    scale: int = 64,
    part_one: Optional[Iterable] = None,
) -> str:
    """Draw the cubes meeting ``window``, clipped to it.

    With ``part_one`` given, cubes whose origin (mod the periods) lies in it
    are filled black and all others white; otherwise every cube gets a
    neutral fill. Unit grid lines are light gray and the ``y`` axis points up.
    """
    if sys.dim != 2:
        raise UsageError("SVG rendering is only defined for d = 2")
    if scale < 1:
        raise UsageError("scale must be a positive integer")
    window = window or default_window(sys)
    colored = part_one is not None
    part_one = {sys.reduce(p) for p in part_one or ()}
    (x0, y0), (x1, y1) = window.lower, window.upper
    width = (x1 - x0) * scale
    height = (y1 - y0) * scale

    def sx(x):
        return _num((x - x0) * scale)

    def sy(y):
        return _num((y1 - y) * scale)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" height="{_num(height)}"'
        f' viewBox="0 0 {_num(width)} {_num(height)}">',
        f'<rect x="0" y="0" width="{_num(width)}" height="{_num(height)}" fill="#ffffff"/>',
    ]
    out.append(f'<g stroke="{OUTLINE}" stroke-width="1">')
    for s in unfold(sys, window):
        clip = box_intersect(Box.unit(s), window)
        if clip is None:
            continue
        if colored:
            fill = PART_FILL[1] if sys.reduce(s) in part_one else PART_FILL[0]
        else:
            fill = PLAIN_FILL
        (a, b), (c, e) = clip.lower, clip.upper
        out.append(
            f'<rect x="{sx(a)}" y="{sy(e)}" width="{_num((c - a) * scale)}"'
            f' height="{_num((e - b) * scale)}" fill="{fill}"/>'
        )
    out.append("</g>")
    out.append(f'<g stroke="{GRID_COLOR}" stroke-width="0.5">')
    for x in range(math.ceil(x0), math.floor(x1) + 1):
        out.append(f'<line x1="{sx(x)}" y1="0" x2="{sx(x)}" y2="{_num(height)}"/>')
    for y in range(math.ceil(y0), math.floor(y1) + 1):
        out.append(f'<line x1="0" y1="{sy(y)}" x2="{_num(width)}" y2="{sy(y)}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_decomposition(sys: CubeSystem, decomposition, window=None, scale: int = 64) -> str:
    """Chessboard picture: ``S0`` cubes white, ``S1`` cubes black."""
    return render_svg(sys, window, scale, part_one=decomposition.S1)

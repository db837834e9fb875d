"""PNG scatter of a persistence diagram using Pillow."""
from __future__ import annotations

import io
import logging
from fractions import Fraction
from typing import Sequence, Tuple

from PIL import Image, ImageDraw, ImageFont

logger = logging.getLogger(__name__)

_CANVAS_SIZE = (600, 600)
_BG_COLOR = (255, 255, 255)
_TEXT_COLOR = (0, 0, 0)
_AXIS_COLOR = (120, 120, 120)
_POINT_COLORS = {
    "finite": (52, 152, 219),  # blue
    "ray": (231, 76, 60),      # red
    "diagonal": (46, 204, 113),  # green
}
_MARGIN = 60

PlotPoint = Tuple[Fraction, Fraction | None, int]  # (birth, death or None for rays, dim)


def _load_font(size: int) -> ImageFont.FreeTypeFont | ImageFont.ImageFont:
    try:
        return ImageFont.truetype("arial.ttf", size)
    except OSError:
        logger.debug("arial.ttf not found, using the default font")
        return ImageFont.load_default()


def _scale(lo: Fraction, hi: Fraction) -> tuple[float, float]:
    span = float(hi - lo) or 1.0
    inner = _CANVAS_SIZE[0] - 2 * _MARGIN
    return float(lo), inner / span


def render_diagram_png(points: Sequence[PlotPoint], grades: Sequence[Fraction], title: str) -> bytes:
    """Births on x, deaths on y; rays sit on a dashed line above the top grade."""

    img = Image.new("RGB", _CANVAS_SIZE, _BG_COLOR)
    draw = ImageDraw.Draw(img)
    title_font = _load_font(20)
    body_font = _load_font(14)
    draw.text((_MARGIN, 15), title, font=title_font, fill=_TEXT_COLOR)

    lo = min(grades, default=Fraction(0))
    hi = max(grades, default=Fraction(1))
    top = hi + (hi - lo) / 8 if hi > lo else hi + 1
    origin, unit = _scale(lo, top)
    bottom = _CANVAS_SIZE[1] - _MARGIN

    def x_of(value: Fraction) -> float:
        return _MARGIN + (float(value) - origin) * unit

    def y_of(value: Fraction) -> float:
        return bottom - (float(value) - origin) * unit

    # axes and diagonal
    draw.line([(x_of(lo), bottom), (x_of(top), bottom)], fill=_AXIS_COLOR)
    draw.line([(_MARGIN, y_of(lo)), (_MARGIN, y_of(top))], fill=_AXIS_COLOR)
    draw.line([(x_of(lo), y_of(lo)), (x_of(top), y_of(top))], fill=_AXIS_COLOR)
    for x in range(int(x_of(lo)), int(x_of(top)), 8):
        draw.line([(x, y_of(top)), (x + 4, y_of(top))], fill=_AXIS_COLOR)
    draw.text((x_of(top) - 20, y_of(top) - 18), "inf", font=body_font, fill=_TEXT_COLOR)
    for grade in grades:
        draw.text((x_of(grade) - 4, bottom + 6), str(grade), font=body_font, fill=_TEXT_COLOR)

    for birth, death, dim in points:
        kind = "ray" if death is None else ("diagonal" if death == birth else "finite")
        cx, cy = x_of(birth), y_of(top if death is None else death)
        radius = 4 + 2 * dim
        draw.ellipse([cx - radius, cy - radius, cx + radius, cy + radius], fill=_POINT_COLORS[kind])
        if dim > 1:
            draw.text((cx + radius + 2, cy - radius), str(dim), font=body_font, fill=_TEXT_COLOR)

    buffer = io.BytesIO()
    img.save(buffer, format="PNG")
    logger.debug("Rendered %d points", len(points))
    return buffer.getvalue()

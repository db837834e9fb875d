from fractions import Fraction

import pytest
from PIL import ImageFont

from gpd.reports.diagram_plot import render_diagram_png

POINTS = [(Fraction(0), Fraction(2), 1), (Fraction(1), None, 1), (Fraction(2), Fraction(2), 2)]
GRADES = [Fraction(0), Fraction(1), Fraction(2)]


def test_missing_font_falls_back_to_default(monkeypatch):
    def missing(*args, **kwargs):
        raise OSError("cannot open resource")

    monkeypatch.setattr(ImageFont, "truetype", missing)
    png = render_diagram_png(POINTS, GRADES, "degree 0")
    assert png[:8] == b"\x89PNG\r\n\x1a\n"


def test_other_font_errors_propagate(monkeypatch):
    def broken(*args, **kwargs):
        raise ValueError("bad size")

    monkeypatch.setattr(ImageFont, "truetype", broken)
    with pytest.raises(ValueError):
        render_diagram_png(POINTS, GRADES, "degree 0")

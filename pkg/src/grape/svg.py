"""Deterministic SVG rendering of a persistence diagram."""

from __future__ import annotations

import math
from html import escape

from .persistence import PersistenceDiagram

__all__ = ["render_svg"]


def _f(x: float) -> str:
    return f"{x:.2f}"


def render_svg(
    d: PersistenceDiagram,
    size: int = 400,
    radius: float = 4.0,
    title: str | None = None,
) -> str:
    """Diagram as SVG text.

    Proper cornerpoints are disks whose area grows with multiplicity
    (multiplicities above one are written next to the disk); cornerpoints
    at infinity are upward triangles on a band above the plot.
    """
    margin, band = 40, 30
    plot = size - 2 * margin
    coords = [c.birth for c in d.cornerpoints] + [c.death for c in d.proper()]
    lo, hi = (min(coords), max(coords)) if coords else (0.0, 1.0)
    if hi == lo:
        lo, hi = lo - 0.5, hi + 0.5
    pad = (hi - lo) * 0.05
    lo, hi = lo - pad, hi + pad
    top = margin + band
    height = plot - band

    def sx(x: float) -> float:
        return margin + (x - lo) / (hi - lo) * plot

    def sy(y: float) -> float:
        return top + height - (y - lo) / (hi - lo) * height

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    if title is None:
        title = " ".join(x for x in (d.feature, d.mode) if x)
    if title:
        out.append(
            f'<text x="{size / 2:.2f}" y="20.00" text-anchor="middle" font-size="14">{escape(title)}</text>'
        )
    out.append(
        f'<line class="diagonal" x1="{_f(sx(lo))}" y1="{_f(sy(lo))}" '
        f'x2="{_f(sx(hi))}" y2="{_f(sy(hi))}" stroke="black" stroke-width="1"/>'
    )
    out.append(
        f'<line class="infinity" x1="{_f(sx(lo))}" y1="{_f(margin + band / 2)}" '
        f'x2="{_f(sx(hi))}" y2="{_f(margin + band / 2)}" stroke="#999" stroke-dasharray="4 3"/>'
    )
    for c in d.cornerpoints:
        x = sx(c.birth)
        if c.at_infinity:
            y = margin + band / 2
            s = radius * math.sqrt(c.multiplicity) + 2
            out.append(
                f'<polygon class="cornerpoint-inf" points="{_f(x)},{_f(y - s)} {_f(x - s)},{_f(y + s)} '
                f'{_f(x + s)},{_f(y + s)}" fill="#c0392b"/>'
            )
        else:
            y = sy(c.death)
            s = radius * math.sqrt(c.multiplicity)
            out.append(
                f'<circle class="cornerpoint" cx="{_f(x)}" cy="{_f(y)}" r="{_f(s)}" fill="#2c3e50"/>'
            )
        if c.multiplicity > 1:
            out.append(
                f'<text class="multiplicity" x="{_f(x + s + 2)}" y="{_f(y - s)}" font-size="10">'
                f"{c.multiplicity}</text>"
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"

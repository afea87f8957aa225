"""Standalone SVG radar plots, built by hand so the geometry is exact.

Axis ``i`` of ``n`` sits at angle ``2*pi*i/n`` measured clockwise from
vertical; a value ``v`` on it is drawn at ``center + (v/axis_max) * R *
(sin theta, -cos theta)`` in SVG coordinates (y grows downward). For a
ScoreSet the axis order is ICS, HRCS, LBCS.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Optional, Sequence, Union
from xml.sax.saxutils import escape, quoteattr

from ..model import ScoreSet

GRID_LEVELS = (0.25, 0.5, 0.75, 1.0)
DEFAULT_SIZE = 320.0


def radar_geometry(n: int, size: float = DEFAULT_SIZE) -> tuple[float, float, float]:
    """(cx, cy, outer radius) for an ``n``-axis plot of the given size."""
    return size / 2.0, size / 2.0, size * 0.34


def vertex(cx: float, cy: float, radius: float, i: int, n: int) -> tuple[float, float]:
    theta = 2.0 * math.pi * i / n
    return cx + radius * math.sin(theta), cy - radius * math.cos(theta)


def _pts(points) -> str:
    return " ".join(f"{x:.6f},{y:.6f}" for x, y in points)


def _values(scores) -> tuple[list[float], list[str]]:
    if isinstance(scores, ScoreSet):
        pairs = [(v, name) for v, name in ((scores.ics, "ICS"), (scores.hrcs, "HRCS"), (scores.lbcs, "LBCS"))
                 if v is not None]
        return [p[0] for p in pairs], [p[1] for p in pairs]
    vals = [float(v) for v in scores]
    return vals, [f"axis {i + 1}" for i in range(len(vals))]


def write_radar_svg(scores: Union[ScoreSet, Sequence[float]], labels: Optional[Sequence[str]] = None,
                    output=None, axis_max: float = 1.0, clamp: bool = False,
                    title: str = "congruence profile", size: float = DEFAULT_SIZE) -> str:
    """Render the plot and return the SVG text, also writing it to ``output`` if given.

    Raises ValueError for fewer than 3 or more than 8 axes, a label count
    that does not match, or a value outside ``[0, axis_max]`` unless
    ``clamp`` is set.
    """
    values, default_labels = _values(scores)
    labels = list(labels) if labels is not None else default_labels
    n = len(values)
    if not 3 <= n <= 8:
        raise ValueError(f"radar plots need 3 to 8 axes, got {n}")
    if len(labels) != n:
        raise ValueError(f"{len(labels)} labels for {n} axes")
    if not axis_max > 0:
        raise ValueError("axis_max must be positive")
    for label, v in zip(labels, values):
        if not math.isfinite(v):
            raise ValueError(f"{label}: value {v} is not finite")
        if not 0.0 <= v <= axis_max and not clamp:
            raise ValueError(f"{label}: value {v} outside [0, {axis_max}]; pass clamp=True to pin it")
    values = [min(axis_max, max(0.0, v)) for v in values]

    cx, cy, R = radar_geometry(n, size)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:g}" height="{size:g}" '
        f'viewBox="0 0 {size:g} {size:g}">',
        f"<title>{escape(title)}</title>",
        f'<rect width="{size:g}" height="{size:g}" fill="white"/>',
        '<g class="grid" fill="none" stroke="#bbbbbb" stroke-width="1">',
    ]
    for level in GRID_LEVELS:
        ring = [vertex(cx, cy, R * level, i, n) for i in range(n)]
        out.append(f'<polygon class="gridline" data-level="{level:g}" points="{_pts(ring)}"/>')
    for i in range(n):
        x, y = vertex(cx, cy, R, i, n)
        out.append(f'<line class="axis" x1="{cx:.6f}" y1="{cy:.6f}" x2="{x:.6f}" y2="{y:.6f}"/>')
    out.append("</g>")
    data = [vertex(cx, cy, R * v / axis_max, i, n) for i, v in enumerate(values)]
    out.append(f'<polygon class="data" points="{_pts(data)}" fill="#3b6fb6" fill-opacity="0.35" '
               f'stroke="#3b6fb6" stroke-width="2"/>')
    out.append('<g class="labels" font-family="sans-serif" font-size="13" fill="#222222">')
    for i, (label, v) in enumerate(zip(labels, values)):
        x, y = vertex(cx, cy, R + 22, i, n)
        anchor = "middle" if abs(x - cx) < 1e-9 else ("start" if x > cx else "end")
        out.append(f'<text class="axis-label" x="{x:.3f}" y="{y + 4:.3f}" text-anchor="{anchor}" '
                   f'data-value={quoteattr(repr(v))}>{escape(label)}</text>')
    out.append("</g>")
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if output is not None:
        Path(output).write_text(text, encoding="utf-8")
    return text

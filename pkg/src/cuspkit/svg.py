"""Plain SVG 1.1 output: one stroked polyline through sample points."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RenderSpec:
    width: int = 640
    height: int = 480
    stroke_width: float = 1.5
    margin: float = 0.05  # padding as a fraction of the data extent
    axes: bool = False
    viewport: tuple[float, float, float, float] | None = None  # xmin, xmax, ymin, ymax


def _viewport(points: np.ndarray, spec: RenderSpec) -> tuple[float, float, float, float]:
    if spec.viewport is not None:
        xmin, xmax, ymin, ymax = spec.viewport
        if xmin >= xmax or ymin >= ymax:
            raise ValueError("viewport must satisfy xmin < xmax and ymin < ymax")
        return xmin, xmax, ymin, ymax
    xmin, ymin = points.min(axis=0)
    xmax, ymax = points.max(axis=0)
    span = max(xmax - xmin, ymax - ymin, 1e-30)
    pad = spec.margin * span
    return xmin - pad, xmax + pad, ymin - pad, ymax + pad


def render_svg(samples, spec: RenderSpec | None = None) -> str:
    """Render (x, y) samples as a standalone SVG document string.

    The viewport auto-fits the data with a margin unless given explicitly;
    the y-axis points up (mathematical orientation).
    """
    spec = spec or RenderSpec()
    points = np.atleast_2d(np.asarray(samples, dtype=float))
    if points.shape[0] < 2 or points.shape[1] != 2:
        raise ValueError("render_svg needs at least two (x, y) samples")
    xmin, xmax, ymin, ymax = _viewport(points, spec)
    sx = spec.width / (xmax - xmin)
    sy = spec.height / (ymax - ymin)

    def to_px(p):
        return float((p[0] - xmin) * sx), float((ymax - p[1]) * sy)

    coords = " ".join(f"{x!r},{y!r}" for x, y in (to_px(p) for p in points))
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
    ]
    if spec.axes:
        x0, y0 = to_px((0.0, 0.0))
        if 0.0 <= y0 <= spec.height:
            parts.append(
                f'<line x1="0" y1="{y0!r}" x2="{spec.width}" y2="{y0!r}" '
                'stroke="#bbbbbb" stroke-width="1"/>'
            )
        if 0.0 <= x0 <= spec.width:
            parts.append(
                f'<line x1="{x0!r}" y1="0" x2="{x0!r}" y2="{spec.height}" '
                'stroke="#bbbbbb" stroke-width="1"/>'
            )
    parts.append(
        f'<polyline fill="none" stroke="#000000" stroke-width="{spec.stroke_width!r}" '
        f'points="{coords}"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

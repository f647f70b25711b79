"""SVG glyph plots: one hemisphere in orthographic projection seen from its pole.

The northern hemisphere is viewed from +z, the southern one from -z, so in both
pictures the pole sits at the centre and the winding of the glyph pattern
around it is the Poincare index.
"""
from __future__ import annotations

import numpy as np

from .fields import GridField
from .geometry import frame

__all__ = ["project_field", "glyph_samples", "render_svg", "write_svg"]

SIZE = 600
MARGIN = 20


def _hemisphere_sign(hemisphere):
    h = hemisphere.lower()
    if h not in ("north", "south"):
        raise ValueError(f"hemisphere must be 'north' or 'south', got {hemisphere!r}")
    return 1.0 if h == "north" else -1.0


def project_field(field, hemisphere, x, y):
    """Unit directions of the projected field at projected positions ``(x, y)``.

    Positions must satisfy ``0 < x^2 + y^2 < 1``. Returns ``(dx, dy)`` in the
    same picture coordinates (NaN where the projected vector degenerates).
    """
    sign = _hemisphere_sign(hemisphere)
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    r = np.hypot(x, y)
    alpha = sign * np.arccos(np.clip(r, 0.0, 1.0))
    # looking from -z mirrors the y axis
    beta = np.arctan2(sign * y, x)
    theta = field.theta(alpha, beta)
    _, e1, e2 = frame(alpha, beta)
    v = np.cos(theta)[..., None] * e1 + np.sin(theta)[..., None] * e2
    dx, dy = v[..., 0], sign * v[..., 1]
    norm = np.hypot(dx, dy)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(norm > 1e-9, dx / norm, np.nan), np.where(norm > 1e-9, dy / norm, np.nan)


def glyph_samples(field, hemisphere, density=21):
    """Regular ``density x density`` lattice clipped to the disk; the pole itself is skipped."""
    _hemisphere_sign(hemisphere)
    ticks = np.linspace(-1.0, 1.0, density + 2)[1:-1]
    x, y = np.meshgrid(ticks, ticks)
    x, y = x.ravel(), y.ravel()
    r = np.hypot(x, y)
    spacing = ticks[1] - ticks[0]
    keep = (r < 1.0 - 0.25 * spacing) & (r > 0.25 * spacing)
    if isinstance(field, GridField):
        lats = field.latitudes
        alpha = np.arccos(np.clip(r, 0, 1))
        keep &= alpha <= lats[-1]
    x, y = x[keep], y[keep]
    dx, dy = project_field(field, hemisphere, x, y)
    ok = np.isfinite(dx)
    return x[ok], y[ok], dx[ok], dy[ok], spacing


def render_svg(field, hemisphere="north", density=21, title=None):
    x, y, dx, dy, spacing = glyph_samples(field, hemisphere, density)
    scale = 0.5 * (SIZE - 2 * MARGIN)
    cx = cy = 0.5 * SIZE
    half = 0.4 * spacing * scale
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" "
        "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"black\"/></marker></defs>",
        f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{scale:.2f}" fill="none" stroke="#888"/>',
        f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="3" fill="red"/>',
    ]
    if title:
        lines.append(f'<title>{title}</title>')
    for px, py, ux, uy in zip(x, y, dx, dy):
        sx, sy = cx + px * scale, cy - py * scale
        lines.append(
            f'<line x1="{sx - half * ux:.2f}" y1="{sy + half * uy:.2f}" '
            f'x2="{sx + half * ux:.2f}" y2="{sy - half * uy:.2f}" '
            'stroke="black" stroke-width="1.2" marker-end="url(#head)"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(path, field, hemisphere="north", density=21, title=None):
    svg = render_svg(field, hemisphere, density, title)
    with open(path, "w") as fh:
        fh.write(svg)
    return svg

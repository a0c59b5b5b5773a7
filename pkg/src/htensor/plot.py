"""Rasterised SVG pictures of inclusion regions."""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .inclusion import sample_grid

CANVAS = 800
COLORS = {"ger": "#4477aa", "llk": "#ee6677", "ll": "#228833"}


def _runs(row: np.ndarray):
    """(start, length) of consecutive True cells."""
    padded = np.concatenate([[False], row, [False]]).astype(int)
    edges = np.flatnonzero(np.diff(padded))
    return zip(edges[::2], edges[1::2] - edges[::2])


def regions_svg(regions: dict, grid: int = 200, eigenvalues=(), box=None) -> str:
    """One semi-transparent layer per region, filled where membership holds.

    ``regions`` maps a set name to a region; the grid covers ``box`` (default:
    the first region's bounding box) widened by 10%.
    """
    names = list(regions)
    if box is None:
        box = regions[names[0]].bounding_box()
    Z = sample_grid(box, grid)
    x0, x1 = Z.real[0, 0], Z.real[0, -1]
    y0, y1 = Z.imag[0, 0], Z.imag[-1, 0]
    cell = CANVAS / grid

    def to_px(z: complex) -> tuple[float, float]:
        px = (z.real - x0) / (x1 - x0) * CANVAS if x1 > x0 else CANVAS / 2
        py = CANVAS - ((z.imag - y0) / (y1 - y0) * CANVAS if y1 > y0 else CANVAS / 2)
        return px, py

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" '
             f'viewBox="0 0 {CANVAS} {CANVAS}">',
             f'<rect width="{CANVAS}" height="{CANVAS}" fill="white"/>']
    for name in names:
        mask = regions[name].contains(Z)
        color = COLORS.get(name, "#888888")
        parts.append(f'<g id="{escape(name)}" fill="{color}" fill-opacity="0.35">')
        for row_index in range(grid):
            y = CANVAS - (row_index + 1) * cell
            for start, length in _runs(mask[row_index]):
                parts.append(f'<rect x="{start * cell:.2f}" y="{y:.2f}" '
                             f'width="{length * cell:.2f}" height="{cell:.2f}"/>')
        parts.append("</g>")
    ax, ay = to_px(complex(0, 0))
    if 0 <= ay <= CANVAS:
        parts.append(f'<line x1="0" y1="{ay:.2f}" x2="{CANVAS}" y2="{ay:.2f}" stroke="black" stroke-width="0.5"/>')
    if 0 <= ax <= CANVAS:
        parts.append(f'<line x1="{ax:.2f}" y1="0" x2="{ax:.2f}" y2="{CANVAS}" stroke="black" stroke-width="0.5"/>')
    for lam in eigenvalues:
        px, py = to_px(complex(lam))
        parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="4" fill="black"/>')
    for k, name in enumerate(names):
        y = 20 + 20 * k
        parts.append(f'<rect x="10" y="{y - 10}" width="12" height="12" '
                     f'fill="{COLORS.get(name, "#888888")}" fill-opacity="0.6"/>')
        parts.append(f'<text x="28" y="{y}" font-size="14" font-family="sans-serif">{escape(name)}</text>')
    parts.append(f'<text x="10" y="{CANVAS - 10}" font-size="12" font-family="sans-serif">'
                 f'Re [{x0:.3g}, {x1:.3g}]  Im [{y0:.3g}, {y1:.3g}]</text>')
    parts.append("</svg>")
    return "\n".join(parts)

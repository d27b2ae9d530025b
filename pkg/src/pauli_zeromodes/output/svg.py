"""Plain SVG 1.1 output: marching-squares contours of gridded fields and cell plots."""
import math
from collections.abc import Sequence
from xml.sax.saxutils import escape

import numpy as np

from pauli_zeromodes.lattice.cells import CellSet

LEVEL_LADDER = (-1000.0, -300.0, -100.0, -30.0, -10.0, -3.0, -1.0, 0.0,
                1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0)  # fmt: skip
CANVAS = 600

Segment = tuple[complex, complex]

# corner bits: 1 = (i, j), 2 = (i+1, j), 4 = (i+1, j+1), 8 = (i, j+1); edges 0..3 =
# bottom, right, top, left of the cell
_CASES: dict[int, tuple[tuple[int, int], ...]] = {
    1: ((3, 0),), 2: ((0, 1),), 3: ((3, 1),), 4: ((1, 2),), 6: ((0, 2),),
    7: ((3, 2),), 8: ((2, 3),), 9: ((0, 2),), 11: ((1, 2),), 12: ((1, 3),),
    13: ((0, 1),), 14: ((3, 0),),
}  # fmt: skip


def _edge_point(x, y, v, i, j, edge, level) -> complex:
    corners = {
        0: ((i, j), (i + 1, j)),
        1: ((i + 1, j), (i + 1, j + 1)),
        2: ((i + 1, j + 1), (i, j + 1)),
        3: ((i, j + 1), (i, j)),
    }[edge]
    (a, b), (c, d) = corners
    va, vb = v[a, b], v[c, d]
    t = 0.5 if va == vb else (level - va) / (vb - va)
    return complex(x[a] + t * (x[c] - x[a]), y[b] + t * (y[d] - y[b]))


def marching_squares(
    x: np.ndarray, y: np.ndarray, values: np.ndarray, level: float
) -> list[Segment]:
    """Segments of the level set on a grid; values[i, j] sits at (x[i], y[j]).

    Cells touching a non-finite value are skipped; saddles are resolved by the
    cell-centre average.
    """
    v = np.asarray(values, dtype=float)
    segments: list[Segment] = []
    above = (v > level).astype(np.int8)
    codes = above[:-1, :-1] | above[1:, :-1] << 1 | above[1:, 1:] << 2 | above[:-1, 1:] << 3
    finite = np.isfinite(v)
    finite = finite[:-1, :-1] & finite[1:, :-1] & finite[1:, 1:] & finite[:-1, 1:]
    active = finite & (codes != 0) & (codes != 15)
    for i, j in zip(*np.nonzero(active)):
        code = int(codes[i, j])
        quad = (v[i, j], v[i + 1, j], v[i + 1, j + 1], v[i, j + 1])
        if code in (5, 10):
            centre_above = sum(quad) / 4.0 > level
            if (code == 5) == centre_above:
                pairs = ((0, 1), (2, 3))
            else:
                pairs = ((3, 0), (1, 2))
        else:
            pairs = _CASES[code]
        for e1, e2 in pairs:
            segments.append(
                (
                    _edge_point(x, y, v, i, j, e1, level),
                    _edge_point(x, y, v, i, j, e2, level),
                )
            )
    return segments


class _Viewport:
    def __init__(self, x_min: float, x_max: float, y_min: float, y_max: float) -> None:
        self.x_min, self.y_max = x_min, y_max
        self.scale = CANVAS / max(x_max - x_min, y_max - y_min)

    def __call__(self, p: complex) -> tuple[float, float]:
        return (p.real - self.x_min) * self.scale, (self.y_max - p.imag) * self.scale


def _header(title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" '
        f'height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">',
        f"<title>{escape(title)}</title>",
        f'<rect width="{CANVAS}" height="{CANVAS}" fill="white"/>',
    ]


def contour_svg(
    x: np.ndarray,
    y: np.ndarray,
    values: np.ndarray,
    *,
    levels: Sequence[float] = LEVEL_LADDER,
    rays: Sequence[float] = (),
    title: str = "contours",
) -> str:
    """Contour plot; ``rays`` are drawn from the origin as zero-growth directions."""
    view = _Viewport(float(x[0]), float(x[-1]), float(y[0]), float(y[-1]))
    out = _header(title)
    for level in levels:
        segs = marching_squares(x, y, values, level)
        if not segs:
            continue
        colour = "#b2182b" if level > 0 else "#2166ac" if level < 0 else "#000000"
        parts = []
        for a, b in segs:
            (x1, y1), (x2, y2) = view(a), view(b)
            parts.append(f"M{x1:.2f},{y1:.2f}L{x2:.2f},{y2:.2f}")
        out.append(
            f'<path class="level" data-level="{level:g}" fill="none" stroke="{colour}" '
            f'stroke-width="0.8" d="{"".join(parts)}"/>'
        )
    reach = max(abs(float(x[0])), abs(float(x[-1])), abs(float(y[0])), abs(float(y[-1])))
    for psi in rays:
        (x1, y1) = view(0j)
        (x2, y2) = view(reach * complex(math.cos(psi), math.sin(psi)))
        out.append(
            f'<line class="zero-growth" data-angle="{psi:.6f}" x1="{x1:.2f}" y1="{y1:.2f}" '
            f'x2="{x2:.2f}" y2="{y2:.2f}" stroke="#4d9221" stroke-dasharray="4,3"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cells_svg(cs: CellSet, *, title: str = "cells") -> str:
    """Cell polygons with their marked points."""
    xs = [v.real for c in cs.cells for v in c.vertices] or [0.0, 1.0]
    ys = [v.imag for c in cs.cells for v in c.vertices] or [0.0, 1.0]
    view = _Viewport(min(xs), max(xs), min(ys), max(ys))
    out = _header(title)
    radius = max(0.5, 0.08 * cs.sigma * view.scale)
    for cell in cs.cells:
        pts = " ".join("{:.2f},{:.2f}".format(*view(v)) for v in cell.vertices)
        out.append(
            f'<polygon class="cell" points="{pts}" fill="none" stroke="#555555" '
            'stroke-width="0.3"/>'
        )
        cx, cy = view(cell.marked_point)
        out.append(f'<circle class="marked" cx="{cx:.2f}" cy="{cy:.2f}" r="{radius:.2f}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

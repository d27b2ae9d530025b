"""Partition of the narrow sector |arg z| < eps into cells of area sigma^2.

The sector (clipped on the left by Re z = 1) is cut into horizontal strips by
the lines Im z = (k + 1/2) sigma, so the central strip straddles the real axis
and strip -k is the mirror image of strip k.  Each strip is swept from the left
and cut by vertical lines at abscissae chosen in closed form so every cell has
area exactly sigma^2; a cell is kept only while all its vertices lie in
|z| <= r_cut.  Marked points a_Q are exact polygon centroids.
"""
import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.spatial import cKDTree

logger = logging.getLogger(__name__)

_DEDUP_TOL = 1e-14


class CellGenerationError(ValueError):
    """Raised for partition parameters outside the supported range."""


@dataclass(frozen=True)
class Cell:
    vertices: tuple[complex, ...]
    area: float
    marked_point: complex
    strip_index: int

    @property
    def x_range(self) -> tuple[float, float]:
        xs = [v.real for v in self.vertices]
        return min(xs), max(xs)

    @property
    def diameter(self) -> float:
        return max(abs(u - v) for u in self.vertices for v in self.vertices)

    def to_dict(self) -> dict:
        return {
            "poly": [[v.real, v.imag] for v in self.vertices],
            "aq": [self.marked_point.real, self.marked_point.imag],
            "strip": self.strip_index,
        }


@dataclass(frozen=True)
class CellSet:
    """Cells covering Theta_0 up to r_cut; the mirror set -a_Q is implicit."""

    eps: float
    sigma: float
    r_cut: float
    cells: tuple[Cell, ...]

    def __len__(self) -> int:
        return len(self.cells)

    @cached_property
    def marked_points(self) -> np.ndarray:
        return np.array([c.marked_point for c in self.cells], dtype=complex)

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "sigma": self.sigma,
            "r_cut": self.r_cut,
            "cells": [c.to_dict() for c in self.cells],
        }


def polygon_area_centroid(vertices: tuple[complex, ...]) -> tuple[float, complex]:
    """Shoelace area and centroid, accumulated relative to the first vertex."""
    origin = vertices[0]
    rel = [v - origin for v in vertices]
    n = len(rel)
    twice_area = 0.0
    mx = 0.0
    my = 0.0
    for i in range(n):
        p = rel[i]
        q = rel[(i + 1) % n]
        cross = p.real * q.imag - q.real * p.imag
        twice_area += cross
        mx += (p.real + q.real) * cross
        my += (p.imag + q.imag) * cross
    area = twice_area / 2.0
    if area == 0.0:
        return 0.0, origin
    return area, origin + complex(mx, my) / (3.0 * twice_area)


# ---------------------------------------------------------------------------
# Strip geometry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Strip:
    """Cross-section of strip k with the sector: lower(x) <= y <= upper(x)."""

    lo: float
    hi: float
    t: float

    def lower(self, x: float) -> float:
        return max(self.lo, -x * self.t)

    def upper(self, x: float) -> float:
        return min(self.hi, x * self.t)

    def height(self, x: float) -> float:
        return self.upper(x) - self.lower(x)

    def slope(self, x: float) -> float:
        """dh/dx on the linear piece containing x (x away from kinks)."""
        up = self.t if x * self.t < self.hi else 0.0
        down = self.t if -x * self.t > self.lo else 0.0
        return up + down

    @property
    def lower_kinks(self) -> tuple[float, ...]:
        return (-self.lo / self.t,) if self.lo < 0.0 else ()

    @property
    def upper_kinks(self) -> tuple[float, ...]:
        return (self.hi / self.t,)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return tuple(sorted(set(self.lower_kinks + self.upper_kinks)))

    def x_start(self) -> float:
        return max(1.0, self.lo / self.t) if self.lo > 0.0 else 1.0

    def integral(self, a: float, b: float) -> float:
        """Exact integral of the piecewise-linear height over [a, b] (trapezoids)."""
        xs = [a] + [x for x in self.breakpoints if a < x < b] + [b]
        return math.fsum(
            0.5 * (self.height(x0) + self.height(x1)) * (x1 - x0) for x0, x1 in zip(xs, xs[1:])
        )

    def next_cut(self, x_a: float, need: float) -> float:
        """Abscissa x_b with integral of the height over [x_a, x_b] equal to ``need``."""
        x_p = x_a
        for x_q in [x for x in self.breakpoints if x > x_a] + [math.inf]:
            h_p = self.height(x_p)
            if math.isinf(x_q):
                sl = self.slope(2.0 * x_p + 1.0)
                seg = math.inf
            else:
                sl = self.slope(0.5 * (x_p + x_q))
                width = x_q - x_p
                seg = h_p * width + 0.5 * sl * width * width
            if seg >= need:
                # closed-form root of h_p d + sl d^2 / 2 = need
                return x_p + 2.0 * need / (h_p + math.sqrt(h_p * h_p + 2.0 * sl * need))
            need -= seg
            x_p = x_q
        raise AssertionError("unreachable: the last piece is unbounded")

    def cell_vertices(self, x_a: float, x_b: float) -> tuple[complex, ...]:
        low_x = [x_a] + [x for x in self.lower_kinks if x_a < x < x_b] + [x_b]
        up_x = [x_a] + [x for x in self.upper_kinks if x_a < x < x_b] + [x_b]
        ring = [complex(x, self.lower(x)) for x in low_x]
        ring += [complex(x, self.upper(x)) for x in reversed(up_x)]
        out: list[complex] = []
        for v in ring:
            if not out or abs(v - out[-1]) > _DEDUP_TOL * max(1.0, abs(v)):
                out.append(v)
        if len(out) > 1 and abs(out[0] - out[-1]) <= _DEDUP_TOL * max(1.0, abs(out[0])):
            out.pop()
        return tuple(out)


def _strip(k: int, sigma: float, t: float) -> _Strip:
    return _Strip(lo=(k - 0.5) * sigma, hi=(k + 0.5) * sigma, t=t)


def _sweep_strip(strip: _Strip, k: int, sigma: float, r_cut: float) -> list[Cell]:
    need = sigma * sigma
    cells: list[Cell] = []
    x_a = strip.x_start()
    while True:
        x_b = strip.next_cut(x_a, need)
        verts = strip.cell_vertices(x_a, x_b)
        if any(abs(v) > r_cut for v in verts):
            break
        area, centroid = polygon_area_centroid(verts)
        cells.append(Cell(vertices=verts, area=area, marked_point=centroid, strip_index=k))
        x_a = x_b
    return cells


def _mirror(cell: Cell) -> Cell:
    return Cell(
        vertices=tuple(v.conjugate() for v in reversed(cell.vertices)),
        area=cell.area,
        marked_point=cell.marked_point.conjugate(),
        strip_index=-cell.strip_index,
    )


def generate_cells(eps: float, sigma: float, r_cut: float) -> CellSet:
    """Partition {|arg z| < eps, Re z >= 1, |z| <= r_cut} into area-sigma^2 cells."""
    if not (0.0 < eps < math.pi / 8.0):
        raise CellGenerationError(f"eps must lie in (0, pi/8), got {eps}")
    if not sigma > 0.0:
        raise CellGenerationError(f"sigma must be > 0, got {sigma}")
    if not r_cut > 2.0:
        raise CellGenerationError(f"r_cut must be > 2, got {r_cut}")
    if sigma > r_cut / 4.0:
        raise CellGenerationError(
            f"sigma={sigma} exceeds r_cut/4={r_cut / 4.0}: the partition would be degenerate"
        )
    t = math.tan(eps)
    strips: list[list[Cell]] = []
    k = 0
    while True:
        strip = _strip(k, sigma, t)
        if strip.x_start() >= r_cut:
            break
        cells = _sweep_strip(strip, k, sigma, r_cut)
        if not cells:
            break
        strips.append(cells)
        k += 1
    ordered: list[Cell] = []
    for cells in reversed(strips[1:]):
        ordered.extend(_mirror(c) for c in cells)
    for cells in strips:
        ordered.extend(cells)
    logger.info(
        "Generated %d cells in %d strips (eps=%s, sigma=%s, r_cut=%s)",
        len(ordered),
        2 * len(strips) - 1 if strips else 0,
        eps,
        sigma,
        r_cut,
    )
    return CellSet(eps=eps, sigma=sigma, r_cut=r_cut, cells=tuple(ordered))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_cells(
    cs: CellSet,
    *,
    area_tol: float = 1e-10,
    moment_tol: float = 1e-10,
    total_tol: float = 1e-8,
) -> dict:
    """Check the partition invariants; never raises on a failed check."""
    results: dict = {"passed": True, "checks": [], "stats": {}}

    def _check(name: str, ok: bool, detail: str = "") -> None:
        results["checks"].append({"name": name, "passed": bool(ok), "detail": detail})
        if not ok:
            results["passed"] = False

    sigma = cs.sigma
    if not cs.cells:
        _check("non_empty", False, "cell set is empty")
        return results

    areas = []
    moments = []
    for cell in cs.cells:
        area, centroid = polygon_area_centroid(cell.vertices)
        areas.append(area)
        moments.append(abs(area * (centroid - cell.marked_point)))
    max_area_dev = max(abs(a - sigma * sigma) for a in areas)
    max_moment = max(moments)
    _check(
        "cell_areas",
        max_area_dev <= area_tol * sigma * sigma,
        f"max |area - sigma^2| = {max_area_dev:.3e}",
    )
    _check(
        "first_moments",
        max_moment < moment_tol * sigma**3,
        f"max |first moment| = {max_moment:.3e}",
    )

    pts = np.column_stack([cs.marked_points.real, cs.marked_points.imag])
    if len(pts) > 1:
        dist, _ = cKDTree(pts).query(pts, k=2)
        min_dist = float(np.min(dist[:, 1]))
    else:
        min_dist = math.inf
    _check(
        "marked_point_separation",
        min_dist >= 0.5 * sigma,
        f"min |a_Q - a_Q'| = {min_dist:.6g} (sigma/2 = {0.5 * sigma:.6g})",
    )

    by_strip: dict[int, list[tuple[float, float]]] = {}
    for cell in cs.cells:
        by_strip.setdefault(cell.strip_index, []).append(cell.x_range)
    overlaps = 0
    for ranges in by_strip.values():
        ranges.sort()
        for (_, right), (left, _) in zip(ranges, ranges[1:]):
            if right > left + 1e-9 * sigma:
                overlaps += 1
    _check("disjoint_interiors", overlaps == 0, f"overlapping neighbours = {overlaps}")

    t = math.tan(cs.eps)
    covered = 0.0
    for k, ranges in by_strip.items():
        strip = _strip(abs(k), sigma, t)
        covered += strip.integral(strip.x_start(), max(r for _, r in ranges))
    total = math.fsum(areas)
    mismatch = abs(total - covered) / covered
    _check("tiling_area", mismatch < total_tol, f"relative mismatch = {mismatch:.3e}")

    bound = 2.0 * sigma / math.sqrt(cs.eps)
    max_diam = max(c.diameter for c in cs.cells)
    _check("cell_diameters", max_diam <= bound, f"max diameter {max_diam:.4g} <= {bound:.4g}")

    results["stats"] = {
        "n_cells": len(cs.cells),
        "max_area_deviation": max_area_dev,
        "max_first_moment": max_moment,
        "min_pairwise_distance": min_dist,
        "total_area_mismatch": mismatch,
        "max_diameter": max_diam,
    }
    return results

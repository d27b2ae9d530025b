"""Numerical univalence probe.

Two falsifiable diagnostics on a grid of the region:

* collisions: grid points that are not grid neighbours but whose images lie
  closer than half the smallest image spacing between neighbours;
* winding: the winding number of the boundary image about interior image
  points, which must be 1 for a univalent map of a simply connected region.

A passing report is evidence at the stated resolution, not a proof.
"""
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np
from scipy.spatial import cKDTree

from pauli_zeromodes.config import PROBE_GRID

logger = logging.getLogger(__name__)

ComplexMap = Callable[[np.ndarray], np.ndarray]
_MAX_REPORTED = 10
_ON_LOOP_RTOL = 1e-9


class Region(Protocol):
    def grid(self, n: int) -> np.ndarray: ...

    def boundary(self, n_per_side: int) -> np.ndarray: ...

    def interior_points(self) -> np.ndarray: ...


@dataclass(frozen=True)
class AnnularSector:
    """{r_min < |w| < r_max, theta_min < arg w < theta_max}, sampled log-radially."""

    r_min: float
    r_max: float
    theta_min: float
    theta_max: float

    def __post_init__(self) -> None:
        if not (0.0 < self.r_min < self.r_max):
            raise ValueError(f"need 0 < r_min < r_max, got {self.r_min}, {self.r_max}")
        if not (self.theta_min < self.theta_max <= self.theta_min + 2.0 * math.pi):
            raise ValueError(f"bad angular range ({self.theta_min}, {self.theta_max})")

    def _point(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Map unit coordinates (u radial, v angular) into the region."""
        log_r = math.log(self.r_min) + u * (math.log(self.r_max) - math.log(self.r_min))
        theta = self.theta_min + v * (self.theta_max - self.theta_min)
        return np.exp(log_r + 1j * theta)

    def grid(self, n: int) -> np.ndarray:
        t = np.linspace(0.0, 1.0, n)
        return self._point(t[:, None], t[None, :])

    def boundary(self, n_per_side: int) -> np.ndarray:
        return _unit_square_boundary(self._point, n_per_side)

    def interior_points(self) -> np.ndarray:
        return _unit_interior(self._point)


@dataclass(frozen=True)
class Rectangle:
    """{x_min < x < x_max, y_min < y < y_max}, sampled uniformly."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self) -> None:
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("rectangle must have positive width and height")

    def _point(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        x = self.x_min + u * (self.x_max - self.x_min)
        y = self.y_min + v * (self.y_max - self.y_min)
        return x + 1j * y

    def grid(self, n: int) -> np.ndarray:
        t = np.linspace(0.0, 1.0, n)
        return self._point(t[:, None], t[None, :])

    def boundary(self, n_per_side: int) -> np.ndarray:
        return _unit_square_boundary(self._point, n_per_side)

    def interior_points(self) -> np.ndarray:
        return _unit_interior(self._point)


def _unit_square_boundary(point, n: int) -> np.ndarray:
    """Counterclockwise traversal of the unit square pushed through ``point``."""
    t = np.linspace(0.0, 1.0, n, endpoint=False)
    zeros = np.zeros_like(t)
    ones = np.ones_like(t)
    sides = [
        point(t, zeros),
        point(ones, t),
        point(1.0 - t, ones),
        point(zeros, 1.0 - t),
    ]
    return np.concatenate(sides)


def _unit_interior(point) -> np.ndarray:
    """20 points on a 4 x 5 lattice well inside the unit square."""
    u, v = np.meshgrid(np.linspace(0.2, 0.8, 4), np.linspace(0.2, 0.8, 5), indexing="ij")
    return point(u.ravel(), v.ravel())


def _loop_distance(loop: np.ndarray, p: complex) -> float:
    """Distance from p to the closed polygon ``loop``."""
    a = loop
    d = np.roll(loop, -1) - a
    den = (d * d.conj()).real
    t = np.divide(((p - a) * d.conj()).real, den, out=np.zeros_like(den), where=den > 0.0)
    return float(np.abs(a + np.clip(t, 0.0, 1.0) * d - p).min())


def winding_number(loop: np.ndarray, p: complex) -> int:
    """Winding of the closed polygon ``loop`` about p (sum of arg increments / 2 pi)."""
    loop = np.asarray(loop, dtype=complex)
    d = loop - p
    if np.any(d == 0):
        raise ValueError(f"point {p} lies on the loop")
    total = np.angle(np.roll(d, -1) / d).sum()
    return int(math.floor(0.5 + total / (2.0 * math.pi)))


@dataclass(frozen=True)
class ProbeReport:
    passed: bool
    collisions: tuple[tuple[tuple[int, int], tuple[int, int], complex, complex], ...]
    n_collisions: int
    winding: tuple[int, ...]
    min_separation: float
    n_grid: int
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "collisions": [
                {"i": list(a), "j": list(b), "w_i": [wa.real, wa.imag], "w_j": [wb.real, wb.imag]}
                for a, b, wa, wb in self.collisions
            ],
            "n_collisions": self.n_collisions,
            "winding": list(self.winding),
            "min_separation": self.min_separation,
            "n_grid": self.n_grid,
            "notes": list(self.notes),
        }


def univalence_probe(f: ComplexMap, region: Region, n_grid: int = PROBE_GRID) -> ProbeReport:
    """Grid collision test plus boundary winding about 20 interior image points."""
    if n_grid < 32:
        raise ValueError(f"n_grid must be >= 32, got {n_grid}")
    pts = region.grid(n_grid)
    img = np.asarray(f(pts), dtype=complex)
    notes: list[str] = []
    if not np.all(np.isfinite(img)):
        notes.append("non-finite image values on the grid")
        return ProbeReport(False, (), 0, (), 0.0, n_grid, tuple(notes))

    steps = np.concatenate(
        [np.abs(np.diff(img, axis=0)).ravel(), np.abs(np.diff(img, axis=1)).ravel()]
    )
    min_sep = float(steps.min())
    radius = 0.5 * min_sep

    flat = img.ravel()
    tree = cKDTree(np.column_stack([flat.real, flat.imag]))
    pairs = tree.query_pairs(radius, output_type="ndarray")
    collisions = []
    if len(pairs):
        i1, j1 = np.divmod(pairs[:, 0], n_grid)
        i2, j2 = np.divmod(pairs[:, 1], n_grid)
        non_adjacent = (np.abs(i1 - i2) > 1) | (np.abs(j1 - j2) > 1)
        for k in np.flatnonzero(non_adjacent):
            collisions.append(
                (
                    (int(i1[k]), int(j1[k])),
                    (int(i2[k]), int(j2[k])),
                    complex(flat[pairs[k, 0]]),
                    complex(flat[pairs[k, 1]]),
                )
            )
    if min_sep == 0.0:
        notes.append("neighbouring grid points share an image")

    loop = np.asarray(f(region.boundary(4 * n_grid)), dtype=complex)
    inner = np.asarray(f(region.interior_points()), dtype=complex)
    tol = _ON_LOOP_RTOL * float(np.abs(loop).max())
    clear = [complex(w) for w in inner if _loop_distance(loop, complex(w)) > tol]
    if len(clear) < inner.size:
        notes.append(f"{inner.size - len(clear)} interior images lie on the boundary image")
    winding = tuple(winding_number(loop, w) for w in clear)
    passed = (
        not collisions and min_sep > 0.0 and bool(winding) and all(w == 1 for w in winding)
    )
    if not passed:
        logger.info(
            "Univalence probe failed: %d collisions, winding %s", len(collisions), winding
        )
    return ProbeReport(
        passed=passed,
        collisions=tuple(collisions[:_MAX_REPORTED]),
        n_collisions=len(collisions),
        winding=winding,
        min_separation=min_sep,
        n_grid=n_grid,
        notes=tuple(notes),
    )

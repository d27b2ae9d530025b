"""Explicit solution F of the Poisson equation Delta F = B for the sector field.

    F(z) = phi(z) - (c0 sin(alpha) / 2 pi) Re((z e^{-i alpha/2})^2 log z)

with phi = b1 x2^2 on Omega_1, x2^2 on Omega_2, and log z taken in the branch
arg z in [alpha, alpha + 2 pi), continuous off the ray L_alpha = {arg z = alpha}.
The jump of phi across L_alpha is cancelled by the 2 pi i jump of the logarithm,
so F and grad F are continuous everywhere except at the origin.

All evaluators accept numpy arrays through the ``*_array`` variants; scalar
wrappers validate their argument and return Python floats.
"""
import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from pauli_zeromodes.field.configs import TWO_PI, FieldDomainError, SectorFieldConfig

logger = logging.getLogger(__name__)

Side = Literal["omega1", "omega2"]


class StencilError(ValueError):
    """Raised when a finite-difference stencil is not admissible for the potential."""


@dataclass(frozen=True)
class SectorPotential:
    cfg: SectorFieldConfig

    @property
    def log_coefficient(self) -> float:
        """k = c0 sin(alpha) / (2 pi)."""
        return self.cfg.c0 * math.sin(self.cfg.alpha) / TWO_PI


def _principal(z: np.ndarray) -> np.ndarray:
    psi = np.mod(np.arctan2(z.imag, z.real), TWO_PI)
    return np.where(psi >= TWO_PI, 0.0, psi)


def branch_angle_array(p: SectorPotential, z: np.ndarray) -> np.ndarray:
    """arg z in [alpha, alpha + 2 pi)."""
    alpha = p.cfg.alpha
    return alpha + np.mod(_principal(np.asarray(z, dtype=complex)) - alpha, TWO_PI)


def _pieces(p: SectorPotential, z: np.ndarray, omega1: np.ndarray, psi: np.ndarray):
    cfg = p.cfg
    b = np.where(omega1, cfg.b1, cfg.b2)
    rot = np.exp(-1j * cfg.alpha)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_z = np.log(np.abs(z)) + 1j * psi
    return b, rot, log_z


def _F_from(p: SectorPotential, z: np.ndarray, omega1: np.ndarray, psi: np.ndarray) -> np.ndarray:
    b, rot, log_z = _pieces(p, z, omega1, psi)
    g = rot * z * z * log_z
    return b * z.imag**2 - p.log_coefficient * g.real


def _grad_from(
    p: SectorPotential, z: np.ndarray, omega1: np.ndarray, psi: np.ndarray
) -> np.ndarray:
    b, rot, log_z = _pieces(p, z, omega1, psi)
    dg = rot * (2.0 * z * log_z + z)
    k = p.log_coefficient
    gx = -k * dg.real
    gy = 2.0 * b * z.imag + k * dg.imag
    return np.stack([gx, gy], axis=-1)


def _omega1_mask(p: SectorPotential, z: np.ndarray) -> np.ndarray:
    psi0 = _principal(z)
    return (psi0 > 0.0) & (psi0 < p.cfg.alpha)


def eval_F_array(p: SectorPotential, z: np.ndarray) -> np.ndarray:
    """Vectorized F; the origin maps to nan."""
    z = np.asarray(z, dtype=complex)
    out = _F_from(p, z, _omega1_mask(p, z), branch_angle_array(p, z))
    return np.where(z == 0, np.nan, out)


def eval_F(p: SectorPotential, z: complex) -> float:
    if z == 0:
        raise FieldDomainError("potential has a logarithmic singularity at the origin")
    return float(eval_F_array(p, np.asarray([z]))[0])


def grad_F(p: SectorPotential, z: complex) -> tuple[float, float]:
    """Analytic gradient (dF/dx1, dF/dx2), piecewise by sector."""
    if z == 0:
        raise FieldDomainError("potential gradient is undefined at the origin")
    arr = np.asarray([z], dtype=complex)
    g = _grad_from(p, arr, _omega1_mask(p, arr), branch_angle_array(p, arr))[0]
    return float(g[0]), float(g[1])


def _side_args(p: SectorPotential, z: complex, side: Side):
    if side not in ("omega1", "omega2"):
        raise ValueError(f"side must be 'omega1' or 'omega2', got {side!r}")
    arr = np.asarray([z], dtype=complex)
    alpha = p.cfg.alpha
    psi = branch_angle_array(p, arr)
    offset = psi - alpha
    if min(offset[0], TWO_PI - offset[0]) < 1e-12:
        # on L_alpha: Omega_1 sees the far end of the branch
        psi = np.asarray([alpha + TWO_PI if side == "omega1" else alpha])
    return arr, np.asarray([side == "omega1"]), psi


def eval_F_side(p: SectorPotential, z: complex, side: Side) -> float:
    """F evaluated with the formula of one sector (one-sided limit on L_alpha)."""
    if z == 0:
        raise FieldDomainError("potential has a logarithmic singularity at the origin")
    arr, mask, psi = _side_args(p, z, side)
    return float(_F_from(p, arr, mask, psi)[0])


def grad_F_side(p: SectorPotential, z: complex, side: Side) -> tuple[float, float]:
    if z == 0:
        raise FieldDomainError("potential gradient is undefined at the origin")
    arr, mask, psi = _side_args(p, z, side)
    g = _grad_from(p, arr, mask, psi)[0]
    return float(g[0]), float(g[1])


def log_growth_coefficient(p: SectorPotential, psi: float) -> float:
    """Coefficient C(psi) of |z|^2 log|z| in F along the ray arg z = psi."""
    return -p.log_coefficient * math.cos(2.0 * (psi - p.cfg.alpha / 2.0))


def zero_growth_directions(p: SectorPotential) -> list[float]:
    """Directions in [alpha, alpha + 2 pi) where C(psi) vanishes: alpha/2 + pi/4 + k pi/2."""
    alpha = p.cfg.alpha
    out = []
    for k in range(8):
        psi = alpha / 2.0 + math.pi / 4.0 + k * math.pi / 2.0
        if alpha <= psi < alpha + TWO_PI:
            out.append(psi)
    return out


def _distance_to_ray(z: complex, angle: float) -> float:
    d = complex(math.cos(angle), math.sin(angle))
    w = z * d.conjugate()
    if w.real <= 0.0:
        return abs(z)
    return abs(w.imag)


def laplacian_fd(p: SectorPotential, z: complex, h: float) -> float:
    """Five-point Laplacian of F at z with step h.

    The stencil must stay clear (by more than h) of L_alpha, of the interface
    ray arg z = 0 where phi switches between b1 x2^2 and x2^2, and of the origin.
    """
    if h <= 0:
        raise ValueError(f"step h must be > 0, got {h}")
    stencil = [z, z + h, z - h, z + 1j * h, z - 1j * h]
    for pt in stencil:
        if abs(pt) <= h:
            raise StencilError(f"stencil around {z} touches the origin (h={h})")
        if _distance_to_ray(pt, p.cfg.alpha) <= h:
            raise StencilError(f"stencil around {z} crosses the cut L_alpha (h={h})")
        if _distance_to_ray(pt, 0.0) <= h:
            raise StencilError(f"stencil around {z} crosses the interface ray arg z = 0 (h={h})")
    values = eval_F_array(p, np.asarray(stencil, dtype=complex))
    return float((values[1] + values[2] + values[3] + values[4] - 4.0 * values[0]) / (h * h))

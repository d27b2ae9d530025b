"""Lower bounds on large sectors for alpha close to pi.

On S = {alpha/2 + 7pi/4 < arg z < alpha/2 + 9pi/4} the potential satisfies
-F >= C |z|^2, and on T = {alpha/2 + pi/4 < arg z < alpha/2 + 3pi/4} the
corrected potential F~ = F - Re H, H(z) = -(i/6) e^{-i alpha} z^2, satisfies the
analogous bound.  Both are sampled on polar grids that include the collars
|psi - edge| <= A_margin / log r.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from pauli_zeromodes.config import LOWER_BOUND_ANGLES, LOWER_BOUND_RADII_PER_DECADE
from pauli_zeromodes.field.configs import TWO_PI, FieldDomainError, SectorFieldConfig
from pauli_zeromodes.field.potential import SectorPotential, eval_F_array

logger = logging.getLogger(__name__)


def re_H_array(cfg: SectorFieldConfig, z: np.ndarray) -> np.ndarray:
    """Re(-(i/6) e^{-i alpha} z^2) = |z|^2 sin(2 psi - alpha) / 6."""
    z = np.asarray(z, dtype=complex)
    return (-1j / 6.0 * np.exp(-1j * cfg.alpha) * z * z).real


def tilde_F_array(cfg: SectorFieldConfig, z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    return eval_F_array(SectorPotential(cfg), z) - re_H_array(cfg, z)


def tilde_F(cfg: SectorFieldConfig, z: complex) -> float:
    """F(z) - Re H(z)."""
    if z == 0:
        raise FieldDomainError("potential has a logarithmic singularity at the origin")
    return float(tilde_F_array(cfg, np.asarray([z]))[0])


@dataclass(frozen=True)
class ThetaCondition:
    holds: bool
    lhs: float
    rhs: float

    def to_dict(self) -> dict:
        return {"holds": self.holds, "lhs": self.lhs, "rhs": self.rhs}


def theta_condition(cfg: SectorFieldConfig) -> ThetaCondition:
    """(c0 sin theta / 2 pi)(9pi/4 + alpha/2) <= sin^2(9pi/4 + alpha/2) |b1| / 2."""
    edge = 9.0 * math.pi / 4.0 + cfg.alpha / 2.0
    lhs = cfg.c0 * math.sin(cfg.theta) / TWO_PI * edge
    rhs = 0.5 * math.sin(edge) ** 2 * abs(cfg.b1)
    return ThetaCondition(holds=lhs <= rhs, lhs=lhs, rhs=rhs)


@dataclass(frozen=True)
class LowerBoundReport:
    sector: str
    C_est: float
    argmin: complex
    edge_values: dict[str, float]
    theta_condition: ThetaCondition
    A_margin: float
    r_max: float
    n_radii: int
    n_angles: int

    @property
    def passed(self) -> bool:
        return self.C_est > 0.0

    def to_dict(self) -> dict:
        return {
            "sector": self.sector,
            "C_est": self.C_est,
            "passed": self.passed,
            "argmin": [self.argmin.real, self.argmin.imag],
            "edge_values": dict(self.edge_values),
            "theta_condition": self.theta_condition.to_dict(),
            "A_margin": self.A_margin,
            "r_max": self.r_max,
            "n_radii": self.n_radii,
            "n_angles": self.n_angles,
        }


def _radii(r_max: float, per_decade: int) -> np.ndarray:
    if not r_max > 10.0:
        raise ValueError(f"r_max must exceed 10, got {r_max}")
    n = max(2, math.ceil(math.log10(r_max / 10.0) * per_decade) + 1)
    return np.geomspace(10.0, r_max, n)


def _collared_grid(
    lo: float, hi: float, A_margin: float, radii: np.ndarray, n_angles: int
) -> np.ndarray:
    """Polar grid over {lo - A/log r <= psi <= hi + A/log r}, ends included."""
    collar = A_margin / np.log(radii)
    t = np.linspace(0.0, 1.0, n_angles)
    psi = (lo - collar)[:, None] + ((hi - lo) + 2.0 * collar)[:, None] * t[None, :]
    return radii[:, None] * np.exp(1j * psi)


def _check_inputs(cfg: SectorFieldConfig, A_margin: float) -> None:
    if not A_margin > 0.0:
        raise ValueError(f"A_margin must be > 0, got {A_margin}")
    if abs(cfg.b1) >= 0.5:
        raise ValueError(f"the large-sector bounds need |b1| < 1/2, got b1={cfg.b1}")


def sector_S_lower_bound(
    cfg: SectorFieldConfig,
    A_margin: float = 0.1,
    r_max: float = 1e3,
    *,
    n_angles: int = LOWER_BOUND_ANGLES,
    radii_per_decade: int = LOWER_BOUND_RADII_PER_DECADE,
) -> LowerBoundReport:
    """C_est = min of -F/|z|^2 over the collared sector S' for 10 <= |z| <= r_max."""
    _check_inputs(cfg, A_margin)
    radii = _radii(r_max, radii_per_decade)
    half = cfg.alpha / 2.0
    lo, hi = half + 7.0 * math.pi / 4.0, half + 9.0 * math.pi / 4.0
    z = _collared_grid(lo, hi, A_margin, radii, n_angles)
    vals = -eval_F_array(SectorPotential(cfg), z) / np.abs(z) ** 2
    k = int(np.argmin(vals))
    edges = {
        "7pi/4": _edge_min(cfg, lo, radii, sign=-1.0, tilde=False),
        "9pi/4": _edge_min(cfg, hi, radii, sign=-1.0, tilde=False),
    }
    report = LowerBoundReport(
        sector="S",
        C_est=float(vals.ravel()[k]),
        argmin=complex(z.ravel()[k]),
        edge_values=edges,
        theta_condition=theta_condition(cfg),
        A_margin=A_margin,
        r_max=r_max,
        n_radii=radii.size,
        n_angles=n_angles,
    )
    logger.info(
        "S-sector bound C_est=%.6g (theta condition %s)",
        report.C_est,
        report.theta_condition.holds,
    )
    return report


def sector_T_lower_bound(
    cfg: SectorFieldConfig,
    A_margin: float = 0.1,
    r_max: float = 1e3,
    *,
    n_angles: int = LOWER_BOUND_ANGLES,
    radii_per_decade: int = LOWER_BOUND_RADII_PER_DECADE,
) -> LowerBoundReport:
    """C_est = min of F~/|z|^2 over the collared sector T'.

    ``edge_values`` holds min F~/r^2 along the two edges, to be read against
    the quoted margins 1/12 (edge alpha/2 + 9pi/4) and 1/24 (edge alpha/2 + 3pi/4).
    """
    _check_inputs(cfg, A_margin)
    radii = _radii(r_max, radii_per_decade)
    half = cfg.alpha / 2.0
    lo, hi = half + math.pi / 4.0, half + 3.0 * math.pi / 4.0
    z = _collared_grid(lo, hi, A_margin, radii, n_angles)
    vals = tilde_F_array(cfg, z) / np.abs(z) ** 2
    k = int(np.argmin(vals))
    edges = {
        "9pi/4": _edge_min(cfg, lo, radii, sign=1.0, tilde=True),
        "3pi/4": _edge_min(cfg, hi, radii, sign=1.0, tilde=True),
    }
    report = LowerBoundReport(
        sector="T",
        C_est=float(vals.ravel()[k]),
        argmin=complex(z.ravel()[k]),
        edge_values=edges,
        theta_condition=theta_condition(cfg),
        A_margin=A_margin,
        r_max=r_max,
        n_radii=radii.size,
        n_angles=n_angles,
    )
    logger.info("T-sector bound C_est=%.6g", report.C_est)
    return report


def _edge_min(
    cfg: SectorFieldConfig, psi: float, radii: np.ndarray, *, sign: float, tilde: bool
) -> float:
    z = radii * complex(math.cos(psi), math.sin(psi))
    vals = tilde_F_array(cfg, z) if tilde else eval_F_array(SectorPotential(cfg), z)
    return float(np.min(sign * vals / radii**2))

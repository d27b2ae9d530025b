"""Candidate zero modes u(z) = Phi_alpha(z) exp(-(z e^{-i alpha/2})^2 / 4) P(z).

With eps = sqrt(alpha) and kappa = c0 sin(alpha) / (pi sin 2 eps), the
log-quadratic growth of log|Phi_alpha|^2 matches the one of 2F, so the weight
e^{-2F} cancels it and the Gaussian factor decides integrability.  Densities
are returned in log form; zeros of u give -inf.
"""
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from pauli_zeromodes.field.configs import FieldDomainError, SectorFieldConfig
from pauli_zeromodes.field.potential import SectorPotential, eval_F_array
from pauli_zeromodes.lattice.cells import CellSet, generate_cells
from pauli_zeromodes.lattice.entire import (
    EntireEvaluator,
    build_evaluator,
    eval_logPhi_alpha_many,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CandidateMode:
    alpha: float
    b1: float
    eps: float
    kappa: float
    sigma: float
    poly_coeffs: tuple[complex, ...]
    r_cut: float
    evaluator: EntireEvaluator
    weight_sign: int = -1

    @property
    def cellset(self) -> CellSet:
        return self.evaluator.cellset

    @property
    def potential(self) -> SectorPotential:
        return SectorPotential(SectorFieldConfig(alpha=self.alpha, b1=self.b1))

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "b1": self.b1,
            "c0": 1.0 - self.b1,
            "eps": self.eps,
            "kappa": self.kappa,
            "sigma": self.sigma,
            "r_cut": self.r_cut,
            "poly": [[c.real, c.imag] for c in self.poly_coeffs],
            "weight_sign": self.weight_sign,
            "n_cells": len(self.cellset),
        }


def candidate_parameters(cfg: SectorFieldConfig) -> tuple[float, float, float]:
    """(eps, kappa, sigma) for the sector configuration."""
    eps = math.sqrt(cfg.alpha)
    kappa = cfg.c0 * math.sin(cfg.alpha) / (math.pi * math.sin(2.0 * eps))
    return eps, kappa, kappa**-0.5


def build_candidate(
    cfg: SectorFieldConfig,
    poly_coeffs: Sequence[complex],
    r_cut: float,
    *,
    weight_sign: int = -1,
    validate: bool = True,
) -> CandidateMode:
    """Derive eps, kappa, sigma, partition the sector and wrap the evaluator.

    ``poly_coeffs`` are in ascending order (c0 + c1 z + ...).
    """
    eps, kappa, sigma = candidate_parameters(cfg)
    if eps >= math.pi / 8.0:
        raise ValueError(
            f"sqrt(alpha)={eps:.6f} >= pi/8: no Weierstrass candidate for alpha={cfg.alpha}"
        )
    coeffs = tuple(complex(c) for c in poly_coeffs)
    if not coeffs or not any(coeffs):
        raise ValueError("poly_coeffs must contain at least one nonzero coefficient")
    if weight_sign not in (-1, 1):
        raise ValueError(f"weight_sign must be -1 or 1, got {weight_sign}")
    cells = generate_cells(eps, sigma, r_cut)
    evaluator = build_evaluator(cells, kappa, validate=validate)
    logger.info(
        "Candidate alpha=%s b1=%s: eps=%.6f kappa=%.6f sigma=%.6f, %d cells",
        cfg.alpha,
        cfg.b1,
        eps,
        kappa,
        sigma,
        len(cells),
    )
    return CandidateMode(
        alpha=cfg.alpha,
        b1=cfg.b1,
        eps=eps,
        kappa=kappa,
        sigma=sigma,
        poly_coeffs=coeffs,
        r_cut=r_cut,
        evaluator=evaluator,
        weight_sign=weight_sign,
    )


def gaussian_log_factor_array(alpha: float, z: np.ndarray) -> np.ndarray:
    w = np.asarray(z, dtype=complex) * np.exp(-0.5j * alpha)
    return -0.5 * (w * w).real


def gaussian_log_factor(m: CandidateMode, z: complex) -> float:
    """log |exp(-(z e^{-i alpha/2})^2 / 4)|^2 = -Re((z e^{-i alpha/2})^2) / 2."""
    return float(gaussian_log_factor_array(m.alpha, np.asarray([z]))[0])


def log_modulus_many(m: CandidateMode, z: np.ndarray) -> np.ndarray:
    """log|u(z)|^2 on an array of points."""
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore"):
        log_p = np.log(np.abs(npoly.polyval(z, m.poly_coeffs)))
    log_phi = eval_logPhi_alpha_many(m.evaluator, m.alpha, z)
    return 2.0 * log_phi + gaussian_log_factor_array(m.alpha, z) + 2.0 * log_p


def log_weighted_density_many(m: CandidateMode, z: np.ndarray) -> np.ndarray:
    """log(|u|^2 e^{2 s F}) with s = weight_sign."""
    z = np.asarray(z, dtype=complex)
    weight = 2.0 * m.weight_sign * eval_F_array(m.potential, z)
    return weight + log_modulus_many(m, z)


def log_weighted_density(m: CandidateMode, z: complex) -> float:
    if z == 0:
        raise FieldDomainError("weighted density is undefined at the origin")
    return float(log_weighted_density_many(m, np.asarray([z]))[0])


def probe_family_density(
    p: SectorPotential, k: int, weight_sign: int, z: np.ndarray
) -> np.ndarray:
    """log(|e^{-z^2/8} z^k|^2 e^{2 s F}) for the nonexistence probes."""
    if k < 0:
        raise ValueError(f"probe degree must be >= 0, got {k}")
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore"):
        log_zk = 2.0 * k * np.log(np.abs(z))
    return -0.25 * (z * z).real + log_zk + 2.0 * weight_sign * eval_F_array(p, z)


@dataclass(frozen=True)
class LogQuadraticFit:
    """Coefficients of values ~ a r^2 log r + b r^2 + c r + d."""

    log_quadratic: float
    quadratic: float
    linear: float
    constant: float


def log_quadratic_fit(radii: np.ndarray, values: np.ndarray) -> LogQuadraticFit:
    radii = np.asarray(radii, dtype=float)
    values = np.asarray(values, dtype=float)
    if radii.size < 4 or radii.shape != values.shape:
        raise ValueError("need at least four (radius, value) samples of equal length")
    basis = np.column_stack([radii**2 * np.log(radii), radii**2, radii, np.ones_like(radii)])
    scale = np.max(np.abs(basis), axis=0)
    coef, *_ = np.linalg.lstsq(basis / scale, values, rcond=None)
    a, b, c, d = coef / scale
    return LogQuadraticFit(
        log_quadratic=float(a), quadratic=float(b), linear=float(c), constant=float(d)
    )

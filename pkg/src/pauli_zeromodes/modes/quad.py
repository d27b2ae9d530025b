"""Shell quadrature of exp(density) over annuli and the ratio-test verdict.

Each annulus is covered by tensor Gauss-Legendre panels in (r, psi).  Panels are
refined breadth-first: a panel is accepted when its four children agree with it
to the refinement tolerance, or when it is negligible against the shell total.
All accumulation is in log space (log-sum-exp), so densities spanning thousands
of orders of magnitude neither overflow nor silently underflow.
"""
import logging
import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import logsumexp

from pauli_zeromodes.config import (
    ANGULAR_NODES_PER_SIGMA,
    GL_ORDER,
    QUAD_MAX_DEPTH,
    QUAD_REFINE_TOL,
    SHELL_COUNT,
    SHELL_R_START,
    SHELL_RATIO_Q,
    SHELL_WIDTH,
    SHELL_WINDOW,
    THREADS,
)

logger = logging.getLogger(__name__)

Density = Callable[[np.ndarray], np.ndarray]

LOG_FLOOR = math.log(1e-300)
# panels this far (in log) below the running shell estimate are accepted as-is
_NEGLIGIBLE = 25.0


@dataclass(frozen=True)
class ShellIntegral:
    log_value: float
    panels: int
    unconverged: int

    @property
    def value(self) -> float:
        return _safe_exp(self.log_value)


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _panel_logs(
    density: Density,
    r0: np.ndarray,
    r1: np.ndarray,
    p0: np.ndarray,
    p1: np.ndarray,
    x: np.ndarray,
    log_w: np.ndarray,
) -> np.ndarray:
    """log of the tensor GL estimate on each panel [r0, r1] x [p0, p1]."""
    hr = 0.5 * (r1 - r0)
    hp = 0.5 * (p1 - p0)
    r = (0.5 * (r0 + r1))[:, None, None] + hr[:, None, None] * x[None, :, None]
    psi = (0.5 * (p0 + p1))[:, None, None] + hp[:, None, None] * x[None, None, :]
    z = r * np.exp(1j * psi)
    with np.errstate(divide="ignore", invalid="ignore"):
        dens = np.asarray(density(z), dtype=float)
        dens = np.where(np.isnan(dens), -np.inf, dens)
        terms = dens + np.log(r) + (log_w[:, None] + log_w[None, :])[None, :, :]
        terms = terms + np.log(hr * hp)[:, None, None]
        return logsumexp(terms.reshape(terms.shape[0], -1), axis=1)


def _split(r0, r1, p0, p1):
    rm = 0.5 * (r0 + r1)
    pm = 0.5 * (p0 + p1)
    cr0 = np.stack([r0, r0, rm, rm], axis=1).ravel()
    cr1 = np.stack([rm, rm, r1, r1], axis=1).ravel()
    cp0 = np.stack([p0, pm, p0, pm], axis=1).ravel()
    cp1 = np.stack([pm, p1, pm, p1], axis=1).ravel()
    return cr0, cr1, cp0, cp1


def shell_log_integral(
    density: Density,
    R_lo: float,
    R_hi: float,
    n_rad: int,
    n_ang: int,
    *,
    psi_range: tuple[float, float] = (0.0, 2.0 * math.pi),
    order: int = GL_ORDER,
    tol: float = QUAD_REFINE_TOL,
    max_depth: int = QUAD_MAX_DEPTH,
) -> ShellIntegral:
    """log of the integral of exp(density) r dr dpsi over the (sector of the) annulus."""
    if not (0.0 < R_lo < R_hi):
        raise ValueError(f"need 0 < R_lo < R_hi, got {R_lo}, {R_hi}")
    if n_rad < 4 or n_ang < 4:
        raise ValueError(f"panel counts must be >= 4, got n_rad={n_rad}, n_ang={n_ang}")
    lo, hi = psi_range
    if not hi > lo:
        raise ValueError(f"empty angular range {psi_range}")
    x, w = leggauss(order)
    log_w = np.log(w)

    re = np.linspace(R_lo, R_hi, n_rad + 1)
    pe = np.linspace(lo, hi, n_ang + 1)
    r0, p0 = (a.ravel() for a in np.meshgrid(re[:-1], pe[:-1], indexing="ij"))
    r1, p1 = (a.ravel() for a in np.meshgrid(re[1:], pe[1:], indexing="ij"))
    coarse = _panel_logs(density, r0, r1, p0, p1, x, log_w)
    reference = float(logsumexp(coarse)) if np.isfinite(coarse).any() else -math.inf

    accepted: list[np.ndarray] = []
    total_panels = coarse.size
    unconverged = 0
    depth = 0
    while r0.size:
        cr0, cr1, cp0, cp1 = _split(r0, r1, p0, p1)
        child = _panel_logs(density, cr0, cr1, cp0, cp1, x, log_w).reshape(-1, 4)
        total_panels += child.size
        fine = logsumexp(child, axis=1)
        with np.errstate(invalid="ignore", over="ignore"):
            rel = np.abs(np.expm1(coarse - fine))
        ok = (rel <= tol) | np.isneginf(fine) | (fine < reference - _NEGLIGIBLE)
        depth += 1
        if depth >= max_depth:
            unconverged += int(np.count_nonzero(~ok))
            ok[:] = True
        accepted.append(fine[ok])
        keep = np.repeat(~ok, 4)
        r0, r1, p0, p1 = cr0[keep], cr1[keep], cp0[keep], cp1[keep]
        coarse = child[~ok].ravel()
    if unconverged:
        logger.warning(
            "%d panels unconverged at depth %d on [%s, %s]", unconverged, max_depth, R_lo, R_hi
        )
    values = np.concatenate(accepted) if accepted else np.array([-np.inf])
    log_value = float(logsumexp(values)) if np.isfinite(values).any() else -math.inf
    return ShellIntegral(log_value=log_value, panels=total_panels, unconverged=unconverged)


def shell_integral(
    density: Density,
    R_lo: float,
    R_hi: float,
    n_rad: int,
    n_ang: int,
    **kwargs,
) -> float:
    """Integral of exp(density) over the annulus R_lo < |z| < R_hi (inf on overflow)."""
    return shell_log_integral(density, R_lo, R_hi, n_rad, n_ang, **kwargs).value


# ---------------------------------------------------------------------------
# Ratio test
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShellReport:
    radii: tuple[float, ...]
    log_values: tuple[float, ...]
    ratios: tuple[float | None, ...]
    verdict: str
    q: float
    m: int
    n_rad: int
    n_ang: tuple[int, ...]
    psi_range: tuple[float, float]
    unconverged: int = 0
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def shell_values(self) -> tuple[float, ...]:
        return tuple(_safe_exp(v) for v in self.log_values)

    @property
    def midpoints(self) -> tuple[float, ...]:
        return tuple(0.5 * (a + b) for a, b in zip(self.radii, self.radii[1:]))

    def csv_rows(self) -> list[dict]:
        return [
            {"R_mid": r, "I_k": v} for r, v in zip(self.midpoints, self.shell_values)
        ]

    def to_dict(self) -> dict:
        return {
            "radii": list(self.radii),
            "log_values": list(self.log_values),
            "shell_values": list(self.shell_values),
            "ratios": list(self.ratios),
            "verdict": self.verdict,
            "parameters": {
                "q": self.q,
                "m": self.m,
                "n_rad": self.n_rad,
                "n_ang": list(self.n_ang),
                "psi_range": list(self.psi_range),
            },
            "unconverged_panels": self.unconverged,
            "notes": list(self.notes),
        }


def shell_ratios(log_values: list[float]) -> list[float | None]:
    """I_{k+1}/I_k; None when both shells underflow, inf when only I_k does."""
    out: list[float | None] = []
    for a, b in zip(log_values, log_values[1:]):
        if a <= LOG_FLOOR:
            out.append(math.inf if b > LOG_FLOOR else None)
        else:
            out.append(_safe_exp(b - a))
    return out


def ratio_verdict(ratios: list[float | None], q: float, m: int) -> str:
    """convergent iff the last m ratios are < q, divergent iff all are > 1/q."""
    tail = ratios[-m:]
    if all(r is None or r < q for r in tail):
        return "convergent"
    if all(r is not None and r > 1.0 / q for r in tail):
        return "divergent"
    return "inconclusive"


def angular_panels(
    R_hi: float,
    sigma: float | None,
    psi_range: tuple[float, float],
    *,
    order: int = GL_ORDER,
    nodes_per_sigma: int = ANGULAR_NODES_PER_SIGMA,
) -> int:
    """Panels giving at least nodes_per_sigma * ceil(R/sigma) angular nodes per full turn."""
    if sigma is None:
        return 16
    fraction = (psi_range[1] - psi_range[0]) / (2.0 * math.pi)
    nodes = nodes_per_sigma * math.ceil(R_hi / sigma) * fraction
    return max(4, math.ceil(nodes / order))


def convergence_verdict(
    density: Density,
    R_start: float = SHELL_R_START,
    shell_width: float = SHELL_WIDTH,
    n_shells: int = SHELL_COUNT,
    q: float = SHELL_RATIO_Q,
    m: int = SHELL_WINDOW,
    *,
    n_rad: int = 4,
    sigma: float | None = None,
    nodes_per_sigma: int = ANGULAR_NODES_PER_SIGMA,
    psi_range: tuple[float, float] = (0.0, 2.0 * math.pi),
    order: int = GL_ORDER,
    threads: int = THREADS,
) -> ShellReport:
    """Integrate n_shells annuli of width shell_width from R_start and apply the ratio rule."""
    if not (3 <= m <= n_shells):
        raise ValueError(f"need n_shells >= m >= 3, got n_shells={n_shells}, m={m}")
    if not (0.0 < q < 1.0):
        raise ValueError(f"q must lie in (0, 1), got {q}")
    if not (R_start > 0.0 and shell_width > 0.0):
        raise ValueError(f"R_start and shell_width must be > 0, got {R_start}, {shell_width}")
    radii = [R_start + k * shell_width for k in range(n_shells + 1)]
    n_ang = [
        angular_panels(hi, sigma, psi_range, order=order, nodes_per_sigma=nodes_per_sigma)
        for hi in radii[1:]
    ]

    def _one(k: int) -> ShellIntegral:
        return shell_log_integral(
            density,
            radii[k],
            radii[k + 1],
            n_rad,
            n_ang[k],
            psi_range=psi_range,
            order=order,
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            shells = list(pool.map(_one, range(n_shells)))
    else:
        shells = [_one(k) for k in range(n_shells)]

    log_values = [s.log_value for s in shells]
    ratios = shell_ratios(log_values)
    notes: list[str] = []
    if all(v <= LOG_FLOOR for v in log_values):
        verdict = "convergent"
        notes.append("all shells underflow: integrand numerically zero")
    else:
        verdict = ratio_verdict(ratios, q, m)
    report = ShellReport(
        radii=tuple(radii),
        log_values=tuple(log_values),
        ratios=tuple(ratios),
        verdict=verdict,
        q=q,
        m=m,
        n_rad=n_rad,
        n_ang=tuple(n_ang),
        psi_range=(float(psi_range[0]), float(psi_range[1])),
        unconverged=sum(s.unconverged for s in shells),
        notes=tuple(notes),
    )
    logger.info("Shell verdict %s over [%s, %s]", verdict, radii[0], radii[-1])
    return report

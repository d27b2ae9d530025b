"""Log-power maps of the large-sector construction.

    zeta(omega) = omega (log omega - i pi/2)^A   on {Im omega > 0, |omega| > R}
    zeta(z)     = e^z z^A                        on the half-strip {x > varsigma, |y| < pi/2}

related by omega = i e^z.  ``choose_varsigma`` picks the strip cutoff on a
0.25 grid so that arg z^A and arg(1 + A/z) stay below pi/40 on the strip
boundary; the half-plane cutoff is R = e^varsigma.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

ANGLE_BUDGET = math.pi / 40.0
VARSIGMA_STEP = 0.25
VARSIGMA_MAX = 1e4
_BOUNDARY_X_MAX = 1e6


class MapDomainError(ValueError):
    """Raised when a map is evaluated outside its domain."""


class VarsigmaSearchError(RuntimeError):
    """Raised when no admissible strip cutoff exists below VARSIGMA_MAX."""


@dataclass(frozen=True)
class LogPowerMap:
    """Exponent A with the strip cutoff varsigma and the disk cutoff R.

    R defaults to e^varsigma when only varsigma is given, and to 1 otherwise.
    """

    A: float
    varsigma: float | None = None
    R: float | None = None

    @classmethod
    def for_exponent(cls, A: float) -> "LogPowerMap":
        varsigma = choose_varsigma(A)
        return cls(A=A, varsigma=varsigma, R=math.exp(varsigma))

    @property
    def cutoff(self) -> float:
        if self.R is not None:
            return self.R
        if self.varsigma is not None:
            return math.exp(self.varsigma)
        return 1.0

    @property
    def strip_cutoff(self) -> float:
        return self.varsigma if self.varsigma is not None else 0.0

    def to_dict(self) -> dict:
        return {"A": self.A, "varsigma": self.varsigma, "R": self.cutoff}


# ---------------------------------------------------------------------------
# Maps
# ---------------------------------------------------------------------------

def map_halfplane_array(m: LogPowerMap, omega: np.ndarray) -> np.ndarray:
    omega = np.asarray(omega, dtype=complex)
    bad = (omega.imag <= 0.0) | (np.abs(omega) <= m.cutoff)
    if bad.any():
        first = omega[bad].ravel()[0]
        raise MapDomainError(
            f"map_halfplane needs Im omega > 0 and |omega| > {m.cutoff:.6g}, got {first}"
        )
    if m.A == 0.0:
        return omega.copy()
    return omega * (np.log(omega) - 0.5j * math.pi) ** m.A


def map_halfplane(m: LogPowerMap, omega: complex) -> complex:
    """omega (log omega - i pi/2)^A with the principal logarithm."""
    return complex(map_halfplane_array(m, np.asarray([omega]))[0])


def map_strip_array(m: LogPowerMap, z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    bad = (z.real <= m.strip_cutoff) | (np.abs(z.imag) >= 0.5 * math.pi)
    if bad.any():
        first = z[bad].ravel()[0]
        raise MapDomainError(
            f"map_strip needs Re z > {m.strip_cutoff:.6g} and |Im z| < pi/2, got {first}"
        )
    return np.exp(z) * z**m.A


def map_strip(m: LogPowerMap, z: complex) -> complex:
    """e^z z^A on the half-strip."""
    return complex(map_strip_array(m, np.asarray([z]))[0])


def strip_derivative_array(m: LogPowerMap, z: np.ndarray) -> np.ndarray:
    """zeta'(z) = e^z z^A (1 + A/z)."""
    z = np.asarray(z, dtype=complex)
    return map_strip_array(m, z) * (1.0 + m.A / z)


# ---------------------------------------------------------------------------
# Strip cutoff
# ---------------------------------------------------------------------------

def _strip_boundary(varsigma: float, n: int = 256) -> np.ndarray:
    """The vertical side and the two horizontal rays of the half-strip, to x = 1e6."""
    ys = np.linspace(-0.5 * math.pi, 0.5 * math.pi, 65)
    xs = np.geomspace(varsigma, _BOUNDARY_X_MAX, n)
    side = varsigma + 1j * ys
    top = xs + 0.5j * math.pi
    return np.concatenate([side, top, np.conj(top)])


def strip_angle_sup(A: float, varsigma: float, n: int = 256) -> tuple[float, float]:
    """Sampled sup of |arg z^A| and |arg(1 + A/z)| on the strip boundary.

    Both decrease along the horizontal rays, so the samples beyond x = 1e6
    cannot exceed the values already seen.
    """
    z = _strip_boundary(varsigma, n)
    arg_power = np.abs(A * np.angle(z))
    arg_factor = np.abs(np.angle(1.0 + A / z))
    return float(arg_power.max()), float(arg_factor.max())


def choose_varsigma(A: float, *, step: float = VARSIGMA_STEP, limit: float = VARSIGMA_MAX) -> float:
    """Least grid value varsigma > 2 pi with both boundary angles below pi/40."""
    if A == 0.0:
        raise ValueError("A must be nonzero")
    first = (math.floor(2.0 * math.pi / step) + 1) * step
    grid = first + step * np.arange(int((limit - first) / step) + 1)
    # corner value |A| atan(pi / (2 varsigma)) bounds the sup from below
    corner = abs(A) * np.arctan(0.5 * math.pi / grid)
    for varsigma in grid[corner < ANGLE_BUDGET]:
        power, factor = strip_angle_sup(A, float(varsigma))
        if power < ANGLE_BUDGET and factor < ANGLE_BUDGET:
            logger.debug("varsigma=%s for A=%s (sup %.3e, %.3e)", varsigma, A, power, factor)
            return float(varsigma)
    raise VarsigmaSearchError(
        f"no varsigma <= {limit:g} keeps the boundary angles below pi/40 for A={A}"
    )


# ---------------------------------------------------------------------------
# Boundary asymptotics
# ---------------------------------------------------------------------------

def boundary_angle(m: LogPowerMap, rho: float) -> float:
    """Leading boundary argument -pi A / (2 log rho) of the image near arg 0."""
    log_rho = math.log(rho)
    if log_rho <= 1.0:
        raise ValueError(f"boundary_angle needs log rho > 1, got rho={rho}")
    return -math.pi * m.A / (2.0 * log_rho)


def boundary_angle_band(m: LogPowerMap, rho: float) -> float:
    """Half-width of the O(log log rho / log^2 rho) remainder around boundary_angle
    (twice the first correction term)."""
    log_rho = math.log(rho)
    if log_rho <= 1.0:
        raise ValueError(f"boundary_angle_band needs log rho > 1, got rho={rho}")
    return math.pi * m.A * m.A * math.log(log_rho) / log_rho**2


def boundary_image(m: LogPowerMap, t: float) -> complex:
    """Limit of the half-plane map at the real boundary point t > e."""
    if t <= math.e:
        raise ValueError(f"boundary point must exceed e, got {t}")
    return t * complex(math.log(t), -0.5 * math.pi) ** m.A


def probe_boundary_angle(m: LogPowerMap, rho: float, *, iterations: int = 200) -> float:
    """arg of the boundary image with modulus rho, located by bisection in log t."""
    if math.log(rho) <= 1.0:
        raise ValueError(f"probe needs log rho > 1, got rho={rho}")
    lo, hi = 1.0 + 1e-12, math.log(rho) + abs(m.A) * 10.0 + 10.0
    target = math.log(rho)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if math.log(abs(boundary_image(m, math.exp(mid)))) < target:
            lo = mid
        else:
            hi = mid
    w = boundary_image(m, math.exp(0.5 * (lo + hi)))
    return math.atan2(w.imag, w.real)


@dataclass(frozen=True)
class StripSpread:
    spread: float
    centred_deviation: float

    @property
    def passed(self) -> bool:
        return self.spread < math.pi

    @property
    def tight_passed(self) -> bool:
        return self.centred_deviation <= 0.5 * math.pi

    def to_dict(self) -> dict:
        return {
            "spread": self.spread,
            "centred_deviation": self.centred_deviation,
            "passed": self.passed,
            "tight_passed": self.tight_passed,
        }


def strip_arg_spread(
    m: LogPowerMap, y_low: float, *, height: float = 0.8 * math.pi, n: int = 128
) -> StripSpread:
    """Spread of arg zeta' over the substrip {x > varsigma, y_low <= y <= y_low + height}."""
    if y_low < -0.5 * math.pi or y_low + height > 0.5 * math.pi:
        raise MapDomainError(
            f"substrip [{y_low}, {y_low + height}] leaves the strip |y| < pi/2"
        )
    xs = np.geomspace(max(m.strip_cutoff, 1.0) * (1.0 + 1e-9), _BOUNDARY_X_MAX, n)
    inset = 1e-9
    ys = np.linspace(y_low + inset, y_low + height - inset, n)
    z = xs[:, None] + 1j * ys[None, :]
    # arg zeta' = y + A arg z + arg(1 + A/z), continuous on the substrip
    args = z.imag + m.A * np.angle(z) + np.angle(1.0 + m.A / z)
    centre = y_low + 0.5 * height
    return StripSpread(
        spread=float(args.max() - args.min()),
        centred_deviation=float(np.max(np.abs(args - centre))),
    )


# ---------------------------------------------------------------------------
# Arc sector map of the non-resonance example
# ---------------------------------------------------------------------------

def arc_sector_map_array(
    s: float, eps: float, zeta: np.ndarray, *, start_angle: float | None = None
) -> np.ndarray:
    """z0 zeta^{1/(s+2-eps)}: the upper half-plane onto a sector of opening pi/(s+2-eps).

    The default start angle centres the sector on the arc I+ around arg 0.
    """
    zeta = np.asarray(zeta, dtype=complex)
    if (zeta.imag <= 0.0).any():
        raise MapDomainError("arc_sector_map needs Im zeta > 0")
    power = 1.0 / (s + 2.0 - eps)
    if start_angle is None:
        start_angle = -0.5 * math.pi * power
    return np.exp(1j * start_angle) * zeta**power


def arc_sector_map(s: float, eps: float, zeta: complex, **kwargs) -> complex:
    return complex(arc_sector_map_array(s, eps, np.asarray([zeta]), **kwargs)[0])

"""Homogeneous potentials F = Phi + F~ for radially homogeneous fields, the
sign-definiteness criterion of the non-resonance case, and the two-arc example
profile whose potential changes sign.

For B = b(psi) r^s the reduced profile b~ = b - beta0 is solved mode by mode from
phi'' + (s+2)^2 phi = b~, giving F = (beta0 (s+2)^-2 + phi(psi)) r^{s+2}.
"""
import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from pauli_zeromodes.field.configs import TWO_PI, HomogeneousFieldConfig, synthesize

logger = logging.getLogger(__name__)

RESONANCE_TOL = 1e-12
SIGN_GRID = 4096
RESIDUAL_GRID = 256


class ResonanceError(ValueError):
    """Raised when s + 2 is an integer m and the profile has modes at +-m."""


class SignCriterionError(ValueError):
    """Raised when the sign-definiteness criterion does not apply (beta0 = 0)."""


@dataclass(frozen=True)
class CircleODESolution:
    s: float
    phi_coeffs: tuple[tuple[int, complex], ...]
    residual_norm: float
    beta0: float

    @property
    def m(self) -> float:
        return self.s + 2.0

    @property
    def coefficients(self) -> dict[int, complex]:
        return {int(n): complex(c) for n, c in self.phi_coeffs}

    def phi(self, psi: float | np.ndarray) -> float | np.ndarray:
        vals = synthesize(self.coefficients, np.atleast_1d(np.asarray(psi, dtype=float)))
        return float(vals[0]) if np.ndim(psi) == 0 else vals

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "beta0": self.beta0,
            "phi": [[n, c.real, c.imag] for n, c in sorted(self.coefficients.items())],
            "residual": self.residual_norm,
        }


def _resonant_index(m: float) -> int | None:
    k = round(m)
    return int(k) if abs(m - k) < RESONANCE_TOL else None


def circle_ode_residual(cfg: HomogeneousFieldConfig, sol: CircleODESolution) -> float:
    """L2 norm over the circle of phi'' + (s+2)^2 phi - (b - beta0).

    phi is re-synthesized on a fresh grid and differentiated spectrally; the grid
    resolves every mode of both series without aliasing.
    """
    target = {n: c for n, c in cfg.coefficients.items() if n != 0}
    phi = sol.coefficients
    n_max = max((abs(n) for n in (*target, *phi)), default=0)
    grid = max(RESIDUAL_GRID, 4 * (n_max + 1))
    psi = np.linspace(0.0, TWO_PI, grid, endpoint=False)
    values = synthesize(phi, psi)
    spectrum = np.fft.rfft(values)
    spectrum[n_max + 1 :] = 0.0
    k = np.fft.rfftfreq(grid, d=1.0 / grid)
    d2 = np.fft.irfft(-(k * k) * spectrum, n=grid)
    res = d2 + sol.m**2 * values - synthesize(target, psi)
    return float(math.sqrt(TWO_PI * np.mean(res * res)))


def solve_circle_ode(cfg: HomogeneousFieldConfig) -> CircleODESolution:
    """Solve phi'' + (s+2)^2 phi = b - beta0 on the circle by Fourier division."""
    m = cfg.s + 2.0
    resonant = _resonant_index(m)
    coeffs = cfg.coefficients
    phi: dict[int, complex] = {}
    for n, b_n in sorted(coeffs.items()):
        if n == 0:
            continue
        if resonant is not None and abs(n) == resonant:
            if abs(b_n) > RESONANCE_TOL:
                raise ResonanceError(
                    f"s={cfg.s}: s+2={resonant} is an integer and the profile has "
                    f"b_{n}={b_n}; the potential would need an r^{resonant} log r term"
                )
            phi[n] = 0j
            continue
        phi[n] = b_n / (m * m - n * n)
    sol = CircleODESolution(
        s=cfg.s,
        phi_coeffs=tuple(sorted(phi.items())),
        residual_norm=0.0,
        beta0=cfg.beta0,
    )
    residual = circle_ode_residual(cfg, sol)
    logger.debug("Circle ODE s=%s: %d modes, residual %.3e", cfg.s, len(phi), residual)
    return replace(sol, residual_norm=residual)


def eval_homogeneous_F_array(sol: CircleODESolution, z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    psi = np.arctan2(z.imag, z.real)
    angular = sol.beta0 / sol.m**2 + synthesize(sol.coefficients, psi)
    return angular * np.abs(z) ** sol.m


def eval_homogeneous_F(sol: CircleODESolution, z: complex) -> float:
    """(beta0 (s+2)^-2 + phi(arg z)) |z|^{s+2}; zero at the origin since s+2 > 0."""
    if z == 0:
        return 0.0
    return float(eval_homogeneous_F_array(sol, np.asarray([z]))[0])


@dataclass(frozen=True)
class SignDefiniteResult:
    holds: bool
    margin: float
    sup_phi: float
    lipschitz_pad: float
    scale: float

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "margin": self.margin,
            "sup_phi": self.sup_phi,
            "lipschitz_pad": self.lipschitz_pad,
            "scale": self.scale,
        }


def sign_definite_check(sol: CircleODESolution, *, grid: int = SIGN_GRID) -> SignDefiniteResult:
    """Certify sup |phi| < |beta0| (s+2)^-2 on a dense grid plus a Lipschitz pad.

    When it holds, F has the sign of beta0 and |F| >= margin r^{s+2}.
    """
    if sol.beta0 == 0.0:
        raise SignCriterionError("beta0 = 0: the profile mean does not fix a sign")
    psi = np.linspace(0.0, TWO_PI, grid, endpoint=False)
    coeffs = sol.coefficients
    sup_phi = float(np.max(np.abs(synthesize(coeffs, psi)))) if coeffs else 0.0
    pad = (math.pi / grid) * sum(abs(n) * abs(c) for n, c in coeffs.items())
    scale = abs(sol.beta0) / sol.m**2
    margin = scale - (sup_phi + pad)
    return SignDefiniteResult(
        holds=margin > 0.0, margin=margin, sup_phi=sup_phi, lipschitz_pad=pad, scale=scale
    )


# ---------------------------------------------------------------------------
# Two-arc example profile
# ---------------------------------------------------------------------------

def _smoothstep(t: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Quintic smoothstep and its first two derivatives."""
    s = t * t * t * (t * (6.0 * t - 15.0) + 10.0)
    ds = 30.0 * t * t * (1.0 - t) ** 2
    d2s = 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t)
    return s, ds, d2s


@dataclass(frozen=True)
class ExampleProfile:
    """Potential profile f with f = beta_plus on I+ (centred at 0) and beta_minus on
    I- (centred at pi), joined by quintic smoothsteps; F = f(psi) r^{s+2}."""

    s: float
    eps: float
    beta_plus: float
    beta_minus: float
    arc_length: float
    fourier: tuple[tuple[int, complex], ...]
    quarter_bound_violated: bool

    @property
    def m(self) -> float:
        return self.s + 2.0

    @property
    def arc_plus(self) -> tuple[float, float]:
        return -self.arc_length / 2.0, self.arc_length / 2.0

    @property
    def arc_minus(self) -> tuple[float, float]:
        return math.pi - self.arc_length / 2.0, math.pi + self.arc_length / 2.0

    def _eval(self, psi: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        u = np.mod(np.asarray(psi, dtype=float) + math.pi, TWO_PI) - math.pi
        a = np.abs(u)
        half = self.arc_length / 2.0
        gap = math.pi - self.arc_length
        t = np.clip((a - half) / gap, 0.0, 1.0)
        s, ds, d2s = _smoothstep(t)
        jump = self.beta_minus - self.beta_plus
        f = self.beta_plus + jump * s
        df = np.sign(u) * jump * ds / gap
        d2f = jump * d2s / gap**2
        return f, df, d2f

    def value(self, psi: float | np.ndarray) -> float | np.ndarray:
        f = self._eval(np.atleast_1d(psi))[0]
        return float(f[0]) if np.ndim(psi) == 0 else f

    def derivatives(self, psi: float | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        _, df, d2f = self._eval(np.atleast_1d(psi))
        return df, d2f

    def potential_array(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        f = self._eval(np.arctan2(z.imag, z.real))[0]
        return f * np.abs(z) ** self.m

    def implied_field(self, z: complex) -> float:
        """Delta F = (f'' + (s+2)^2 f) r^s."""
        if z == 0:
            raise ValueError("implied field is singular at the origin for s < 0")
        f, _, d2f = self._eval(np.asarray([math.atan2(z.imag, z.real)]))
        return float((d2f[0] + self.m**2 * f[0]) * abs(z) ** self.s)

    def as_field_config(self) -> HomogeneousFieldConfig:
        """The homogeneous field Delta F, from the truncated Fourier series of f."""
        field = {n: (self.m**2 - n * n) * c for n, c in self.fourier}
        return HomogeneousFieldConfig(s=self.s, fourier=tuple(sorted(field.items())))


def _real_fourier(values: np.ndarray, n_modes: int) -> tuple[tuple[int, complex], ...]:
    spectrum = np.fft.rfft(values) / values.size
    out: dict[int, complex] = {0: complex(spectrum[0].real)}
    for n in range(1, min(n_modes, spectrum.size - 1) + 1):
        c = complex(spectrum[n])
        out[n] = c
        out[-n] = c.conjugate()
    return tuple(sorted(out.items()))


def build_example_profile(
    s: float,
    eps: float,
    beta_plus: float,
    beta_minus: float,
    *,
    strict: bool = False,
    n_modes: int = 512,
    n_samples: int = 4096,
) -> ExampleProfile:
    """Two-arc profile of the non-resonance example.

    Arcs have length pi / (s + 2 - eps).  The construction asks for arcs shorter
    than pi/2, which cannot hold for s <= 0; the violation is flagged, and only
    rejected when ``strict`` is set.
    """
    if not (-1.0 < s <= 0.0):
        raise ValueError(f"s must lie in (-1, 0], got {s}")
    if not (0.0 < eps < (1.0 + s) / 4.0):
        raise ValueError(f"eps must lie in (0, (1+s)/4) = (0, {(1.0 + s) / 4.0}), got {eps}")
    if not (beta_plus > 0.0 and beta_minus < 0.0):
        raise ValueError(
            f"need beta_plus > 0 and beta_minus < 0, got {beta_plus}, {beta_minus}"
        )
    arc = math.pi / (s + 2.0 - eps)
    if arc >= math.pi:
        raise ValueError(f"arcs of length {arc:.6f} cannot be disjoint with room for transitions")
    violated = arc >= math.pi / 2.0
    if violated:
        if strict:
            raise ValueError(f"arc length {arc:.6f} >= pi/2 (s={s}, eps={eps})")
        logger.warning("Arc length %.6f exceeds pi/2 for s=%s, eps=%s", arc, s, eps)
    partial = ExampleProfile(
        s=s,
        eps=eps,
        beta_plus=beta_plus,
        beta_minus=beta_minus,
        arc_length=arc,
        fourier=(),
        quarter_bound_violated=violated,
    )
    samples = partial._eval(np.linspace(0.0, TWO_PI, n_samples, endpoint=False))[0]
    return ExampleProfile(
        s=s,
        eps=eps,
        beta_plus=beta_plus,
        beta_minus=beta_minus,
        arc_length=arc,
        fourier=_real_fourier(samples, n_modes),
        quarter_bound_violated=violated,
    )


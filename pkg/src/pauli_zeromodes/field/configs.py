"""Magnetic-field configurations: the piecewise-constant sector field and
radially homogeneous fields b(psi) r^s.

Both configurations are frozen; evaluation is pure.  JSON round-trip:
``{"kind": "sector", "alpha": ..., "b1": ...}`` and
``{"kind": "homogeneous", "s": ..., "fourier": [[n, re, im], ...]}``.
"""
import cmath
import logging
import math
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
_CONJ_TOL = 1e-12


class FieldDomainError(ValueError):
    """Raised when a field or potential is evaluated where it is undefined."""


def principal_angle(z: complex) -> float:
    """Return arg z in [0, 2*pi)."""
    psi = math.atan2(z.imag, z.real) % TWO_PI
    # -tiny % 2pi rounds to 2pi
    return 0.0 if psi >= TWO_PI else psi


@dataclass(frozen=True)
class SectorFieldConfig:
    """B = 2*b1 on the sector 0 < arg z < alpha, B = 2*b2 = 2 elsewhere."""

    alpha: float
    b1: float

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha < math.pi):
            raise ValueError(f"alpha must lie in (0, pi), got {self.alpha}")
        if not self.b1 < 0.0:
            raise ValueError(f"b1 must be strictly negative, got {self.b1}")

    @property
    def b2(self) -> float:
        return 1.0

    @property
    def c0(self) -> float:
        return 1.0 - self.b1

    @property
    def theta(self) -> float:
        """Complementary angle pi - alpha."""
        return math.pi - self.alpha

    def in_omega1(self, z: complex) -> bool:
        """True iff arg z lies in the open sector (0, alpha); rays go to Omega_2."""
        return 0.0 < principal_angle(z) < self.alpha

    def to_dict(self) -> dict:
        return {"kind": "sector", "alpha": self.alpha, "b1": self.b1}


@dataclass(frozen=True)
class HomogeneousFieldConfig:
    """B(r e^{i psi}) = b(psi) r^s with b given by complex Fourier coefficients.

    ``fourier`` holds ``(n, b_n)`` pairs with b(psi) = sum_n b_n e^{i n psi};
    conjugate symmetry b_{-n} = conj(b_n) keeps the profile real.
    """

    s: float
    fourier: tuple[tuple[int, complex], ...]

    def __post_init__(self) -> None:
        if not (-2.0 < self.s <= 0.0):
            raise ValueError(f"homogeneity degree s must lie in (-2, 0], got {self.s}")
        coeffs = self.coefficients
        if len(coeffs) != len(self.fourier):
            raise ValueError("duplicate Fourier indices in profile")
        for n, c in coeffs.items():
            partner = coeffs.get(-n, 0j)
            if abs(partner - c.conjugate()) > _CONJ_TOL * max(1.0, abs(c)):
                raise ValueError(
                    f"profile is not conjugate-symmetric at n={n}: b_n={c}, b_-n={partner}"
                )

    @classmethod
    def from_series(
        cls,
        s: float,
        mean: float,
        *,
        cos: Mapping[int, float] | None = None,
        sin: Mapping[int, float] | None = None,
    ) -> "HomogeneousFieldConfig":
        """Build from a real series mean + sum a_n cos(n psi) + sum c_n sin(n psi)."""
        acc: dict[int, complex] = {}
        if mean:
            acc[0] = complex(mean)
        for n, a in (cos or {}).items():
            if n < 1:
                raise ValueError(f"cosine index must be >= 1, got {n}")
            acc[n] = acc.get(n, 0j) + a / 2.0
            acc[-n] = acc.get(-n, 0j) + a / 2.0
        for n, c in (sin or {}).items():
            if n < 1:
                raise ValueError(f"sine index must be >= 1, got {n}")
            acc[n] = acc.get(n, 0j) - 0.5j * c
            acc[-n] = acc.get(-n, 0j) + 0.5j * c
        return cls(s=s, fourier=tuple(sorted(acc.items())))

    @property
    def coefficients(self) -> dict[int, complex]:
        return {int(n): complex(c) for n, c in self.fourier}

    @property
    def beta0(self) -> float:
        """Mean of the profile (the n = 0 coefficient)."""
        return self.coefficients.get(0, 0j).real

    def profile(self, psi: float) -> float:
        """Fourier synthesis of b(psi); always real."""
        total = 0j
        for n, c in sorted(self.coefficients.items()):
            total += c * cmath.exp(1j * n * psi)
        return total.real

    def to_dict(self) -> dict:
        return {
            "kind": "homogeneous",
            "s": self.s,
            "fourier": [[n, c.real, c.imag] for n, c in sorted(self.coefficients.items())],
        }


def synthesize(coeffs: Mapping[int, complex], psi: np.ndarray) -> np.ndarray:
    """Real part of sum_n c_n e^{i n psi} on an array of angles."""
    psi = np.asarray(psi, dtype=float)
    out = np.zeros(psi.shape, dtype=complex)
    for n, c in sorted(coeffs.items()):
        out += c * np.exp(1j * n * psi)
    return out.real


def sector_field_value(cfg: SectorFieldConfig, z: complex) -> float:
    """Return B(z): 2*b1 in the open sector Omega_1, 2 on Omega_2 and its boundary rays."""
    if z == 0:
        raise FieldDomainError("sector field is undefined at the origin")
    return 2.0 * cfg.b1 if cfg.in_omega1(z) else 2.0 * cfg.b2


def homogeneous_field_value(cfg: HomogeneousFieldConfig, z: complex) -> float:
    """Return b(arg z) |z|^s."""
    if z == 0:
        if cfg.s < 0:
            raise FieldDomainError(f"field with s={cfg.s} is unbounded at the origin")
        return cfg.profile(0.0)
    return cfg.profile(math.atan2(z.imag, z.real)) * abs(z) ** cfg.s


def field_config_from_dict(data: Mapping) -> SectorFieldConfig | HomogeneousFieldConfig:
    """Parse a field configuration document; raises ValueError when malformed."""
    if not isinstance(data, Mapping):
        raise ValueError(f"field configuration must be a JSON object, got {type(data).__name__}")
    kind = data.get("kind")
    try:
        if kind == "sector":
            return SectorFieldConfig(alpha=float(data["alpha"]), b1=float(data["b1"]))
        if kind == "homogeneous":
            fourier = tuple(
                (int(n), complex(float(re), float(im))) for n, re, im in data["fourier"]
            )
            return HomogeneousFieldConfig(s=float(data["s"]), fourier=fourier)
    except (KeyError, TypeError) as e:
        raise ValueError(f"malformed {kind} field configuration: {e}") from e
    raise ValueError(f"unknown field kind {kind!r} (expected 'sector' or 'homogeneous')")

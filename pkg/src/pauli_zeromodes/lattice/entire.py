"""Subharmonic lattice sum V, the log-modulus of the Weierstrass product and the
integral model W.

    V(z) = sigma^2 * sum_Q Re(log(1 - z^2/a_Q^2) + z^2/a_Q^2)

over the marked points of a CellSet; the product Phi never appears in linear
scale, only through log|Phi_alpha(z)| = (kappa/2) V(z e^{-i(alpha+pi)/2}).
Sums are reduced in a fixed pairwise order (see ``_summation``).
"""
import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.polynomial.legendre import leggauss

from pauli_zeromodes.config import CELL_CHUNK, GL_ORDER, TAIL_WARN_FRACTION, W_MAX_PANELS, W_REL_TOL
from pauli_zeromodes.lattice._summation import pairwise_reduce
from pauli_zeromodes.lattice.cells import CellSet, validate_cells

logger = logging.getLogger(__name__)

SINGULAR_TOL = 1e-12
_BLOCK_ELEMENTS = 1 << 20


class SingularityError(ValueError):
    """Raised when V is evaluated at (or within 1e-12 of) a lattice zero +-a_Q."""


class BranchCutError(ValueError):
    """Raised when the closed form v is evaluated on its branch cut."""


class ExcludedDiskError(ValueError):
    """Raised when a V-W comparison point lies in a sigma/4 disk around +-a_Q."""


class QuadratureError(RuntimeError):
    """Raised when the theta-quadrature of W does not reach its tolerance."""


@dataclass(frozen=True)
class EntireEvaluator:
    """Lattice sums over a cell set.

    ``tail_model`` enables the warning when the bound on the omitted cells
    exceeds TAIL_WARN_FRACTION of |V|; the bound itself is always reported.
    """

    cellset: CellSet
    kappa: float
    tail_model: bool = True
    chunk: int = CELL_CHUNK

    def __post_init__(self) -> None:
        if not self.kappa > 0.0:
            raise ValueError(f"kappa must be > 0, got {self.kappa}")
        if self.chunk < 1:
            raise ValueError(f"chunk must be >= 1, got {self.chunk}")

    @property
    def sigma(self) -> float:
        return self.cellset.sigma

    @property
    def eps(self) -> float:
        return self.cellset.eps

    @property
    def tail_radius(self) -> float:
        """Radius beyond which every omitted marked point lies."""
        return self.cellset.r_cut - 2.0 * self.sigma / math.sqrt(self.eps)

    @cached_property
    def inv_a2(self) -> np.ndarray:
        return 1.0 / self.cellset.marked_points**2

    @cached_property
    def inv_a_both(self) -> np.ndarray:
        """1/a over Q_0 and Q_1 (the points -a_Q and a_Q)."""
        inv = 1.0 / self.cellset.marked_points
        return np.concatenate([-inv, inv])


@dataclass(frozen=True)
class LatticeValue:
    value: float
    tail_bound: float


def build_evaluator(
    cs: CellSet, kappa: float | None = None, *, validate: bool = True, tail_model: bool = True
) -> EntireEvaluator:
    """Evaluator over ``cs``; kappa defaults to sigma^-2.  Rejects invalid partitions."""
    if validate:
        report = validate_cells(cs)
        if not report["passed"]:
            failed = [c["name"] for c in report["checks"] if not c["passed"]]
            raise ValueError(f"cell set fails validation: {', '.join(failed)}")
    if kappa is None:
        kappa = 1.0 / cs.sigma**2
    return EntireEvaluator(cellset=cs, kappa=kappa, tail_model=tail_model)


# ---------------------------------------------------------------------------
# Lattice sums
# ---------------------------------------------------------------------------

def _log_abs_one_minus(w: np.ndarray) -> np.ndarray:
    """log|1 - w| without cancellation for small w."""
    with np.errstate(divide="ignore"):
        return 0.5 * np.log1p(w.real * w.real + w.imag * w.imag - 2.0 * w.real)


def _symmetric_terms(z: np.ndarray, inv_a2: np.ndarray) -> np.ndarray:
    w = (z * z)[:, None] * inv_a2[None, :]
    return _log_abs_one_minus(w) + w.real


def _unsymmetric_terms(z: np.ndarray, inv_a: np.ndarray) -> np.ndarray:
    w = z[:, None] * inv_a[None, :]
    return _log_abs_one_minus(w) + w.real + 0.5 * (w * w).real


def _lattice_sum(z: np.ndarray, coeffs: np.ndarray, terms, chunk: int) -> np.ndarray:
    """sum_j terms(z, coeffs)_j per point; -inf where a term hits a zero."""
    z = np.asarray(z, dtype=complex).ravel()
    out = np.empty(z.shape, dtype=float)
    n = coeffs.size
    if n == 0:
        out[:] = 0.0
        return out
    n_chunks = -(-n // chunk)
    block = max(1, _BLOCK_ELEMENTS // min(chunk, n))
    for start in range(0, z.size, block):
        zb = z[start : start + block]
        partial_s = np.empty((zb.size, n_chunks))
        partial_c = np.empty((zb.size, n_chunks))
        hit = np.zeros(zb.size, dtype=bool)
        for j in range(n_chunks):
            vals = terms(zb, coeffs[j * chunk : (j + 1) * chunk])
            zero = np.isneginf(vals)
            if zero.any():
                hit |= zero.any(axis=1)
                vals = np.where(zero, 0.0, vals)
            partial_s[:, j], partial_c[:, j] = pairwise_reduce(vals)
        s, c = pairwise_reduce(partial_s, partial_c)
        total = s + c
        total[hit] = -np.inf
        out[start : start + block] = total
    return out


def eval_V_many(e: EntireEvaluator, z: np.ndarray) -> np.ndarray:
    """Vectorized V (no tail bound); -inf at lattice zeros."""
    z = np.asarray(z, dtype=complex)
    vals = _lattice_sum(z, e.inv_a2, _symmetric_terms, e.chunk)
    return (e.sigma**2 * vals).reshape(z.shape)


def _nearest_zero(e: EntireEvaluator, z: complex) -> tuple[int, complex, float]:
    """Index, location and distance of the lattice zero +-a_Q nearest to z."""
    pts = e.cellset.marked_points
    d_plus = np.abs(z - pts)
    d_minus = np.abs(z + pts)
    i_plus = int(np.argmin(d_plus))
    i_minus = int(np.argmin(d_minus))
    if d_plus[i_plus] <= d_minus[i_minus]:
        return i_plus, complex(pts[i_plus]), float(d_plus[i_plus])
    return i_minus, -complex(pts[i_minus]), float(d_minus[i_minus])


def tail_bound(e: EntireEvaluator, z: complex) -> float:
    """Bound on the omitted cells: each term is at most |w|^2 / (2(1-|w|)), w = z^2/a^2,
    integrated over the sector beyond ``tail_radius``."""
    r2 = abs(z) ** 2
    rt = e.tail_radius
    if rt <= abs(z):
        return math.inf
    return e.eps * r2 * r2 / (rt * rt - r2)


def eval_V(e: EntireEvaluator, z: complex) -> LatticeValue:
    """V(z) together with the bound on the truncated tail."""
    if z == 0:
        return LatticeValue(value=0.0, tail_bound=0.0)
    if len(e.cellset):
        _, p, dist = _nearest_zero(e, z)
        if dist <= SINGULAR_TOL:
            raise SingularityError(f"V has a logarithmic singularity at {p} (z={z})")
    value = float(eval_V_many(e, np.asarray([z]))[0])
    bound = tail_bound(e, z)
    if e.tail_model and bound > TAIL_WARN_FRACTION * abs(value):
        logger.warning(
            "Tail bound %.3e exceeds %.0f%% of |V|=%.3e at z=%s; increase r_cut",
            bound,
            100 * TAIL_WARN_FRACTION,
            abs(value),
            z,
        )
    return LatticeValue(value=value, tail_bound=bound)


def eval_V_unsymmetrized(e: EntireEvaluator, z: complex) -> float:
    """sigma^2 sum over Q_0 and Q_1 of Re(log(1 - z/a) + z/a + z^2/(2a^2))."""
    vals = _lattice_sum(np.asarray([z]), e.inv_a_both, _unsymmetric_terms, e.chunk)
    return float(e.sigma**2 * vals[0])


def eval_V_near(e: EntireEvaluator, z: complex) -> float:
    """V(z) - sigma^2 log|1 - z/p| for the lattice zero p nearest to z; finite at p."""
    if not len(e.cellset):
        return 0.0
    j, p, _ = _nearest_zero(e, z)
    keep = np.ones(len(e.cellset), dtype=bool)
    keep[j] = False
    rest = _lattice_sum(np.asarray([z]), e.inv_a2[keep], _symmetric_terms, e.chunk)[0]
    # the partner factor 1 + z/p and the quadratic correction of the removed cell
    w = z / p
    own = math.log(abs(1.0 + w)) + (w * w).real
    return float(e.sigma**2 * (rest + own))


def _rotation(alpha: float) -> complex:
    return complex(math.cos(-(alpha + math.pi) / 2.0), math.sin(-(alpha + math.pi) / 2.0))


def eval_logPhi_alpha_many(e: EntireEvaluator, alpha: float, z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    return 0.5 * e.kappa * eval_V_many(e, z * _rotation(alpha))


def eval_logPhi_alpha(e: EntireEvaluator, alpha: float, z: complex) -> float:
    """log|Phi_alpha(z)| = (kappa/2) V(z e^{-i(alpha+pi)/2}); -inf at zeros of Phi_alpha."""
    if z == 0:
        return 0.0
    zeta = z * _rotation(alpha)
    if len(e.cellset) and _nearest_zero(e, zeta)[2] <= SINGULAR_TOL:
        return -math.inf
    return 0.5 * e.kappa * eval_V(e, zeta).value


# ---------------------------------------------------------------------------
# Integral model
# ---------------------------------------------------------------------------

def eval_v_closed(zeta: complex) -> complex:
    """v(zeta) = ((zeta^2 - 1)/2) log(1 - zeta^2) - zeta^2/2, principal branch."""
    zeta = complex(zeta)
    if zeta.imag == 0.0 and abs(zeta.real) >= 1.0:
        raise BranchCutError(f"v is cut along real |zeta| >= 1, got {zeta}")
    z2 = zeta * zeta
    return 0.5 * (z2 - 1.0) * np.log(1.0 - z2) - 0.5 * z2


def _v_upper(zeta: np.ndarray) -> np.ndarray:
    """v on the closed upper half-plane, the cut approached from above."""
    z2 = zeta * zeta
    one_minus = 1.0 - z2
    log_term = np.log(one_minus)
    on_cut = (zeta.imag == 0.0) & (np.abs(zeta.real) > 1.0)
    if on_cut.any():
        edge = np.log(np.abs(one_minus)) - 1j * math.pi * np.sign(zeta.real)
        log_term = np.where(on_cut, edge, log_term)
    return 0.5 * (z2 - 1.0) * log_term - 0.5 * z2


def _gl_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(order)
    # exact mirror symmetry of the nodes
    return 0.5 * (x - x[::-1]), 0.5 * (w + w[::-1])


def _panel_sum(z: complex, a: float, b: float, panels: int, upper: bool, x, w) -> complex:
    edges = np.linspace(a, b, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    theta = mid[:, None] + half[:, None] * x[None, :]
    zeta = z * np.exp(-1j * theta)
    if upper:
        vals = _v_upper(zeta)
    else:
        vals = np.conj(_v_upper(np.conj(zeta)))
    return complex(np.sum(half[:, None] * w[None, :] * vals))


def _theta_breaks(eps: float, phi: float) -> list[float]:
    """Split points of [-eps, eps] where z e^{-i theta} meets the real axis."""
    cuts = [phi - k * math.pi for k in range(-2, 3)]
    return [-eps] + sorted(c for c in cuts if -eps < c < eps) + [eps]


def eval_W(eps: float, z: complex, *, rel_tol: float = W_REL_TOL) -> complex:
    """W(z) = integral over |theta| <= eps of v(z e^{-i theta}).

    Each piece of the path stays in one closed half-plane and is integrated with
    that half-plane's branch of v by composite Gauss-Legendre, doubling the
    panels until successive estimates agree to ``rel_tol``.
    """
    if not (0.0 < eps < math.pi / 2.0):
        raise ValueError(f"eps must lie in (0, pi/2), got {eps}")
    z = complex(z)
    if z == 0:
        return 0j
    x, w = _gl_rule(max(GL_ORDER, 16))
    phi = math.atan2(z.imag, z.real)
    breaks = _theta_breaks(eps, phi)
    total = 0j
    for a, b in zip(breaks, breaks[1:]):
        mid_arg = phi - 0.5 * (a + b)
        upper = math.sin(mid_arg) > 0.0
        panels = 2
        prev = _panel_sum(z, a, b, panels, upper, x, w)
        while True:
            panels *= 2
            if panels > W_MAX_PANELS:
                raise QuadratureError(
                    f"W({eps}, {z}) did not converge on [{a:.6g}, {b:.6g}] "
                    f"within {W_MAX_PANELS} panels"
                )
            cur = _panel_sum(z, a, b, panels, upper, x, w)
            if abs(cur - prev) <= rel_tol * max(abs(cur), 1e-300):
                break
            prev = cur
        total += cur
    return total


def asymptotic_W(eps: float, z: complex) -> float:
    """Leading term |z|^2 log|z| sin(2 eps) cos(2 arg z) of Re W."""
    r = abs(z)
    if r == 0.0:
        return 0.0
    phi = math.atan2(z.imag, z.real)
    return r * r * math.log(r) * math.sin(2.0 * eps) * math.cos(2.0 * phi)


# ---------------------------------------------------------------------------
# Comparison
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VWComparison:
    z: complex
    V: float
    re_W: float
    diff: float
    budget: float
    ratio: float
    tail_bound: float
    near: bool

    def to_row(self) -> dict:
        return {
            "z_re": self.z.real,
            "z_im": self.z.imag,
            "V": self.V,
            "ReW": self.re_W,
            "diff": self.diff,
            "budget": self.budget,
            "tail_bound": self.tail_bound,
        }


def comparison_budget(eps: float, sigma: float, z: complex) -> float:
    """eps |z|^2 + |log sigma| / eps + sigma |z| (all constants set to 1)."""
    r = abs(z)
    return eps * r * r + abs(math.log(sigma)) / eps + sigma * r


def compare_V_W(e: EntireEvaluator, z: complex, *, near: bool = False) -> VWComparison:
    """V - Re W with its normalized budget.

    Points within sigma/4 of a lattice zero need ``near=True``, which removes the
    nearest singular logarithm from V first.
    """
    sigma = e.sigma
    if len(e.cellset):
        _, p, dist = _nearest_zero(e, z)
        if dist <= sigma / 4.0 and not near:
            raise ExcludedDiskError(
                f"z={z} lies within sigma/4={sigma / 4.0} of the lattice zero {p}; "
                "use the near-lattice comparison"
            )
    if near:
        v_val = eval_V_near(e, z)
    else:
        v_val = eval_V(e, z).value
    re_w = eval_W(e.eps, z).real
    diff = v_val - re_w
    budget = comparison_budget(e.eps, sigma, z)
    return VWComparison(
        z=complex(z),
        V=v_val,
        re_W=re_w,
        diff=diff,
        budget=budget,
        ratio=abs(diff) / budget,
        tail_bound=tail_bound(e, z),
        near=near,
    )


def growth_cap_constant(
    e: EntireEvaluator, alpha: float, psi: float, radii: np.ndarray
) -> float:
    """Smallest K with log|Phi_alpha| <= (kappa/2) r^2 log r sin(2 eps) cos(2(psi - (alpha+pi)/2))
    + K (eps kappa r^2 + |log sigma|) at every sampled radius on the ray arg z = psi."""
    radii = np.asarray(radii, dtype=float)
    z = radii * complex(math.cos(psi), math.sin(psi))
    log_phi = eval_logPhi_alpha_many(e, alpha, z)
    lead = (
        0.5
        * e.kappa
        * radii**2
        * np.log(radii)
        * math.sin(2.0 * e.eps)
        * math.cos(2.0 * (psi - (alpha + math.pi) / 2.0))
    )
    scale = e.eps * e.kappa * radii**2 + abs(math.log(e.sigma))
    finite = np.isfinite(log_phi)
    if not finite.any():
        return -math.inf
    return float(np.max((log_phi[finite] - lead[finite]) / scale[finite]))

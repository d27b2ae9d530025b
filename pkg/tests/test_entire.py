"""Tests for the lattice sum V, log|Phi_alpha| and the integral model W."""
import cmath
import dataclasses
import math
import os

import numpy as np
import pytest
from scipy import integrate

from pauli_zeromodes.lattice import (
    BranchCutError,
    ExcludedDiskError,
    SingularityError,
    asymptotic_W,
    build_evaluator,
    compare_V_W,
    eval_logPhi_alpha,
    eval_V,
    eval_v_closed,
    eval_V_many,
    eval_V_near,
    eval_V_unsymmetrized,
    eval_W,
    generate_cells,
    growth_cap_constant,
)
from pauli_zeromodes.modes import log_quadratic_fit

_slow = pytest.mark.skipif(
    os.environ.get("RUN_SLOW_TESTS") != "1", reason="set RUN_SLOW_TESTS=1 for long acceptance runs"
)


def _v_by_quadrature(zeta: complex) -> complex:
    """v(zeta) as the integral of t log(1 - t^2) along the segment [0, zeta]."""

    def integrand(s: float) -> complex:
        return zeta * zeta * s * cmath.log(1.0 - s * s * zeta * zeta)

    re, _ = integrate.quad(lambda s: integrand(s).real, 0.0, 1.0, epsabs=1e-13, epsrel=1e-12)
    im, _ = integrate.quad(lambda s: integrand(s).imag, 0.0, 1.0, epsabs=1e-13, epsrel=1e-12)
    return complex(re, im)


def _re_v(zeta: complex) -> float:
    # Re v is continuous across the cut, so any branch of log works here
    z2 = zeta * zeta
    return (0.5 * (z2 - 1.0) * np.log(1.0 - z2 + 0j) - 0.5 * z2).real


class TestEvalV:
    def test_zero_at_origin(self, small_evaluator) -> None:
        assert eval_V(small_evaluator, 0j).value == 0.0

    def test_matches_unsymmetrized_sum(self, small_evaluator) -> None:
        for z in (10j, 7 + 3j, -4 + 12j):
            assert eval_V(small_evaluator, z).value == pytest.approx(
                eval_V_unsymmetrized(small_evaluator, z), rel=1e-12, abs=1e-9
            )

    @pytest.mark.parametrize("z", [3.0 + 4.0j, -7.0 + 2.0j, 5.0 + 20.0j])
    def test_conjugate_and_reflection_symmetry(self, small_evaluator, z: complex) -> None:
        v = eval_V(small_evaluator, z).value
        for w in (z.conjugate(), -z, -z.conjugate()):
            assert eval_V(small_evaluator, w).value == pytest.approx(v, rel=1e-12, abs=1e-10)

    def test_singular_at_lattice_point(self, small_evaluator) -> None:
        a = complex(small_evaluator.cellset.marked_points[3])
        with pytest.raises(SingularityError):
            eval_V(small_evaluator, a)
        with pytest.raises(SingularityError):
            eval_V(small_evaluator, -a)

    def test_near_form_is_finite_at_lattice_point(self, small_evaluator) -> None:
        a = complex(small_evaluator.cellset.marked_points[3])
        assert math.isfinite(eval_V_near(small_evaluator, a))

    def test_near_form_removes_one_logarithm(self, small_evaluator) -> None:
        a = complex(small_evaluator.cellset.marked_points[3])
        z = a + 0.1 * small_evaluator.sigma
        expected = eval_V(small_evaluator, z).value - small_evaluator.sigma**2 * math.log(
            abs(1.0 - z / a)
        )
        assert eval_V_near(small_evaluator, z) == pytest.approx(expected, rel=1e-10, abs=1e-9)

    def test_harmonic_away_from_zeros(self, small_evaluator) -> None:
        z, h = 20j, 1e-2
        stencil = np.array([z, z + h, z - h, z + 1j * h, z - 1j * h])
        v = eval_V_many(small_evaluator, stencil)
        lap = (v[1] + v[2] + v[3] + v[4] - 4.0 * v[0]) / h**2
        assert abs(lap) < 1e-5

    def test_tail_bound_reported(self, small_evaluator) -> None:
        assert eval_V(small_evaluator, 5j).tail_bound > 0.0
        assert math.isinf(eval_V(small_evaluator, 60j).tail_bound)

    def test_tail_warning(self, small_evaluator, caplog) -> None:
        with caplog.at_level("WARNING", logger="pauli_zeromodes.lattice.entire"):
            eval_V(small_evaluator, 40j)
        assert "increase r_cut" in caplog.text

    def test_rejects_invalid_partition(self, small_cells) -> None:
        broken = dataclasses.replace(small_cells, cells=small_cells.cells + small_cells.cells[:1])
        with pytest.raises(ValueError, match="validation"):
            build_evaluator(broken)


class TestLogPhi:
    def test_is_rotated_half_kappa_V(self, small_evaluator) -> None:
        alpha, z = 0.01, 3 + 4j
        rot = cmath.exp(-0.5j * (alpha + math.pi))
        expected = 0.5 * small_evaluator.kappa * eval_V(small_evaluator, z * rot).value
        assert eval_logPhi_alpha(small_evaluator, alpha, z) == pytest.approx(expected, rel=1e-14)

    def test_zero_sentinel(self, small_evaluator) -> None:
        alpha = 0.01
        a = complex(small_evaluator.cellset.marked_points[0])
        z = a / cmath.exp(-0.5j * (alpha + math.pi))
        assert eval_logPhi_alpha(small_evaluator, alpha, z) == -math.inf

    def test_matches_direct_product(self, small_evaluator) -> None:
        alpha, z = 0.01, 0.3 + 0.2j
        zeta = z * cmath.exp(-0.5j * (alpha + math.pi))
        log_prod = 0.0
        for a in small_evaluator.cellset.marked_points:
            w = zeta * zeta / complex(a) ** 2
            log_prod += math.log(abs((1.0 - w) * cmath.exp(w)))
        expected = math.exp(0.5 * small_evaluator.kappa * small_evaluator.sigma**2 * log_prod)
        assert math.exp(eval_logPhi_alpha(small_evaluator, alpha, z)) == pytest.approx(
            expected, rel=1e-10
        )

    def test_growth_cap_constant_is_moderate(self, small_evaluator) -> None:
        radii = np.linspace(5.0, 30.0, 26)
        k = growth_cap_constant(small_evaluator, 0.01, math.pi, radii)
        assert math.isfinite(k)
        assert k <= 10.0


class TestClosedForm:
    def test_origin(self) -> None:
        assert eval_v_closed(0j) == 0

    def test_known_value(self) -> None:
        assert eval_v_closed(0.5j) == pytest.approx(-0.0144647, abs=1e-7)

    @pytest.mark.parametrize("r", [0.3, 0.9, 1.5, 3.0])
    @pytest.mark.parametrize("psi", [0.4, 1.2, 2.0, 2.8, -1.0])
    def test_matches_quadrature(self, r: float, psi: float) -> None:
        zeta = cmath.rect(r, psi)
        assert eval_v_closed(zeta) == pytest.approx(_v_by_quadrature(zeta), rel=1e-8, abs=1e-10)

    @pytest.mark.parametrize("zeta", [1.0, -1.0, 2.5, -7.0])
    def test_branch_cut(self, zeta: float) -> None:
        with pytest.raises(BranchCutError):
            eval_v_closed(complex(zeta, 0.0))


class TestIntegralModel:
    def test_asymptotic_value(self) -> None:
        assert asymptotic_W(0.1, 10.0) == pytest.approx(100 * math.log(10) * math.sin(0.2))
        assert asymptotic_W(0.1, 10.0) == pytest.approx(45.745, abs=1e-2)

    def test_asymptotic_vanishes_on_diagonal(self) -> None:
        assert asymptotic_W(0.1, cmath.rect(10.0, math.pi / 4)) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("r", [1e3, 1e4, 1e5, 1e6])
    def test_leading_asymptotics(self, r: float) -> None:
        ratio = eval_W(0.1, complex(r, 0.0)).real / asymptotic_W(0.1, complex(r, 0.0))
        assert 0.9 <= ratio <= 1.1

    @pytest.mark.parametrize("z", [5.0 + 0j, 3 + 2j, 0.5 + 0.05j, 20 * cmath.exp(0.05j)])
    def test_real_part_matches_quadrature(self, z: complex) -> None:
        expected, _ = integrate.quad(
            lambda t: _re_v(z * cmath.exp(-1j * t)), -0.1, 0.1, epsabs=1e-12, epsrel=1e-11,
            points=[math.atan2(z.imag, z.real)] if abs(math.atan2(z.imag, z.real)) < 0.1 else None,
        )
        assert eval_W(0.1, z).real == pytest.approx(expected, rel=1e-8, abs=1e-10)

    def test_conjugate_symmetry(self) -> None:
        z = 12 + 0.5j
        assert eval_W(0.1, z.conjugate()) == pytest.approx(eval_W(0.1, z).conjugate(), rel=1e-9)

    def test_rejects_wide_sector(self) -> None:
        with pytest.raises(ValueError):
            eval_W(2.0, 1j)


class TestCompare:
    def test_ratio_within_diagnostic_bound(self, small_evaluator) -> None:
        for r in (5.0, 10.0, 20.0):
            row = compare_V_W(small_evaluator, complex(0.0, r))
            assert row.ratio <= 10.0
            assert set(row.to_row()) >= {"z_re", "z_im", "V", "ReW", "diff", "budget"}

    def test_excluded_disk(self, small_evaluator) -> None:
        a = complex(small_evaluator.cellset.marked_points[5])
        with pytest.raises(ExcludedDiskError):
            compare_V_W(small_evaluator, a + 0.1)

    def test_near_comparison_inside_disk(self, small_evaluator) -> None:
        a = complex(small_evaluator.cellset.marked_points[5])
        row = compare_V_W(small_evaluator, a + 0.1, near=True)
        assert row.near
        assert math.isfinite(row.diff)

    @_slow
    def test_no_log_quadratic_leakage(self) -> None:
        e = build_evaluator(generate_cells(0.1, 1.0, 2000.0))
        radii = np.linspace(20.0, 200.0, 20)
        rows = [compare_V_W(e, complex(0.0, r)) for r in radii]
        assert max(row.ratio for row in rows) <= 10.0
        diff_fit = log_quadratic_fit(radii, np.array([abs(row.diff) for row in rows]))
        v_fit = log_quadratic_fit(radii, np.array([abs(row.V) for row in rows]))
        assert abs(diff_fit.log_quadratic) < 0.05 * abs(v_fit.log_quadratic)

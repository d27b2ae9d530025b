"""Tests for the shell quadrature and the ratio-test verdict."""
import dataclasses
import math

import numpy as np
import pytest
from scipy import integrate

from pauli_zeromodes.field import SectorFieldConfig
from pauli_zeromodes.modes import (
    build_candidate,
    convergence_verdict,
    log_weighted_density_many,
    shell_integral,
    shell_log_integral,
)
from pauli_zeromodes.modes.quad import LOG_FLOOR, angular_panels, ratio_verdict, shell_ratios


def _zero(z: np.ndarray) -> np.ndarray:
    return np.zeros(z.shape)


def _gaussian(z: np.ndarray) -> np.ndarray:
    return -np.abs(z) ** 2


class TestShellIntegral:
    def test_annulus_area(self) -> None:
        assert shell_integral(_zero, 1.0, 2.0, 4, 16) == pytest.approx(3.0 * math.pi, rel=1e-12)

    def test_sector_area(self) -> None:
        value = shell_integral(_zero, 1.0, 2.0, 4, 4, psi_range=(0.0, math.pi / 2.0))
        assert value == pytest.approx(0.75 * math.pi, rel=1e-12)

    def test_gaussian_closed_form(self) -> None:
        expected = math.pi * (math.exp(-0.25) - math.exp(-36.0))
        assert shell_integral(_gaussian, 0.5, 6.0, 4, 16) == pytest.approx(expected, rel=1e-6)

    def test_radial_density_matches_1d_quadrature(self) -> None:
        expected, _ = integrate.quad(lambda r: 2.0 * math.pi * r * math.exp(-r), 1.0, 3.0)
        value = shell_integral(lambda z: -np.abs(z), 1.0, 3.0, 4, 8)
        assert value == pytest.approx(expected, rel=1e-8)

    def test_huge_density_stays_in_log_space(self) -> None:
        result = shell_log_integral(lambda z: 2000.0 + _zero(z), 1.0, 2.0, 4, 8)
        assert result.log_value == pytest.approx(2000.0 + math.log(3.0 * math.pi), rel=1e-12)
        assert result.value == math.inf

    def test_nan_and_neginf_contribute_nothing(self) -> None:
        result = shell_log_integral(lambda z: np.full(z.shape, np.nan), 1.0, 2.0, 4, 8)
        assert result.log_value == -math.inf
        result = shell_log_integral(lambda z: np.full(z.shape, -np.inf), 1.0, 2.0, 4, 8)
        assert result.value == 0.0

    @pytest.mark.parametrize(
        ("lo", "hi", "n_rad", "n_ang"), [(2.0, 1.0, 4, 4), (0.0, 1.0, 4, 4), (1.0, 2.0, 2, 4)]
    )
    def test_rejects_bad_arguments(self, lo: float, hi: float, n_rad: int, n_ang: int) -> None:
        with pytest.raises(ValueError):
            shell_log_integral(_zero, lo, hi, n_rad, n_ang)


class TestRatioRule:
    def test_shell_ratios_with_underflow(self) -> None:
        assert shell_ratios([LOG_FLOOR - 1.0, 0.0]) == [math.inf]
        assert shell_ratios([LOG_FLOOR - 1.0, LOG_FLOOR - 2.0]) == [None]
        assert shell_ratios([0.0, math.log(0.5)]) == [pytest.approx(0.5)]

    def test_verdicts(self) -> None:
        assert ratio_verdict([2.0, 0.5, 0.5, 0.5], 0.9, 3) == "convergent"
        assert ratio_verdict([0.5, 2.0, 2.0, 2.0], 0.9, 3) == "divergent"
        assert ratio_verdict([0.5, 0.5, 1.0], 0.9, 3) == "inconclusive"
        assert ratio_verdict([None, None, 0.2], 0.9, 3) == "convergent"

    def test_angular_panels(self) -> None:
        assert angular_panels(10.0, None, (0.0, 2 * math.pi)) == 16
        assert angular_panels(10.0, 1.0, (0.0, 2 * math.pi), order=8, nodes_per_sigma=16) == 20
        assert angular_panels(10.0, 1.0, (0.0, math.pi), order=8, nodes_per_sigma=16) == 10


class TestConvergenceVerdict:
    def test_gaussian_converges(self) -> None:
        assert convergence_verdict(_gaussian).verdict == "convergent"

    def test_growing_density_diverges(self) -> None:
        report = convergence_verdict(lambda z: 0.01 * np.abs(z) ** 2)
        assert report.verdict == "divergent"

    def test_underflowing_density_notes(self) -> None:
        report = convergence_verdict(lambda z: np.full(z.shape, -np.inf))
        assert report.verdict == "convergent"
        assert report.notes

    def test_thread_count_does_not_change_values(self) -> None:
        single = convergence_verdict(_gaussian, 1.0, 1.0, 6, m=3, threads=1)
        pooled = convergence_verdict(_gaussian, 1.0, 1.0, 6, m=3, threads=3)
        assert single.log_values == pooled.log_values

    def test_report_rows(self) -> None:
        report = convergence_verdict(_gaussian, 1.0, 2.0, 4, m=3)
        rows = report.csv_rows()
        assert [row["R_mid"] for row in rows] == [2.0, 4.0, 6.0, 8.0]
        assert report.to_dict()["parameters"]["m"] == 3

    @pytest.mark.parametrize(("n_shells", "m", "q"), [(4, 5, 0.9), (10, 2, 0.9), (10, 5, 1.0)])
    def test_rejects_bad_window(self, n_shells: int, m: int, q: float) -> None:
        with pytest.raises(ValueError):
            convergence_verdict(_gaussian, 1.0, 1.0, n_shells, q, m)


class TestExistenceVerdict:
    """Reduced-shell version of the existence check for alpha = 0.05, b1 = -0.01."""

    @pytest.fixture(scope="class")
    def base(self):
        return build_candidate(SectorFieldConfig(alpha=0.05, b1=-0.01), [1.0], 170.0)

    @pytest.mark.parametrize("degree", [0, 1])
    def test_stable_under_doubled_resolution(self, base, degree: int) -> None:
        cand = dataclasses.replace(base, poly_coeffs=tuple([0j] * degree + [1 + 0j]))

        def density(z: np.ndarray) -> np.ndarray:
            return log_weighted_density_many(cand, z)

        shells = {"R_start": 5.0, "shell_width": 2.0, "n_shells": 6, "m": 3, "sigma": cand.sigma}
        report = convergence_verdict(density, n_rad=4, nodes_per_sigma=16, **shells)
        doubled = convergence_verdict(density, n_rad=8, nodes_per_sigma=32, **shells)
        assert report.verdict == "convergent"
        assert doubled.verdict == "convergent"
        assert all(np.isfinite(report.log_values))
        assert doubled.log_values[0] == pytest.approx(report.log_values[0], abs=1e-2)

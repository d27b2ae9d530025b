#!/usr/bin/env python3
"""Command-line front end for the Pauli zero-mode numerics.

Each subcommand writes its tables (CSV), plots (SVG), a summary (JSON), the
effective run configuration (run_config.json) and a manifest of output hashes
into its output directory.

Exit codes: 0 pass, 1 analytic-result failure, 2 usage or configuration error.

Usage:
  python scripts/zeromodes.py field-show --alpha 1.5708 --b1 -1
  python scripts/zeromodes.py cells --eps 0.1 --sigma 1 --r-cut 50
  python scripts/zeromodes.py entire-compare --eps 0.1 --sigma 1 --r-min 10 --r-max 200
  python scripts/zeromodes.py zeromode-verify --alpha 0.05 --b1 -0.01 --degree 1
  python scripts/zeromodes.py univalence --exponents 0.25,0.5,1
  python scripts/zeromodes.py nonres --s -0.5 --mean 1 --cos 1=0.1
  python scripts/zeromodes.py nonres --example
  python scripts/zeromodes.py cells --config out/cells/run_config.json   # re-run from echo
"""
import argparse
import dataclasses
import logging
import math
import sys
from collections.abc import Callable
from pathlib import Path

import numpy as np

from pauli_zeromodes.conformal import (
    AnnularSector,
    LogPowerMap,
    Rectangle,
    boundary_angle,
    boundary_angle_band,
    probe_boundary_angle,
    sector_S_lower_bound,
    sector_T_lower_bound,
    strip_arg_spread,
    univalence_probe,
)
from pauli_zeromodes.conformal.maps import map_halfplane_array
from pauli_zeromodes.field import (
    HomogeneousFieldConfig,
    ResonanceError,
    SectorFieldConfig,
    SectorPotential,
    build_example_profile,
    field_config_from_dict,
    log_growth_coefficient,
    sign_definite_check,
    solve_circle_ode,
    zero_growth_directions,
)
from pauli_zeromodes.field.nonres import eval_homogeneous_F_array
from pauli_zeromodes.field.potential import eval_F_array
from pauli_zeromodes.lattice import build_evaluator, compare_V_W, generate_cells, validate_cells
from pauli_zeromodes.modes import (
    build_candidate,
    convergence_verdict,
    log_quadratic_fit,
    log_weighted_density_many,
    probe_family_density,
)
from pauli_zeromodes.output import (
    RUN_CONFIG_NAME,
    RunConfig,
    cells_svg,
    contour_svg,
    load_config_file,
    resolve_run_config,
    write_csv,
    write_json,
    write_manifest,
    write_text,
)

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s %(levelname)s %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
)
logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2

SHELL_COLUMNS = ["R_mid", "I_k"]

SHELL_DEFAULTS = {
    "R_start": 5.0,
    "shell_width": 2.0,
    "n_shells": 15,
    "q": 0.9,
    "m": 5,
    "n_rad": 4,
    "nodes_per_sigma": 16,
}


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------

def _parse_floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _parse_mode(text: str) -> tuple[int, float]:
    """N=A for one Fourier term."""
    try:
        n, a = text.split("=", 1)
        return int(n), float(a)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected N=A, got {text!r}") from e


def _finish(cfg: RunConfig, files: list[Path], summary: dict) -> None:
    out = cfg.out_path
    files = [*files, write_json(out / "summary.json", summary)]
    files.append(write_json(out / RUN_CONFIG_NAME, cfg.to_dict()))
    write_manifest(out / "manifest.json", cfg.command, files)
    logger.info("Wrote %d files to %s", len(files) + 1, out)


def _shell_kwargs(params: dict, threads: int) -> dict:
    return {
        "R_start": float(params["R_start"]),
        "shell_width": float(params["shell_width"]),
        "n_shells": int(params["n_shells"]),
        "q": float(params["q"]),
        "m": int(params["m"]),
        "n_rad": int(params["n_rad"]),
        "nodes_per_sigma": int(params["nodes_per_sigma"]),
        "threads": threads,
    }


def _doubled(kwargs: dict) -> dict:
    return {
        **kwargs,
        "n_rad": 2 * kwargs["n_rad"],
        "nodes_per_sigma": 2 * kwargs["nodes_per_sigma"],
    }


def _flipped(a: str, b: str) -> bool:
    return {a, b} == {"convergent", "divergent"}


def _shell_end(params: dict) -> float:
    return float(params["R_start"]) + int(params["n_shells"]) * float(params["shell_width"])


# ---------------------------------------------------------------------------
# field-show
# ---------------------------------------------------------------------------

FIELD_SHOW_DEFAULTS = {
    "alpha": math.pi / 2.0,
    "b1": -1.0,
    "grid": 256,
    "extent": 20.0,
    "n_psi": 360,
}


def _sign_changes(psi: np.ndarray, values: np.ndarray) -> list[float]:
    out = []
    for k in range(len(psi) - 1):
        a, b = values[k], values[k + 1]
        if a == 0.0:
            out.append(float(psi[k]))
        elif a * b < 0.0:
            out.append(float(psi[k] - a * (psi[k + 1] - psi[k]) / (b - a)))
    return out


def cmd_field_show(cfg: RunConfig) -> int:
    p = cfg.params
    n = int(p["grid"])
    extent = float(p["extent"])
    if n < 2 or extent <= 0.0:
        raise ValueError(f"grid must be >= 2 and extent > 0, got {n}, {extent}")
    field = (
        field_config_from_dict(cfg.field_config)
        if cfg.field_config is not None
        else SectorFieldConfig(alpha=float(p["alpha"]), b1=float(p["b1"]))
    )
    xs = np.linspace(-extent, extent, n)
    ys = np.linspace(-extent, extent, n)
    if cfg.seed is not None:
        # one global sub-cell shift keeps the grid rectilinear
        rng = np.random.default_rng(cfg.seed)
        step = 2.0 * extent / max(n - 1, 1)
        xs = xs + rng.uniform(-0.25, 0.25) * step
        ys = ys + rng.uniform(-0.25, 0.25) * step
    z = xs[:, None] + 1j * ys[None, :]
    psi = np.linspace(0.0, 2.0 * math.pi, int(p["n_psi"]), endpoint=False)

    if isinstance(field, SectorFieldConfig):
        pot = SectorPotential(field)
        values = eval_F_array(pot, z)
        growth = np.array([log_growth_coefficient(pot, a) for a in psi])
        rays = [a % (2.0 * math.pi) for a in zero_growth_directions(pot)]
        growth_label = "coefficient of |z|^2 log|z|"
    else:
        sol = solve_circle_ode(field)
        values = eval_homogeneous_F_array(sol, z)
        values = np.where(z == 0, np.nan, values)
        growth = sol.beta0 / sol.m**2 + np.asarray(sol.phi(psi))
        rays = _sign_changes(np.append(psi, 2.0 * math.pi), np.append(growth, growth[0]))
        growth_label = f"coefficient of |z|^{sol.m:g}"

    out = cfg.out_path
    files = [
        write_csv(
            out / "F_grid.csv",
            (
                {"x": float(z[i, j].real), "y": float(z[i, j].imag), "F": float(values[i, j])}
                for i in range(n)
                for j in range(n)
            ),
            ["x", "y", "F"],
        ),
        write_text(
            out / "F_contours.svg",
            contour_svg(xs, ys, values, rays=rays, title=f"F for {field.to_dict()}"),
        ),
        write_csv(
            out / "growth_table.csv",
            ({"psi": float(a), "C": float(c)} for a, c in zip(psi, growth)),
            ["psi", "C"],
        ),
    ]
    summary = {
        "field": field.to_dict(),
        "grid": n,
        "extent": extent,
        "growth": growth_label,
        "zero_growth_directions": rays,
    }
    _finish(cfg, files, summary)
    print(f"field-show: {n}x{n} grid, {len(rays)} zero-growth directions")
    return EXIT_PASS


# ---------------------------------------------------------------------------
# cells
# ---------------------------------------------------------------------------

CELLS_DEFAULTS = {"eps": 0.1, "sigma": 1.0, "r_cut": 50.0}


def cmd_cells(cfg: RunConfig) -> int:
    p = cfg.params
    cs = generate_cells(float(p["eps"]), float(p["sigma"]), float(p["r_cut"]))
    report = validate_cells(cs)
    out = cfg.out_path
    files = [
        write_json(out / "cells.json", cs.to_dict()),
        write_text(out / "cells.svg", cells_svg(cs, title=f"{len(cs)} cells")),
    ]
    _finish(cfg, files, {"n_cells": len(cs), "validation": report})
    for check in report["checks"]:
        if not check["passed"]:
            logger.error("Cell check %s failed: %s", check["name"], check["detail"])
    print(f"cells: {len(cs)} cells, validation {'PASS' if report['passed'] else 'FAIL'}")
    return EXIT_PASS if report["passed"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# entire-compare
# ---------------------------------------------------------------------------

ENTIRE_DEFAULTS = {
    "eps": 0.1,
    "sigma": 1.0,
    "r_cut": None,
    "angle": math.pi / 2.0,
    "r_min": 10.0,
    "r_max": 200.0,
    "n_radii": 20,
    "near": False,
    "max_ratio": 10.0,
    "max_slope_fraction": 0.05,
}


def cmd_entire_compare(cfg: RunConfig) -> int:
    p = cfg.params
    r_min, r_max = float(p["r_min"]), float(p["r_max"])
    n_radii = int(p["n_radii"])
    if not (0.0 < r_min < r_max) or n_radii < 4:
        raise ValueError(
            f"need 0 < r_min < r_max and n_radii >= 4, got {r_min}, {r_max}, {n_radii}"
        )
    r_cut = float(p["r_cut"]) if p["r_cut"] is not None else 10.0 * r_max
    cs = generate_cells(float(p["eps"]), float(p["sigma"]), r_cut)
    evaluator = build_evaluator(cs)
    radii = np.linspace(r_min, r_max, n_radii)
    direction = complex(math.cos(float(p["angle"])), math.sin(float(p["angle"])))
    rows = [compare_V_W(evaluator, r * direction, near=bool(p["near"])) for r in radii]

    diff_fit = log_quadratic_fit(radii, np.array([abs(c.diff) for c in rows]))
    v_fit = log_quadratic_fit(radii, np.array([abs(c.V) for c in rows]))
    slope_fraction = (
        abs(diff_fit.log_quadratic) / abs(v_fit.log_quadratic) if v_fit.log_quadratic else math.inf
    )
    max_ratio = max(c.ratio for c in rows)
    passed = max_ratio <= float(p["max_ratio"]) and slope_fraction < float(p["max_slope_fraction"])

    out = cfg.out_path
    files = [
        write_csv(
            out / "compare.csv",
            (c.to_row() for c in rows),
            ["z_re", "z_im", "V", "ReW", "diff", "budget", "tail_bound"],
        )
    ]
    summary = {
        "n_cells": len(cs),
        "r_cut": r_cut,
        "max_ratio": max_ratio,
        "slope_V": v_fit.log_quadratic,
        "slope_diff": diff_fit.log_quadratic,
        "slope_fraction": slope_fraction,
        "passed": passed,
    }
    _finish(cfg, files, summary)
    print(f"entire-compare: max diff/budget {max_ratio:.3f}, slope fraction {slope_fraction:.4f}")
    return EXIT_PASS if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# zeromode-verify
# ---------------------------------------------------------------------------

ZEROMODE_DEFAULTS = {
    "alpha": 0.05,
    "b1": -0.01,
    "degree": 1,
    "r_cut": None,
    "check_doubled": False,
    **SHELL_DEFAULTS,
}


def _large_sector_probes(cfg: RunConfig, field: SectorFieldConfig, kwargs: dict) -> int:
    """No Weierstrass candidate exists; check the divergence mechanism instead."""
    p = cfg.params
    pot = SectorPotential(field)
    half = field.alpha / 2.0
    sectors = {
        "S": ((half + 7.0 * math.pi / 4.0, half + 9.0 * math.pi / 4.0), -1),
        "T": ((half + math.pi / 4.0, half + 3.0 * math.pi / 4.0), 1),
    }
    out = cfg.out_path
    files: list[Path] = []
    probes = []
    for name, (psi_range, sign) in sectors.items():
        for k in range(max(2, int(p["degree"])) + 1):

            def density(z, k=k, sign=sign):
                return probe_family_density(pot, k, sign, z)

            report = convergence_verdict(density, psi_range=psi_range, **kwargs)
            probes.append({"sector": name, "k": k, "weight_sign": sign, "report": report})
            path = out / f"shells_{name}_k{k}.csv"
            files.append(write_csv(path, report.csv_rows(), SHELL_COLUMNS))
    bounds = {}
    if abs(field.b1) < 0.5:
        bounds = {"S": sector_S_lower_bound(field), "T": sector_T_lower_bound(field)}
    summary = {
        "field": field.to_dict(),
        "candidate": None,
        "note": "sqrt(alpha) >= pi/8: no Weierstrass candidate; probe family run instead",
        "probes": probes,
        "lower_bounds": bounds,
        "verdicts": [pr["report"].verdict for pr in probes],
    }
    _finish(cfg, files, summary)
    n_div = sum(pr["report"].verdict == "divergent" for pr in probes)
    print(f"zeromode-verify: no candidate; {n_div}/{len(probes)} probe integrals divergent")
    return EXIT_FAIL


def cmd_zeromode_verify(cfg: RunConfig) -> int:
    p = cfg.params
    degree = int(p["degree"])
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    field = SectorFieldConfig(alpha=float(p["alpha"]), b1=float(p["b1"]))
    kwargs = _shell_kwargs(p, cfg.threads)
    if math.sqrt(field.alpha) >= math.pi / 8.0:
        return _large_sector_probes(cfg, field, kwargs)

    r_cut = float(p["r_cut"]) if p["r_cut"] is not None else 10.0 * _shell_end(p)
    base = build_candidate(field, [1.0], r_cut)
    out = cfg.out_path
    files: list[Path] = []
    results = []
    all_convergent = True
    for k in range(degree + 1):
        cand = dataclasses.replace(base, poly_coeffs=tuple([0j] * k + [1 + 0j]))
        density = _candidate_density(cand)
        report = convergence_verdict(density, sigma=cand.sigma, **kwargs)
        entry = {"degree": k, "candidate": cand, "report": report}
        verdict_ok = report.verdict == "convergent"
        if p["check_doubled"]:
            doubled = convergence_verdict(density, sigma=cand.sigma, **_doubled(kwargs))
            entry["doubled"] = doubled
            if _flipped(report.verdict, doubled.verdict):
                logger.error("Verdict for P=z^%d flips under doubled resolution", k)
                verdict_ok = False
        all_convergent = all_convergent and verdict_ok
        results.append(entry)
        files.append(write_csv(out / f"shells_P{k}.csv", report.csv_rows(), SHELL_COLUMNS))
        logger.info("P=z^%d: %s", k, report.verdict)
    summary = {
        "field": field.to_dict(),
        "candidates": results,
        "verdicts": [r["report"].verdict for r in results],
        "passed": all_convergent,
    }
    _finish(cfg, files, summary)
    print(f"zeromode-verify: verdicts {summary['verdicts']}")
    return EXIT_PASS if all_convergent else EXIT_FAIL


def _candidate_density(cand) -> Callable[[np.ndarray], np.ndarray]:
    def density(z: np.ndarray) -> np.ndarray:
        return log_weighted_density_many(cand, z)

    return density


# ---------------------------------------------------------------------------
# univalence
# ---------------------------------------------------------------------------

UNIVALENCE_DEFAULTS = {
    "exponents": [0.25, 0.5, 1.0],
    "n_grid": 256,
    "decades": 4.0,
    "rho": [1e3, 1e4, 1e5, 1e6],
    "angle_tolerance": 0.2,
}
_ANGULAR_INSET = 1e-6


def cmd_univalence(cfg: RunConfig) -> int:
    p = cfg.params
    n_grid = int(p["n_grid"])
    tol = float(p["angle_tolerance"])
    results = []
    rows = []
    all_passed = True
    for A in (float(a) for a in p["exponents"]):
        m = LogPowerMap.for_exponent(A)
        region = AnnularSector(
            r_min=m.cutoff * (1.0 + _ANGULAR_INSET),
            r_max=m.cutoff * 10.0 ** float(p["decades"]),
            theta_min=_ANGULAR_INSET,
            theta_max=math.pi - _ANGULAR_INSET,
        )

        def f(w, m=m):
            return map_halfplane_array(m, w)

        probe = univalence_probe(f, region, n_grid)
        angles_ok = True
        for rho in (float(r) for r in p["rho"]):
            predicted = boundary_angle(m, rho)
            probed = probe_boundary_angle(m, rho)
            band = boundary_angle_band(m, rho)
            rel = abs(probed - predicted) / abs(predicted)
            ok = rel <= tol or abs(probed - predicted) <= band
            angles_ok = angles_ok and ok
            rows.append(
                {
                    "A": A,
                    "rho": rho,
                    "predicted": predicted,
                    "probed": probed,
                    "relative_error": rel,
                    "band": band,
                    "within": ok,
                }
            )
        spread = strip_arg_spread(m, -0.4 * math.pi)
        passed = probe.passed and angles_ok
        all_passed = all_passed and passed
        results.append(
            {"map": m, "probe": probe, "boundary_ok": angles_ok, "strip_spread": spread,
             "passed": passed}
        )
        logger.info("A=%s: probe %s, boundary angles %s", A, probe.passed, angles_ok)

    # e^{2z} covers the annulus twice: the probe must reject it
    control = univalence_probe(
        lambda z: np.exp(2.0 * z), Rectangle(0.0, 1.0, -math.pi, math.pi), 33
    )
    if control.passed:
        logger.error("Double-cover control passed the univalence probe")
        all_passed = False
    out = cfg.out_path
    files = [
        write_csv(
            out / "boundary_angles.csv",
            rows,
            ["A", "rho", "predicted", "probed", "relative_error", "band", "within"],
        )
    ]
    _finish(cfg, files, {"maps": results, "control": control, "passed": all_passed})
    print(f"univalence: {'PASS' if all_passed else 'FAIL'} for A in {list(p['exponents'])}")
    return EXIT_PASS if all_passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# nonres
# ---------------------------------------------------------------------------

NONRES_DEFAULTS = {
    "s": -0.5,
    "mean": 1.0,
    "cos": {"1": 0.1},
    "sin": {},
    "example": False,
    "eps": 0.1,
    "beta_plus": 1.0,
    "beta_minus": -1.0,
    "degree": 1,
    **SHELL_DEFAULTS,
}
RESIDUAL_TOL = 1e-10


def _modes(raw) -> dict[int, float]:
    if not isinstance(raw, dict):
        raise ValueError(f"Fourier terms must be an object of index -> amplitude, got {raw!r}")
    return {int(n): float(a) for n, a in raw.items()}


def _nonres_example(cfg: RunConfig, kwargs: dict) -> int:
    p = cfg.params
    profile = build_example_profile(
        float(p["s"]), float(p["eps"]), float(p["beta_plus"]), float(p["beta_minus"])
    )
    implied = solve_circle_ode(profile.as_field_config())
    sign = sign_definite_check(implied)
    out = cfg.out_path
    files: list[Path] = []
    reports = {}
    for name, psi_range, weight in (
        ("plus", profile.arc_plus, 1.0),
        ("minus", profile.arc_minus, -1.0),
    ):

        def density(z, weight=weight):
            return 2.0 * weight * profile.potential_array(z)

        report = convergence_verdict(density, psi_range=psi_range, **kwargs)
        reports[name] = report
        files.append(write_csv(out / f"shells_{name}.csv", report.csv_rows(), SHELL_COLUMNS))
    passed = all(r.verdict == "divergent" for r in reports.values())
    summary = {
        "profile": {
            "s": profile.s,
            "eps": profile.eps,
            "beta_plus": profile.beta_plus,
            "beta_minus": profile.beta_minus,
            "arc_length": profile.arc_length,
            "quarter_bound_violated": profile.quarter_bound_violated,
        },
        "implied_field_sign_check": sign,
        "verdicts": {k: r for k, r in reports.items()},
        "passed": passed,
    }
    _finish(cfg, files, summary)
    plus, minus = reports["plus"].verdict, reports["minus"].verdict
    print(f"nonres --example: e^{{2F}} on I+ {plus}, e^{{-2F}} on I- {minus}")
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_nonres(cfg: RunConfig) -> int:
    p = cfg.params
    degree = int(p["degree"])
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    kwargs = _shell_kwargs(p, cfg.threads)
    if p["example"]:
        return _nonres_example(cfg, kwargs)

    if cfg.field_config is not None:
        field = field_config_from_dict(cfg.field_config)
        if not isinstance(field, HomogeneousFieldConfig):
            raise ValueError("nonres needs a homogeneous field configuration")
    else:
        field = HomogeneousFieldConfig.from_series(
            float(p["s"]), float(p["mean"]), cos=_modes(p["cos"]), sin=_modes(p["sin"])
        )
    out = cfg.out_path
    try:
        sol = solve_circle_ode(field)
    except ResonanceError as e:
        logger.error("Resonance: %s", e)
        _finish(cfg, [], {"field": field.to_dict(), "resonance": str(e), "passed": False})
        print(f"nonres: resonance ({e})")
        return EXIT_FAIL
    sign = sign_definite_check(sol) if sol.beta0 != 0.0 else None
    files: list[Path] = []
    reports = []
    for k in range(degree + 1):

        def density(z, k=k):
            with np.errstate(divide="ignore"):
                return 2.0 * k * np.log(np.abs(z)) - 2.0 * eval_homogeneous_F_array(sol, z)

        report = convergence_verdict(density, **kwargs)
        reports.append(report)
        files.append(write_csv(out / f"shells_P{k}.csv", report.csv_rows(), SHELL_COLUMNS))
    passed = (
        sol.residual_norm < RESIDUAL_TOL
        and sign is not None
        and sign.holds
        and all(r.verdict == "convergent" for r in reports)
    )
    summary = {
        "field": field.to_dict(),
        "solution": sol,
        "sign_check": sign,
        "verdicts": [r.verdict for r in reports],
        "reports": reports,
        "passed": passed,
    }
    _finish(cfg, files, summary)
    margin = f"{sign.margin:.6f}" if sign is not None else "n/a"
    verdicts = summary["verdicts"]
    print(f"nonres: residual {sol.residual_norm:.2e}, margin {margin}, verdicts {verdicts}")
    return EXIT_PASS if passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

COMMANDS: dict[str, tuple[Callable[[RunConfig], int], dict]] = {
    "field-show": (cmd_field_show, FIELD_SHOW_DEFAULTS),
    "cells": (cmd_cells, CELLS_DEFAULTS),
    "entire-compare": (cmd_entire_compare, ENTIRE_DEFAULTS),
    "zeromode-verify": (cmd_zeromode_verify, ZEROMODE_DEFAULTS),
    "univalence": (cmd_univalence, UNIVALENCE_DEFAULTS),
    "nonres": (cmd_nonres, NONRES_DEFAULTS),
}


def _add_shell_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--R-start", dest="R_start", type=float, help="Inner shell radius (default: 5)"
    )
    sub.add_argument("--shell-width", type=float, help="Shell width (default: 2)")
    sub.add_argument("--n-shells", type=int, help="Number of shells (default: 15)")
    sub.add_argument("--q", type=float, help="Ratio threshold in (0, 1) (default: 0.9)")
    sub.add_argument("--m", type=int, help="Ratio window (default: 5)")
    sub.add_argument("--n-rad", type=int, help="Radial panels per shell (default: 4)")
    sub.add_argument(
        "--nodes-per-sigma", type=int, help="Angular nodes per sigma of radius (default: 16)"
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON config file (flags override it)")
    common.add_argument("--out", type=Path, help="Output directory (default: OUT_DIR/<command>)")
    common.add_argument("--threads", type=int, help="Worker threads for shell quadrature")

    parser = argparse.ArgumentParser(description="Pauli operator zero-mode numerics.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("field-show", parents=[common], help="Grid, contours and C(psi) of F")
    sub.add_argument("--alpha", type=float, help="Sector angle in (0, pi) (default: pi/2)")
    sub.add_argument("--b1", type=float, help="Field value inside the sector, < 0 (default: -1)")
    sub.add_argument("--grid", type=int, help="Grid points per axis (default: 256)")
    sub.add_argument("--extent", type=float, help="Half-width of the square window (default: 20)")
    sub.add_argument("--n-psi", type=int, help="Angles in the C(psi) table (default: 360)")

    sub = subs.add_parser("cells", parents=[common], help="Partition the sector into cells")
    sub.add_argument("--eps", type=float, help="Sector half-angle (default: 0.1)")
    sub.add_argument("--sigma", type=float, help="Cell scale; area sigma^2 (default: 1)")
    sub.add_argument("--r-cut", type=float, help="Cutoff radius (default: 50)")

    sub = subs.add_parser("entire-compare", parents=[common], help="Compare V with Re W on a ray")
    sub.add_argument("--eps", type=float, help="Sector half-angle (default: 0.1)")
    sub.add_argument("--sigma", type=float, help="Cell scale (default: 1)")
    sub.add_argument("--r-cut", type=float, help="Cutoff radius (default: 10 * r_max)")
    sub.add_argument("--angle", type=float, help="Ray direction in radians (default: pi/2)")
    sub.add_argument("--r-min", type=float, help="Smallest radius (default: 10)")
    sub.add_argument("--r-max", type=float, help="Largest radius (default: 200)")
    sub.add_argument("--n-radii", type=int, help="Sample radii (default: 20)")
    sub.add_argument(
        "--near", action="store_const", const=True, help="Remove the nearest lattice log first"
    )

    sub = subs.add_parser(
        "zeromode-verify", parents=[common], help="Shell verdicts for the candidates P = z^k"
    )
    sub.add_argument("--alpha", type=float, help="Sector angle (default: 0.05)")
    sub.add_argument("--b1", type=float, help="Field value inside the sector (default: -0.01)")
    sub.add_argument("--degree", type=int, help="Largest polynomial degree d (default: 1)")
    sub.add_argument("--r-cut", type=float, help="Lattice cutoff (default: 10 * outer radius)")
    sub.add_argument(
        "--check-doubled",
        action="store_const",
        const=True,
        help="Repeat each verdict at doubled resolution",
    )
    _add_shell_flags(sub)

    sub = subs.add_parser("univalence", parents=[common], help="Probe the log-power maps")
    sub.add_argument("--exponents", type=_parse_floats, help="Comma-separated A values")
    sub.add_argument("--n-grid", type=int, help="Probe grid per axis (default: 256)")
    sub.add_argument("--decades", type=float, help="Radial decades above the cutoff (default: 4)")
    sub.add_argument("--rho", type=_parse_floats, help="Comma-separated boundary moduli")

    sub = subs.add_parser("nonres", parents=[common], help="Homogeneous non-resonant fields")
    sub.add_argument("--s", type=float, help="Homogeneity degree in (-2, 0] (default: -0.5)")
    sub.add_argument("--mean", type=float, help="Profile mean beta0 (default: 1)")
    sub.add_argument("--cos", type=_parse_mode, action="append", help="Cosine term N=A")
    sub.add_argument("--sin", type=_parse_mode, action="append", help="Sine term N=A")
    sub.add_argument("--degree", type=int, help="Largest polynomial degree (default: 1)")
    sub.add_argument(
        "--example",
        action="store_const",
        const=True,
        help="Run the two-arc sign-changing example instead",
    )
    sub.add_argument("--eps", type=float, help="Arc margin of the example (default: 0.1)")
    sub.add_argument("--beta-plus", type=float, help="Example value on I+ (default: 1)")
    sub.add_argument("--beta-minus", type=float, help="Example value on I- (default: -1)")
    _add_shell_flags(sub)
    return parser


_RUN_LEVEL = {"command", "config", "out", "threads"}


def _flags(args: argparse.Namespace) -> dict:
    flags = {k: v for k, v in vars(args).items() if k not in _RUN_LEVEL}
    for key in ("cos", "sin"):
        if flags.get(key) is not None:
            flags[key] = {str(n): a for n, a in flags[key]}
    return flags


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_PASS

    handler, defaults = COMMANDS[args.command]
    try:
        file_data = load_config_file(args.config) if args.config is not None else None
        cfg = resolve_run_config(
            args.command,
            defaults,
            file_data,
            _flags(args),
            out_dir=args.out,
            threads=args.threads,
        )
    except ValueError as e:
        logger.error("Configuration error: %s", e)
        return EXIT_CONFIG

    try:
        return handler(cfg)
    except ResonanceError as e:
        logger.error("Resonance: %s", e)
        return EXIT_FAIL
    except ValueError as e:
        logger.error("Invalid parameters for %s: %s", args.command, e)
        return EXIT_CONFIG
    except OSError as e:
        logger.error("File or I/O error: %s", e)
        return EXIT_FAIL
    except Exception as e:
        logger.exception("%s failed: %s", args.command, e)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

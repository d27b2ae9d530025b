"""Candidate zero modes and the weighted-L2 verdict engine.

Submodules:
    zeromode - Weierstrass-product candidates, their log densities and probe families.
    quad     - Annular Gauss-Legendre quadrature in log space and the shell ratio test.
"""

from pauli_zeromodes.modes.quad import (
    ShellIntegral,
    ShellReport,
    convergence_verdict,
    shell_integral,
    shell_log_integral,
)
from pauli_zeromodes.modes.zeromode import (
    CandidateMode,
    LogQuadraticFit,
    build_candidate,
    gaussian_log_factor,
    log_quadratic_fit,
    log_weighted_density,
    log_weighted_density_many,
    probe_family_density,
)

__all__ = [
    "CandidateMode",
    "LogQuadraticFit",
    "ShellIntegral",
    "ShellReport",
    "build_candidate",
    "convergence_verdict",
    "gaussian_log_factor",
    "log_quadratic_fit",
    "log_weighted_density",
    "log_weighted_density_many",
    "probe_family_density",
    "shell_integral",
    "shell_log_integral",
]

"""Magnetic fields and their potentials.

Submodules:
    configs   - Sector and radially homogeneous field configurations.
    potential - Explicit sector potential F with its log-quadratic growth.
    nonres    - Homogeneous potentials, the circle ODE and the two-arc example.
"""

from pauli_zeromodes.field.configs import (
    FieldDomainError,
    HomogeneousFieldConfig,
    SectorFieldConfig,
    field_config_from_dict,
    homogeneous_field_value,
    sector_field_value,
)
from pauli_zeromodes.field.nonres import (
    CircleODESolution,
    ExampleProfile,
    ResonanceError,
    SignCriterionError,
    SignDefiniteResult,
    build_example_profile,
    circle_ode_residual,
    eval_homogeneous_F,
    sign_definite_check,
    solve_circle_ode,
)
from pauli_zeromodes.field.potential import (
    SectorPotential,
    StencilError,
    eval_F,
    eval_F_side,
    grad_F,
    grad_F_side,
    laplacian_fd,
    log_growth_coefficient,
    zero_growth_directions,
)

__all__ = [
    "CircleODESolution",
    "ExampleProfile",
    "FieldDomainError",
    "HomogeneousFieldConfig",
    "ResonanceError",
    "SectorFieldConfig",
    "SectorPotential",
    "SignCriterionError",
    "SignDefiniteResult",
    "StencilError",
    "build_example_profile",
    "circle_ode_residual",
    "eval_F",
    "eval_F_side",
    "eval_homogeneous_F",
    "field_config_from_dict",
    "grad_F",
    "grad_F_side",
    "homogeneous_field_value",
    "laplacian_fd",
    "log_growth_coefficient",
    "sector_field_value",
    "sign_definite_check",
    "solve_circle_ode",
    "zero_growth_directions",
]

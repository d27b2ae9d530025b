"""Conformal maps and the large-sector analysis.

Submodules:
    maps   - Log-power maps of half-planes and half-strips, cutoffs and boundary asymptotics.
    probe  - Grid collision and boundary winding probe for univalence.
    bounds - Sector lower bounds for -F and F~ and the closed-form theta condition.
"""

from pauli_zeromodes.conformal.bounds import (
    LowerBoundReport,
    ThetaCondition,
    sector_S_lower_bound,
    sector_T_lower_bound,
    theta_condition,
    tilde_F,
)
from pauli_zeromodes.conformal.maps import (
    LogPowerMap,
    MapDomainError,
    StripSpread,
    VarsigmaSearchError,
    arc_sector_map,
    boundary_angle,
    boundary_angle_band,
    choose_varsigma,
    map_halfplane,
    map_strip,
    probe_boundary_angle,
    strip_arg_spread,
)
from pauli_zeromodes.conformal.probe import (
    AnnularSector,
    ProbeReport,
    Rectangle,
    univalence_probe,
    winding_number,
)

__all__ = [
    "AnnularSector",
    "LogPowerMap",
    "LowerBoundReport",
    "MapDomainError",
    "ProbeReport",
    "Rectangle",
    "StripSpread",
    "ThetaCondition",
    "VarsigmaSearchError",
    "arc_sector_map",
    "boundary_angle",
    "boundary_angle_band",
    "choose_varsigma",
    "map_halfplane",
    "map_strip",
    "probe_boundary_angle",
    "sector_S_lower_bound",
    "sector_T_lower_bound",
    "theta_condition",
    "tilde_F",
    "univalence_probe",
    "winding_number",
]

"""Zero lattice of the Weierstrass construction.

Submodules:
    cells  - Area-sigma^2 partition of the narrow sector with centroid marked points.
    entire - Lattice sum V, log|Phi_alpha|, the integral model W and their comparison.
"""

from pauli_zeromodes.lattice.cells import (
    Cell,
    CellGenerationError,
    CellSet,
    generate_cells,
    validate_cells,
)
from pauli_zeromodes.lattice.entire import (
    BranchCutError,
    EntireEvaluator,
    ExcludedDiskError,
    LatticeValue,
    QuadratureError,
    SingularityError,
    VWComparison,
    asymptotic_W,
    build_evaluator,
    compare_V_W,
    eval_logPhi_alpha,
    eval_logPhi_alpha_many,
    eval_V,
    eval_v_closed,
    eval_V_many,
    eval_V_near,
    eval_V_unsymmetrized,
    eval_W,
    growth_cap_constant,
)

__all__ = [
    "BranchCutError",
    "Cell",
    "CellGenerationError",
    "CellSet",
    "EntireEvaluator",
    "ExcludedDiskError",
    "LatticeValue",
    "QuadratureError",
    "SingularityError",
    "VWComparison",
    "asymptotic_W",
    "build_evaluator",
    "compare_V_W",
    "eval_V",
    "eval_V_many",
    "eval_V_near",
    "eval_V_unsymmetrized",
    "eval_W",
    "eval_logPhi_alpha",
    "eval_logPhi_alpha_many",
    "eval_v_closed",
    "generate_cells",
    "growth_cap_constant",
    "validate_cells",
]

"""Unitary solutions of generalized Yang-Baxter equations and their braiding circuits."""

from .core import (
    CheckReport,
    GybeSignature,
    RMatrix,
    braid_generator_matrix,
    check_far_commutativity,
    check_gybe,
    check_ybe,
    double_lift_check,
)
from .solutions import (
    BlockSolution,
    DiagBlock,
    FamilyParams,
    GeneralParams,
    base_solution,
    check_block_equations,
    check_param_constraints,
    classify_unitary_params,
    conjugate_solution,
    derive_C,
    derive_Y,
    family_solution,
    general_solution,
    reduce_to_B_identity,
    resolve_solution,
    restore,
    rowell_solution,
    xshape_solution,
)
from .equivalence import (
    EquivalenceWitness,
    GaugeOp,
    apply_gauge,
    apply_gauge_sequence,
    conjugacy_invariants,
    is_locally_conjugate_params,
    search_equivalence,
    search_local_conjugation,
)
from .braiding import (
    BraidRep,
    BraidWord,
    StateVector,
    apply_to_state,
    build_rep,
    evaluate_word,
    parse_braid_word,
    recognize_braiding_gate,
)
from .search import SearchConfig, SearchResult, ZeroPattern, gybe_objective, solve_pattern

__version__ = "0.1.0"

__all__ = [
    "BlockSolution",
    "BraidRep",
    "BraidWord",
    "CheckReport",
    "DiagBlock",
    "EquivalenceWitness",
    "FamilyParams",
    "GaugeOp",
    "GeneralParams",
    "GybeSignature",
    "RMatrix",
    "SearchConfig",
    "SearchResult",
    "StateVector",
    "ZeroPattern",
    "apply_gauge",
    "apply_gauge_sequence",
    "apply_to_state",
    "base_solution",
    "braid_generator_matrix",
    "build_rep",
    "check_block_equations",
    "check_far_commutativity",
    "check_gybe",
    "check_param_constraints",
    "check_ybe",
    "classify_unitary_params",
    "conjugacy_invariants",
    "conjugate_solution",
    "derive_C",
    "derive_Y",
    "double_lift_check",
    "evaluate_word",
    "family_solution",
    "general_solution",
    "gybe_objective",
    "is_locally_conjugate_params",
    "parse_braid_word",
    "recognize_braiding_gate",
    "reduce_to_B_identity",
    "resolve_solution",
    "restore",
    "rowell_solution",
    "search_equivalence",
    "search_local_conjugation",
    "solve_pattern",
    "xshape_solution",
]

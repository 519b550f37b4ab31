"""Exact divisor and cohomology bookkeeping for disjoint chains of rational curves."""

__version__ = "0.1.0"

from .plumbing import (  # noqa: E402
    ChainSpec,
    ConfigError,
    Cycle,
    InvariantError,
    PlumbingConfig,
    cycle_genus,
    fundamental_cycle,
    hj_invariant,
    intersection_matrix,
    is_negative_definite,
    validate_config,
)
from .solver import (  # noqa: E402
    DivisorSolution,
    build_block_system,
    closed_form_small_m,
    kernel_basis,
    primitive_positive_solution,
    verify_orthogonality,
)
from .cohomology import (  # noqa: E402
    DimInterval,
    alpha_bound,
    check_component_h0_vanishing,
    check_h0_reduced_E_vanishing,
    closed_form_h1_m1,
    discrepancy_report,
    growth_analysis,
    p1_cohomology,
    peel_ledger,
    twist_degrees,
)

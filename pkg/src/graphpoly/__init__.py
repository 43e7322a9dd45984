"""Exact graph polynomials, hypersurface combinatorics, finite-field
point counts and parametric period estimation."""

__version__ = "0.1.0"

from .configs import (
    Configuration,
    configuration_polynomial,
    dual_configuration,
    functional_equation_check,
    pluecker_coefficient_check,
)
from .counting import (
    BudgetError,
    CountReport,
    count_affine_brute,
    count_affine_split,
    count_projective,
    fit_point_count_polynomial,
    rank_stratum_count,
    stratification_trace,
    sym2_p2_count,
)
from .graphs import (
    DivergenceWitness,
    Graph,
    Subgraph,
    component_count,
    contract,
    cycle_basis,
    delete,
    is_primitive_divergent,
    loop_rank,
    spanning_forests,
)
from .kirchhoff import (
    DodgsonContext,
    contraction_deletion,
    dodgson,
    dodgson_identity_holds,
    diagonal_normal_form,
    psi_determinant,
    psi_spanning_trees,
)
from .mpoly import MPoly, SymbolicMatrix, determinant
from .period import PeriodEstimate, convergence_check, estimate_period, zeta
from .strata import (
    MotivicFamily,
    blowup_sequence,
    initial_form_factorization,
    lands_in_hypersurface,
    motivic_family,
    restriction_identity_check,
    saturated_chains,
)
from .wheels import (
    WheelContext,
    example_graph_12,
    wheel,
    wheel_K,
    wheel_Q,
    wheel_context,
    wheel_discriminant_check,
    wheel_recurrence_check,
)

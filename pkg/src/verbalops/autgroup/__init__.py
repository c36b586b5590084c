"""Strongly stable automorphisms: parameters, group law, staged solver and classification."""

from .params import (
    ALPHA12,
    ALPHA21,
    GAMMA1_22,
    GAMMA11_2,
    GAMMA12,
    QuotientClass,
    StronglyStableParams,
    closed_form_words,
    compose,
    compose3,
    compose4,
    compose_quotient,
    identity_params,
    invert,
    make_params,
    params_from_ratio,
    params_to_wordsystem,
    quotient_class,
    truncate_params,
    wordsystem_to_params,
)
from .report import (
    TABLE,
    TheoremReport,
    parameter_grid,
    theorem_report,
    verify_anticommutative_scaling,
    verify_power_associative_scaling,
)
from .solver import (
    SolvedFamily,
    nilpotent4_reference_relations,
    reference_assignment,
    reference_family,
    solve_general_wordsystem,
)

"""Exact computation with verbal operations on free nonassociative algebras."""

from .errors import (
    ConstraintError,
    FitError,
    ParseError,
    SchemaError,
    VerbalOpsError,
)
from .exactfield import FieldAutomorphism, FieldElement, FieldSpec
from .freemagma import AlgebraElement, enumerate_monomials, generators
from .relfree import VarietySpec, dim_component, normal_form
from .verbal import (
    CheckReport,
    ScalarWordFamily,
    WordSystem,
    check_op1,
    check_op2_axioms,
    check_sigma_iso,
    inner_solve,
    sigma_eval,
    star_apply,
    words_from_bijection,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "CheckReport",
    "ConstraintError",
    "FieldAutomorphism",
    "FieldElement",
    "FieldSpec",
    "FitError",
    "ParseError",
    "ScalarWordFamily",
    "SchemaError",
    "VarietySpec",
    "VerbalOpsError",
    "WordSystem",
    "check_op1",
    "check_op2_axioms",
    "check_sigma_iso",
    "dim_component",
    "enumerate_monomials",
    "generators",
    "inner_solve",
    "normal_form",
    "sigma_eval",
    "star_apply",
    "words_from_bijection",
]

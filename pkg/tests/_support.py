"""Shared grids and builders for the test suite."""

from __future__ import annotations

from fractions import Fraction

from verbalops.autgroup import closed_form_words
from verbalops.exactfield import FieldAutomorphism, FieldElement, FieldSpec
from verbalops.relfree import VarietySpec, normal_form
from verbalops.verbal import ScalarWordFamily, WordSystem

FIELD = FieldSpec.quadratic(2)
NILP3 = VarietySpec.nilpotent(3)
NILP4 = VarietySpec.nilpotent(4)


def fe(a, b=0) -> FieldElement:
    return FieldElement(Fraction(a), Fraction(b), FIELD.d)


PHIS = ("identity", "conjugation")
GAMMAS = (fe(0), fe(1), fe(Fraction(-1, 2)))
DESIGN_ALPHAS = ((fe(1), fe(0)), (fe(2), fe(1)), (fe(1), fe(-2)), (fe(Fraction(1, 2)), fe(3)))
EXTRA_VALID_ALPHAS = ((fe(0), fe(1)), (fe(3), fe(1)), (fe(-1), fe(0)), (fe(1, 1), fe(2)))
DEGENERATE_ALPHAS = (
    (fe(1), fe(1)), (fe(1), fe(-1)), (fe(2), fe(2)), (fe(2), fe(-2)),
    (fe(0), fe(0)), (fe(Fraction(1, 2)), fe(Fraction(-1, 2))), (fe(-3), fe(3)), (fe(1, 1), fe(1, 1)),
)
ALPHA_GRID = DESIGN_ALPHAS + EXTRA_VALID_ALPHAS + DEGENERATE_ALPHAS


def is_degenerate(a12, a21) -> bool:
    return a12 == a21 or a12 == -a21


def raw_wordsystem(variety: VarietySpec, phi: str, alpha12, alpha21, gamma12=0, gamma1_22=0,
                   gamma11_2=0, field: FieldSpec = FIELD) -> WordSystem:
    """Closed-form word system built without the parameter-level validation (degenerate tuples allowed)."""
    kind = f"nilpotent{variety.nilpotency}" if variety.is_nilpotent else variety.name
    w_plus, w_dot, scalar = closed_form_words(kind, gamma12, gamma1_22, gamma11_2, alpha12, alpha21)
    return WordSystem(variety, field, ScalarWordFamily.build(FieldAutomorphism(phi, field), scalar),
                      w_plus, normal_form(variety, w_dot))


def theta3_grid():
    """96 points: 2 field automorphisms x 3 gammas x 16 alpha pairs (8 valid, 8 degenerate)."""
    return [(phi, g, a12, a21) for phi in PHIS for g in GAMMAS for a12, a21 in ALPHA_GRID]

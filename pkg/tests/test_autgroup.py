import random
from fractions import Fraction

import pytest

from _support import FIELD, NILP3, NILP4, fe
from verbalops.autgroup import (
    TABLE,
    compose,
    compose3,
    compose4,
    identity_params,
    invert,
    make_params,
    nilpotent4_reference_relations,
    params_from_ratio,
    params_to_wordsystem,
    quotient_class,
    reference_assignment,
    solve_general_wordsystem,
    truncate_params,
    verify_anticommutative_scaling,
    verify_power_associative_scaling,
    wordsystem_to_params,
)
from verbalops.errors import ConstraintError
from verbalops.relfree import VarietySpec


def random_params(rng, variety):
    while True:
        a12, a21 = FIELD.random_element(rng, 4), FIELD.random_element(rng, 4)
        if a12 != a21 and a12 != -a21:
            break
    extra = [FIELD.random_element(rng, 3) for _ in range(2)] if variety == NILP4 else [0, 0]
    return make_params(variety, FIELD, rng.choice(["identity", "conjugation"]), a12, a21,
                       FIELD.random_element(rng, 3), *extra)


def test_class_three_composition_example():
    p = make_params(NILP3, FIELD, "identity", 2, 1, 0)
    r = compose3(p, p)
    assert (r.alpha12, r.alpha21, r.gamma12) == (5, 4, 0)


def test_class_four_composition_frozen_from_sigma_oracle():
    p = make_params(NILP4, FIELD, "conjugation", fe(1, 1), 3, 1, Fraction(-1, 2), 2)
    q = make_params(NILP4, FIELD, "identity", 2, 1, Fraction(-1, 2), 1, 0)
    r = compose4(p, q)
    assert r.phi.kind == "conjugation"
    assert (r.alpha12, r.alpha21) == (fe(5, 2), fe(7, 1))
    assert r.gamma12 == fe(-1, Fraction(-1, 2))
    assert r.gamma1_22 == fe(Fraction(15, 2), Fraction(11, 2))
    assert r.gamma11_2 == fe(16, Fraction(7, 2))


@pytest.mark.parametrize("variety", [NILP3, NILP4])
def test_group_laws(variety):
    rng = random.Random(7)
    e = identity_params(variety, FIELD)
    for _ in range(15):
        p, q, s = (random_params(rng, variety) for _ in range(3))
        assert compose(p, e) == p == compose(e, p)
        assert compose(p, invert(p)) == e == compose(invert(p), p)
        assert compose(compose(p, q), s) == compose(p, compose(q, s))


def test_params_word_round_trip():
    rng = random.Random(3)
    for variety in (NILP3, NILP4):
        p = random_params(rng, variety)
        assert wordsystem_to_params(params_to_wordsystem(p)) == p


def test_parameter_constraints():
    with pytest.raises(ConstraintError, match="alpha12 != ±alpha21"):
        make_params(NILP3, FIELD, "identity", 1, -1)
    with pytest.raises(ConstraintError):
        make_params(VarietySpec.jordan(), FIELD, "identity", 0, 0)
    with pytest.raises(ConstraintError):
        make_params(VarietySpec.alternative(), FIELD, "identity", 1, 1)


def test_truncation_is_a_homomorphism():
    rng = random.Random(11)
    for _ in range(10):
        p, q = random_params(rng, NILP4), random_params(rng, NILP4)
        assert truncate_params(compose(p, q)) == compose(truncate_params(p), truncate_params(q))


def test_quotient_semidirect_law_and_ratio():
    p = make_params(NILP3, FIELD, "identity", 3, 1)
    assert quotient_class(p).value == 2
    iota = fe(1, 1)
    assert quotient_class(params_from_ratio(NILP3, FIELD, iota, "conjugation")).value == iota
    assert quotient_class(identity_params(NILP3, FIELD)).is_trivial


def test_class_three_solver_reproduces_closed_form():
    fam = solve_general_wordsystem(NILP3)
    assert fam.free_parameters == ["phi", "gamma12", "alpha12", "alpha21"]
    assert str(fam.closed_form.w_plus) == "x1 + x2 + (gamma12)*x1*x2 + (gamma12)*x2*x1"
    assert str(fam.closed_form.w_dot) == "(alpha12)*x1*x2 + (alpha21)*x2*x1"
    assert fam.zeroed_by(reference_assignment(NILP3))


def test_class_four_solver_relations():
    fam = solve_general_wordsystem(NILP4)
    assert len(fam.free_parameters) == 6 and fam.free_parameters[0] == "phi"
    for name, rel in nilpotent4_reference_relations().items():
        assert fam.implies(rel), name
        assert fam.spans(rel), name
    assert fam.zeroed_by(reference_assignment(NILP4))


@pytest.mark.parametrize("name, free", [
    ("free", ["phi", "alpha12", "alpha21"]),
    ("power-associative", ["phi", "alpha12", "alpha21"]),
    ("commutative", ["phi", "alpha12"]),
    ("jordan", ["phi", "alpha12"]),
    ("anticommutative", ["phi", "alpha12"]),
])
def test_classical_solver(name, free):
    fam = solve_general_wordsystem(VarietySpec.parse(name))
    assert fam.free_parameters == free
    assert str(fam.closed_form.w_plus) == "x1 + x2"


def test_alternative_solver_branches():
    fam = solve_general_wordsystem(VarietySpec.alternative())
    assert sorted(b.label for b in fam.branches) == ["alpha12 = 0", "alpha21 = 0"]


def test_scaling_identities():
    assert verify_power_associative_scaling(4)
    assert verify_anticommutative_scaling(4)


def test_table_has_eight_rows():
    assert sorted(row for row, _ in TABLE.values()) == list(range(1, 9))

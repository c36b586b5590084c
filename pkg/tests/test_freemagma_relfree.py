import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from verbalops.errors import ArityError
from verbalops.freemagma import (
    AlgebraElement,
    catalan,
    enumerate_monomials,
    generators,
    leaf,
    node,
    substitute,
    truncate,
)
from verbalops.relfree import VarietySpec, dim_component, is_identity, normal_form, reduced_basis


def multinomial(parts):
    out = math.factorial(sum(parts))
    for p in parts:
        out //= math.factorial(p)
    return out


def independent_catalan(k):
    return math.comb(2 * k, k) // (k + 1)


@pytest.mark.parametrize("g", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_monomial_counts_match_closed_form(g, n):
    # binary trees with n leaves, each leaf labelled by one of g generators
    assert len(enumerate_monomials(g, n)) == independent_catalan(n - 1) * g ** n
    assert catalan(n) == independent_catalan(n)


def test_multidegree_counts():
    assert len(enumerate_monomials(3, (2, 1, 1))) == independent_catalan(3) * multinomial((2, 1, 1))
    assert len(set(enumerate_monomials(2, 4))) == len(enumerate_monomials(2, 4))


def test_canonical_rendering():
    x1, x2 = generators(2)
    assert str(x2 * x1 + x1 * x2) == "x1*x2 + x2*x1"
    assert str((x1 * x2) * x1) == "(x1*x2)*x1"
    assert str(-x1) == "-x1"
    assert str(AlgebraElement.zero(2)) == "0"
    assert str(x1.scale(Fraction(1, 2)) - x2 * x2) == "1/2*x1 - x2*x2"


def test_monomials_are_interned():
    assert node(leaf(1), leaf(2)) is node(leaf(1), leaf(2))


small = st.lists(st.tuples(st.sampled_from(enumerate_monomials(2, 1) + enumerate_monomials(2, 2)),
                           st.integers(-3, 3)), max_size=4)


def _elem(pairs):
    out = AlgebraElement.zero(2)
    for m, c in pairs:
        out = out + AlgebraElement.from_monomial(m, 2, c)
    return out


@given(small, small, small)
def test_product_is_bilinear(u, v, w):
    a, b, c = _elem(u), _elem(v), _elem(w)
    assert (a + b) * c == a * c + b * c
    assert c * (a + b) == c * a + c * b


@given(small, small)
def test_substitution_is_a_homomorphism(u, v):
    a, b = _elem(u), _elem(v)
    x1, x2 = generators(2)
    images = [x1 + x2 * x2, x1 * x2]
    assert substitute(a * b, images) == substitute(a, images) * substitute(b, images)


def test_substitute_checks_arity():
    x1, _ = generators(2)
    with pytest.raises(ArityError):
        substitute(x1, [x1])


def test_truncation_drops_high_degrees():
    x1, x2 = generators(2)
    assert truncate(x1 + x1 * x2 + (x1 * x2) * x1, 3) == x1 + x1 * x2


def test_anticommutative_one_generator_algebra_is_one_dimensional():
    V = VarietySpec.anticommutative()
    assert [dim_component(V, 1, n) for n in range(1, 6)] == [1, 0, 0, 0, 0]


def test_free_nilpotent3_on_two_generators_has_dimension_six():
    V = VarietySpec.nilpotent(3)
    assert sum(dim_component(V, 2, n) for n in (1, 2)) == 6
    assert dim_component(V, 2, 3) == 0


def test_commutative_one_generator_dims_are_wedderburn_etherington():
    V = VarietySpec.commutative()
    assert [dim_component(V, 1, n) for n in range(1, 6)] == [1, 1, 1, 2, 3]


def test_alternative_on_two_generators_is_associative():
    # two-generated alternative algebras are associative, so the free one has 2^n words in degree n
    V = VarietySpec.alternative()
    assert [dim_component(V, 2, n) for n in range(1, 6)] == [2 ** n for n in range(1, 6)]


def test_jordan_on_two_generators_matches_reversal_symmetric_words():
    # the free Jordan algebra on two letters is spanned by symmetrized words up to reversal
    V = VarietySpec.jordan()
    expected = [(2 ** n + 2 ** ((n + 1) // 2)) // 2 for n in range(1, 6)]
    assert [dim_component(V, 2, n) for n in range(1, 6)] == expected


def test_power_associative_one_generator_dims():
    V = VarietySpec.power_associative()
    assert [dim_component(V, 1, n) for n in range(1, 5)] == [1, 1, 1, 1]


def test_normal_forms():
    x1, x2 = generators(2)
    assert normal_form(VarietySpec.commutative(), x2 * x1) == x1 * x2
    assert normal_form(VarietySpec.nilpotent(3), (x1 * x2) * x1).is_zero()
    assert normal_form(VarietySpec.anticommutative(), x1 * x1).is_zero()
    jordan = ((x1 * x1) * x2) * x1 - (x1 * x1) * (x2 * x1)
    assert is_identity(VarietySpec.jordan(), jordan)
    assert not is_identity(VarietySpec.free(), x1 * x2 - x2 * x1)


def test_reduced_basis_size_agrees_with_dimension():
    V = VarietySpec.jordan()
    assert len(reduced_basis(V, 2, 4)) == dim_component(V, 2, 4)


def test_variety_names():
    assert VarietySpec.parse("power-associative") == VarietySpec.power_associative()
    assert VarietySpec.parse("nilpotent5").nilpotency == 5
    assert VarietySpec.nilpotent(4).cli_name == "nilpotent4"
    with pytest.raises(ValueError):
        VarietySpec.parse("lie")

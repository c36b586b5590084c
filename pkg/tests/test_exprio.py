import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _support import FIELD, NILP3, NILP4, fe
from verbalops.autgroup import make_params, params_to_wordsystem
from verbalops.errors import ConstraintError, ParseError, SchemaError
from verbalops.exprio import (
    AmbiguousAssociationWarning,
    format_expression,
    load_params,
    load_wordsystem,
    parse_expression,
    parse_polynomial,
    save_params,
    save_wordsystem,
)
from verbalops.freemagma import AlgebraElement, enumerate_monomials, generators
from verbalops.polynomial import Poly

MONOS = [m for d in range(1, 4) for m in enumerate_monomials(3, d)]
scalars = st.builds(lambda a, b: fe(a, b),
                    st.fractions(-9, 9, max_denominator=6), st.fractions(-9, 9, max_denominator=6))
elements = st.dictionaries(st.sampled_from(MONOS), scalars, max_size=5).map(lambda d: AlgebraElement(d, 3))


@given(elements)
def test_parse_format_round_trip(e):
    assert parse_expression(format_expression(e), 3, FIELD) == e


def test_parse_examples():
    x1, x2, x3 = generators(3)
    assert parse_expression("x1*x2 - x2*x1", 2) == (x1 * x2 - x2 * x1).with_ngens(2)
    e = parse_expression("(x1*x2)*x1 + 1/2*x2", 2)
    assert len(e) == 2 and e.coefficient(generators(2)[1].items()[0][0]) == Fraction(1, 2)
    with pytest.warns(AmbiguousAssociationWarning):
        assert parse_expression("x1*x2*x3", 3) == (x1 * x2) * x3


def test_format_examples():
    x1, x2 = generators(2)
    assert format_expression(x2 * x1 + x1 * x2) == "x1*x2 + x2*x1"
    assert format_expression(AlgebraElement.zero(2)) == "0"
    assert format_expression(-x1) == "-x1"
    assert format_expression(x1.scale(fe(1, -1))) == "[1, -1]*x1"


def test_scalars_fold_and_act():
    x1, x2 = generators(2)
    assert parse_expression("2*3*x1 - [0, 1]*[0, 1]*x2", 2) == x1.scale(6) - x2.scale(2)
    assert parse_expression("x1*2*x2", 2) == (x1 * x2).scale(2)


@pytest.mark.parametrize("text, where", [("x1 + ", 5), ("x4", 0), ("x1 $ x2", 3), ("(x1", 3)])
def test_syntax_errors_carry_positions(text, where):
    with pytest.raises(ParseError) as info:
        parse_expression(text, 3)
    assert info.value.position == where


def test_polynomial_parser():
    a = Poly.var("a")
    assert parse_polynomial("a^2 - a") == a * a - a
    assert parse_polynomial("[1, 1]*a^3 + 1/2") == a ** 3 * fe(1, 1) + Fraction(1, 2)
    with pytest.raises(ParseError):
        parse_polynomial("b")


def test_params3_shorthand_gives_the_closed_form():
    W = load_wordsystem({"params3": {"gamma12": "1", "alpha12": "1", "alpha21": "0", "phi": "identity"}})
    doc = save_wordsystem(W)
    assert doc["w_plus"] == "x1 + x2 + x1*x2 + x2*x1"
    assert doc["w_dot"] == "x1*x2"
    assert doc["scalar_family"] == {"x1": "a", "x1*x1": "a^2 - a"}


def test_explicit_identity_document():
    W = load_wordsystem({"variety": "nilpotent3", "field": {"kind": "quadratic", "d": 2}, "phi": "identity",
                         "w_plus": "x1 + x2", "w_dot": "x1*x2", "scalar_family": {"x1": "a"}})
    assert W == params_to_wordsystem(make_params(NILP3, FIELD, "identity", 1, 0))


@pytest.mark.parametrize("doc", [
    {"params3": {"alpha12": "1", "alpha21": "1"}},
    {"variety": "free", "w_plus": "x1 + x2", "w_dot": "x1*x2 + x2*x1", "scalar_family": {"x1": "a"}},
])
def test_equal_alphas_rejected_by_name(doc):
    with pytest.raises(ConstraintError) as info:
        load_wordsystem(doc)
    assert info.value.constraint == "alpha12 != ±alpha21"


@pytest.mark.parametrize("doc, constraint", [
    ({"variety": "free", "w_plus": "x1", "w_dot": "x1*x2", "scalar_family": {"x1": "a"}}, "w_plus linear part"),
    ({"variety": "commutative", "w_plus": "x1 + x2", "w_dot": "x2*x1", "scalar_family": {"x1": "a"}},
     "w_dot normal form"),
    ({"variety": "free", "w_plus": "x1 + x2", "w_dot": "x1*x2", "scalar_family": {"x1": "a + 1"}},
     "scalar linear part"),
    ({"variety": "free", "w_plus": "x1 + x2", "w_dot": "x1*x2", "scalar_family": {"x1": "a", "x1*x1": "1"}},
     "scalar words vanish at a = 0"),
    ({"variety": "free", "w_plus": "x1 + x2", "w_dot": "x1 + x1*x2", "scalar_family": {"x1": "a"}},
     "w_dot linear part"),
])
def test_every_word_invariant_has_a_named_rejection(doc, constraint):
    with pytest.raises(ConstraintError) as info:
        load_wordsystem(doc)
    assert info.value.constraint == constraint


@pytest.mark.parametrize("doc, path", [
    ({"w_plus": "x1", "w_dot": "x1", "scalar_family": {}}, "$.variety"),
    ({"variety": "free", "w_plus": 3, "w_dot": "x1", "scalar_family": {}}, "$.w_plus"),
    ({"variety": "free", "w_plus": "x1 + x2", "w_dot": "x1*", "scalar_family": {}}, "$.w_dot"),
    ({"variety": "lie", "w_plus": "x1", "w_dot": "x1", "scalar_family": {}}, "$.variety"),
    ({"variety": "free", "field": {"kind": "cubic"}, "w_plus": "x1", "w_dot": "x1", "scalar_family": {}},
     "$.field.kind"),
    ({"params3": {"alpha12": "1", "beta": "2"}}, "$.params3.beta"),
])
def test_schema_errors_name_the_path(doc, path):
    with pytest.raises(SchemaError) as info:
        load_wordsystem(doc)
    assert info.value.path == path


def test_params_documents_round_trip():
    for p in (make_params(NILP4, FIELD, "conjugation", fe(1, 1), 3, 1, Fraction(-1, 2), 2),
              make_params(NILP3, FIELD, "identity", 2, 1, 1)):
        doc = save_params(p)
        assert load_params(json.loads(json.dumps(doc))) == p

from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from verbalops.exactfield import FieldElement
from verbalops.linalg import SparseEchelon, inverse, kernel, rank, solve
from verbalops.polynomial import Poly, eliminate, format_poly

coeffs = st.integers(-5, 5)
monos = st.sampled_from([(), (("a", 1),), (("a", 2),), (("b", 1),), (("a", 1), ("b", 1))])
polys = st.dictionaries(monos, coeffs, max_size=4).map(Poly)


@given(polys, polys)
def test_poly_arithmetic_agrees_with_sympy(p, q):
    assert Poly.from_sympy(p.to_sympy() * q.to_sympy()) == p * q
    assert Poly.from_sympy(p.to_sympy() - q.to_sympy()) == p - q


@given(polys, polys)
def test_substitution_is_a_ring_map(p, q):
    value = Poly.var("b") + 2
    assert (p * q).subs({"a": value}) == p.subs({"a": value}) * q.subs({"a": value})


def test_format_and_split():
    a, b = Poly.var("a"), Poly.var("b")
    assert format_poly(a * a - a) == "a^2 - a"
    assert format_poly(Poly()) == "0"
    parts = (a * a * b + 3 * b).split(["a"])
    assert parts[(("a", 2),)] == b and parts[()] == 3 * b


def test_eliminate_solves_linear_unknowns():
    x, y, t = Poly.var("x"), Poly.var("y"), Poly.var("t")
    sol, left = eliminate([x + y - t, x - y - 1], ["x", "y"])
    assert not left
    assert sol["x"] == (t + 1) / 2 and sol["y"] == (t - 1) / 2


def test_eliminate_respects_preferred_free():
    x, y = Poly.var("x"), Poly.var("y")
    sol, _ = eliminate([x - 2 * y], ["x", "y"], keep_last=["x"])
    assert set(sol) == {"y"} and sol["y"] == x / 2


def _q(rows):
    return [[FieldElement(Fraction(v)) for v in r] for r in rows]


def test_dense_helpers_match_sympy():
    m = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    inv = inverse(_q(m), FieldElement(1), FieldElement(0))
    expected = sympy.Matrix(m).inv()
    assert all(inv[i][j] == Fraction(int(expected[i, j].p), int(expected[i, j].q)) for i in range(3) for j in range(3))
    singular = _q([[1, 2], [2, 4]])
    assert rank(singular) == 1
    (vec,) = kernel(singular, FieldElement(1), FieldElement(0))
    assert vec[0] + 2 * vec[1] == 0
    sol = solve(_q(m), [FieldElement(1)] * 3, FieldElement(0))
    assert all(sum((FieldElement(m[i][j]) * sol[j] for j in range(3)), FieldElement(0)) == 1 for i in range(3))


def test_sparse_echelon_membership():
    ech = SparseEchelon(key=lambda k: k)
    ech.extend([{1: FieldElement(1), 2: FieldElement(1)}, {2: FieldElement(1), 3: FieldElement(-1)}])
    assert ech.contains({1: FieldElement(1), 3: FieldElement(1)})
    assert not ech.contains({3: FieldElement(1)})

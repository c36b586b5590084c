"""Word systems, verbal operations, and the bijections they induce.

A word system fixes, for a variety, a word for addition (on x1, x2), a word
for multiplication (on x1, x2), and a family of one-generator words for the
action of each scalar lambda, whose coefficients are polynomials in
a = phi(lambda).  Substituting algebra elements into these words gives the
"star" operations; evaluating an element with them gives the bijection sigma.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import FitError, InconsistentSystemError
from .exactfield import FieldAutomorphism, FieldElement, FieldSpec, apply_aut
from .freemagma import (
    AlgebraElement,
    Monomial,
    generators,
    graded_component,
    homogeneous_components,
    leaf,
    linear_combine,
    monomial_key,
    node,
    substitute,
)
from .linalg import inverse, kernel, rank
from .polynomial import Poly, eliminate
from .relfree import VarietySpec, normal_form, reduced_basis

A = "a"
B = "b"


@dataclass(frozen=True)
class ScalarWordFamily:
    """Words lambda * x = sum_m p_m(phi(lambda)) m on one generator."""

    phi: FieldAutomorphism
    coefficients: tuple[tuple[Monomial, Poly], ...]

    @classmethod
    def build(cls, phi: FieldAutomorphism, coeffs: dict[Monomial, Poly]) -> "ScalarWordFamily":
        items = sorted(((m, Poly.coerce(p)) for m, p in coeffs.items() if p), key=lambda kv: kv[0].key)
        return cls(phi, tuple(items))

    @property
    def as_dict(self) -> dict[Monomial, Poly]:
        return dict(self.coefficients)

    def word(self, a) -> AlgebraElement:
        """The one-generator word for a given value of a = phi(lambda) (scalar or polynomial)."""
        out = {}
        for m, p in self.coefficients:
            v = evaluate_univariate(p, A, a)
            if v:
                out[m] = v
        return AlgebraElement(out, 1)

    def __eq__(self, other):
        if not isinstance(other, ScalarWordFamily):
            return NotImplemented
        return self.phi == other.phi and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.phi, self.coefficients))


def evaluate_univariate(p: Poly, var: str, value):
    """Horner evaluation of a polynomial in one variable at a scalar or polynomial."""
    if not p.terms:
        return FieldElement(0)
    if p.variables() - {var}:
        out = p.subs({var: value})
        return out.constant() if out.is_constant() else out
    coeffs = p.univariate_coefficients(var)
    top = max(coeffs)
    acc = coeffs.get(top)
    for k in range(top - 1, -1, -1):
        acc = acc * value + coeffs.get(k, 0)
    if isinstance(acc, Poly) and acc.is_constant():
        return acc.constant()
    return acc


@dataclass(frozen=True)
class WordSystem:
    variety: VarietySpec
    field: FieldSpec
    scalar_family: ScalarWordFamily
    w_plus: AlgebraElement
    w_dot: AlgebraElement

    @property
    def phi(self) -> FieldAutomorphism:
        return self.scalar_family.phi

    @property
    def w_zero(self) -> AlgebraElement:
        return AlgebraElement.zero(0)

    @property
    def truncation(self) -> int | None:
        """Largest surviving degree for nilpotent varieties."""
        return self.variety.nilpotency - 1 if self.variety.is_nilpotent else None


@dataclass
class Witness:
    axiom: str
    generator_count: int
    residual: AlgebraElement
    note: str = ""

    def __str__(self):
        extra = f" [{self.note}]" if self.note else ""
        return f"{self.axiom} on {self.generator_count} generators: residual {self.residual}{extra}"


@dataclass
class CheckReport:
    condition: str
    verdict: bool
    witnesses: list[Witness] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict

    def summary(self) -> str:
        head = f"{self.condition}: {'PASS' if self.verdict else 'FAIL'}"
        return "\n".join([head] + [f"  {w}" for w in self.witnesses])


# --- star operations ----------------------------------------------------------

class StarAlgebra:
    """Verbal operations of a word system acting on a relatively free algebra."""

    def __init__(self, W: WordSystem):
        self.W = W
        self.variety = W.variety
        self.maxdeg = W.truncation
        self._scalar_words: dict = {}

    def nf(self, e: AlgebraElement) -> AlgebraElement:
        return normal_form(self.variety, e)

    def plus(self, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        return self.nf(substitute(self.W.w_plus, [u, v], self.maxdeg))

    def dot(self, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        return self.nf(substitute(self.W.w_dot, [u, v], self.maxdeg))

    def scal_a(self, a, u: AlgebraElement) -> AlgebraElement:
        """Scalar action given the value a = phi(lambda) directly (possibly formal)."""
        key = a if isinstance(a, (FieldElement, Poly)) else FieldElement.coerce(a)
        word = self._scalar_words.get(key)
        if word is None:
            word = self.W.scalar_family.word(a)
            self._scalar_words[key] = word
        return self.nf(substitute(word, [u], self.maxdeg))

    def scal(self, lam, u: AlgebraElement) -> AlgebraElement:
        return self.scal_a(apply_aut(self.W.phi, lam), u)

    def neg(self, u: AlgebraElement) -> AlgebraElement:
        return self.scal_a(FieldElement(-1), u)

    def zero(self, g: int) -> AlgebraElement:
        return AlgebraElement.zero(g)

    def fold(self, pairs: Sequence[tuple[object, AlgebraElement]], g: int) -> AlgebraElement:
        """Star-linear combination: sum (via the addition word) of lambda * u."""
        acc = None
        for c, u in pairs:
            t = self.scal(c, u)
            acc = t if acc is None else self.plus(acc, t)
        return acc if acc is not None else self.zero(g)

    def evaluate(self, e: AlgebraElement, args: Sequence[AlgebraElement]) -> AlgebraElement:
        """Evaluate an element of a free algebra with star operations at the given arguments."""
        cache: dict = {}

        def ev(m: Monomial) -> AlgebraElement:
            r = cache.get(m)
            if r is None:
                r = args[m.gen - 1] if m.gen is not None else self.dot(ev(m.left), ev(m.right))
                cache[m] = r
            return r

        g = args[0].ngens
        return self.fold([(c, ev(m)) for m, c in e.items()], g)


def star_apply(W: WordSystem, op: str, args: Sequence[AlgebraElement], scalar=None) -> AlgebraElement:
    """Apply one verbal operation: op is "zero", "plus", "dot" or "scalar" (with scalar=lambda)."""
    S = StarAlgebra(W)
    if op == "zero":
        if not args:
            raise ValueError("zero needs a template element to fix the generator count")
        return S.zero(args[0].ngens)
    if op == "plus":
        return S.plus(*args)
    if op == "dot":
        return S.dot(*args)
    if op == "scalar":
        (u,) = args
        return S.scal(scalar, u)
    raise ValueError(f"unknown verbal operation {op!r}")


def sigma_eval(W: WordSystem, e: AlgebraElement, star: StarAlgebra | None = None) -> AlgebraElement:
    """The bijection sigma: fixes generators, turns products into star products, scalars into
    star scalar actions, and folds sums with the star addition in canonical term order."""
    S = star or StarAlgebra(W)
    e = S.nf(e)
    return S.evaluate(e, generators(e.ngens)) if e.ngens else e


# --- reading words off a bijection --------------------------------------------

def _interpolate(points: list[tuple[FieldElement, object]]) -> Poly:
    a = Poly.var(A)
    result = Poly()
    for i, (xi, yi) in enumerate(points):
        if not yi:
            continue
        term = Poly.coerce(yi)
        for j, (xj, _) in enumerate(points):
            if j != i:
                term = term * (a - xj) / (xi - xj)
        result = result + term
    return result


def words_from_bijection(sigma: Callable[[AlgebraElement], AlgebraElement], variety: VarietySpec,
                         field_spec: FieldSpec, poly_degree: int | None = None) -> WordSystem:
    """Recover the word system of a bijection from sigma(x1 + x2), sigma(x1 x2) and sigma(lambda x)."""
    x1, x2 = generators(2)
    (x,) = generators(1)
    w_plus = normal_form(variety, sigma(x1 + x2))
    w_dot = normal_form(variety, sigma(x1 * x2))
    phi = FieldAutomorphism.identity(field_spec)
    if field_spec.is_quadratic:
        r = field_spec.sqrt_d()
        lin = normal_form(variety, sigma(x.scale(r))).coefficient(leaf(1))
        ratio = lin / r
        if ratio == 1:
            phi = FieldAutomorphism.identity(field_spec)
        elif ratio == -1:
            phi = FieldAutomorphism.conjugation(field_spec)
        else:
            raise FitError(f"linear part of sigma(sqrt d * x) is {lin}, not +-sqrt d times x")
    if poly_degree is None:
        poly_degree = variety.nilpotency - 1 if variety.is_nilpotent else variety.degree_cap
    samples = [FieldElement(k, 0, field_spec.d) for k in range(poly_degree + 1)]
    values = {lam: normal_form(variety, sigma(x.scale(lam))) for lam in samples}
    monos = sorted({m for v in values.values() for m in v.terms}, key=monomial_key)
    coeffs = {m: _interpolate([(lam, values[lam].coefficient(m)) for lam in samples]) for m in monos}
    family = ScalarWordFamily.build(phi, coeffs)
    checks = [FieldElement(poly_degree + 1, 0, field_spec.d), FieldElement(Fraction(-1, 2), 0, field_spec.d)]
    if field_spec.is_quadratic:
        checks += [FieldElement(1, 1, field_spec.d), FieldElement(0, Fraction(1, 3), field_spec.d)]
    for lam in checks:
        got = normal_form(variety, sigma(x.scale(lam)))
        want = family.word(apply_aut(phi, lam))
        if got != want:
            raise FitError(f"sigma({lam} x) = {got} is not a polynomial in phi(lambda) of degree <= {poly_degree}")
    return WordSystem(variety, field_spec, family, w_plus, w_dot)


# --- checks -------------------------------------------------------------------

def degree_two_block(W: WordSystem) -> tuple[FieldElement | Poly, FieldElement | Poly]:
    """(alpha12, alpha21): coefficients of x1*x2 and x2*x1 in the multiplication word."""
    x1, x2 = leaf(1), leaf(2)
    return W.w_dot.coefficient(node(x1, x2)), W.w_dot.coefficient(node(x2, x1))


def check_op1(W: WordSystem) -> CheckReport:
    """Well-formedness of the word system itself (shape of the low-degree parts)."""
    rep = CheckReport("op1", True)
    x1, x2 = generators(2)
    (x,) = generators(1)

    def fail(name, residual, note=""):
        rep.verdict = False
        rep.witnesses.append(Witness(name, residual.ngens, residual, note))

    for name, w in (("w_plus", W.w_plus), ("w_dot", W.w_dot)):
        if w.ngens != 2:
            fail(f"{name} arity", w, "words must live on two generators")
            return rep
        nf = normal_form(W.variety, w)
        if nf != w:
            fail(f"{name} normal form", w - nf, "word not written in reduced monomials")
    lin_plus = graded_component(W.w_plus, 1)
    if lin_plus != x1 + x2:
        fail("w_plus linear part", lin_plus - (x1 + x2), "addition must be x1 + x2 modulo higher degrees")
    lin_dot = graded_component(W.w_dot, 1)
    if lin_dot:
        fail("w_dot linear part", lin_dot, "multiplication word has no linear part")
    a12, a21 = degree_two_block(W)
    quad = graded_component(W.w_dot, 2)
    extra = quad - (AlgebraElement.from_monomial(node(leaf(1), leaf(2)), 2, a12) if a12 else AlgebraElement.zero(2))
    extra = extra - (AlgebraElement.from_monomial(node(leaf(2), leaf(1)), 2, a21) if a21 else AlgebraElement.zero(2))
    if extra:
        fail("w_dot quadratic part", extra, "only x1*x2 and x2*x1 may occur in degree two")
    if a12 == a21 or a12 == -a21:
        fail("alpha12 != ±alpha21", quad, f"alpha12 = {a12}, alpha21 = {a21}")
    lin_scal = W.scalar_family.as_dict.get(leaf(1), Poly())
    if lin_scal != Poly.var(A):
        fail("scalar linear part", AlgebraElement({leaf(1): 1}, 1), f"coefficient of x is {lin_scal}, expected a")
    return rep


def axiom_pairs(W: WordSystem, S: StarAlgebra, generator_cap: int = 3, include_identities: bool = True):
    """Yield (name, generator count, thunk returning (lhs, rhs)) for every axiom to verify."""
    a = Poly.var(A)
    b = Poly.var(B)
    one = FieldElement(1)
    g1 = generators(1)
    g2 = generators(2)
    g3 = generators(3)
    x, = g1
    y1, y2 = g2
    z1, z2, z3 = g3
    P, D, L = S.plus, S.dot, S.scal_a
    yield "plus commutative", 2, lambda: (P(y1, y2), P(y2, y1))
    if generator_cap >= 3:
        yield "plus associative", 3, lambda: (P(P(z1, z2), z3), P(z1, P(z2, z3)))
    yield "plus zero", 1, lambda: (P(x, S.zero(1)), x)
    yield "plus inverse", 1, lambda: (P(x, L(-one, x)), S.zero(1))
    yield "scalar one", 1, lambda: (L(one, x), x)
    yield "scalar zero", 1, lambda: (L(FieldElement(0), x), S.zero(1))
    yield "scalar product", 1, lambda: (L(a * b, x), L(a, L(b, x)))
    yield "scalar sum", 1, lambda: (L(a + b, x), P(L(a, x), L(b, x)))
    yield "scalar over plus", 2, lambda: (L(a, P(y1, y2)), P(L(a, y1), L(a, y2)))
    if generator_cap >= 3:
        yield "left distributive", 3, lambda: (D(P(z1, z2), z3), P(D(z1, z3), D(z2, z3)))
        yield "right distributive", 3, lambda: (D(z1, P(z2, z3)), P(D(z1, z2), D(z1, z3)))
    yield "scalar left factor", 2, lambda: (L(a, D(y1, y2)), D(L(a, y1), y2))
    yield "scalar right factor", 2, lambda: (L(a, D(y1, y2)), D(y1, L(a, y2)))
    yield "dot zero right", 1, lambda: (D(x, S.zero(1)), S.zero(1))
    yield "dot zero left", 1, lambda: (D(S.zero(1), x), S.zero(1))
    if not include_identities:
        return
    variety = W.variety
    for ident in variety.identities():
        r = ident.ngens
        if variety.is_nilpotent:
            name = f"nilpotency {ident}"
        else:
            name = f"{variety.name} identity {ident}"
            if r > generator_cap:
                continue
        yield name, r, (lambda ident=ident, r=r: (S.evaluate(ident, generators(r)), S.zero(r)))


def check_op2_axioms(W: WordSystem, generator_cap: int = 3) -> CheckReport:
    """The star operations on relatively free algebras satisfy every axiom of the variety.

    Scalar-dependent axioms use formal a = phi(lambda), b = phi(mu), so one check covers all scalars.
    Evaluating on free generators suffices because verbal operations commute with homomorphisms.
    A final faithfulness check rejects systems whose star multiplication satisfies a
    degree-two identity the variety does not have (then no isomorphism onto the star algebra exists).
    """
    S = StarAlgebra(W)
    rep = CheckReport("op2 axioms", True)
    for name, r, build in axiom_pairs(W, S, generator_cap):
        lhs, rhs = build()
        residual = S.nf(lhs - rhs)
        if residual:
            rep.verdict = False
            rep.witnesses.append(Witness(name, r, residual))
    faithful = _degree_two_kernel(W)
    if faithful is not None:
        rep.verdict = False
        rep.witnesses.append(faithful)
    return rep


def _degree_two_kernel(W: WordSystem) -> Witness | None:
    basis = reduced_basis(W.variety, 2, 2)
    mixed = [m for m in basis if m.multidegree(2) == (1, 1)]
    if not mixed:
        return None
    S = StarAlgebra(W)
    g2 = generators(2)
    images = [graded_component(S.evaluate(AlgebraElement.from_monomial(m, 2), g2), 2) for m in mixed]
    matrix = [[im.coefficient(row) for im in images] for row in mixed]
    ker = kernel(matrix, FieldElement(1), FieldElement(0))
    if not ker:
        return None
    v = ker[0]
    e = linear_combine(((c, AlgebraElement.from_monomial(m, 2)) for c, m in zip(v, mixed)), 2)
    comm = AlgebraElement.from_monomial(node(leaf(1), leaf(2)), 2) - AlgebraElement.from_monomial(node(leaf(2), leaf(1)), 2)
    anti = AlgebraElement.from_monomial(node(leaf(1), leaf(2)), 2) + AlgebraElement.from_monomial(node(leaf(2), leaf(1)), 2)
    name = "faithfulness"
    for label, ref in (("commutativity", comm), ("anticommutativity", anti)):
        nref = normal_form(W.variety, ref)
        if nref and _proportional(normal_form(W.variety, e), nref):
            name = label
    return Witness(name, 2, e, "star multiplication kills this element, so the star algebra is not free")


def _proportional(u: AlgebraElement, v: AlgebraElement) -> bool:
    if set(u.terms) != set(v.terms):
        return False
    m = next(iter(v.terms))
    r = u.coefficient(m) / v.coefficient(m)
    return u == v.scale(r)


def _iso_degrees(W: WordSystem, degree_cap: int | None) -> int:
    if W.variety.is_nilpotent:
        top = W.variety.nilpotency - 1
        return top if degree_cap is None else min(top, degree_cap)
    return degree_cap if degree_cap is not None else 3


def sigma_matrix(W: WordSystem, g: int = 2, degree_cap: int | None = None):
    """(basis, matrix) with column j the coordinates of sigma(basis[j])."""
    top = _iso_degrees(W, degree_cap)
    basis = [m for d in range(1, top + 1) for m in reduced_basis(W.variety, g, d)]
    S = StarAlgebra(W)
    gens = generators(g)
    images = [S.evaluate(AlgebraElement.from_monomial(m, g), gens) for m in basis]
    index = {m: i for i, m in enumerate(basis)}
    zero = FieldElement(0, 0, W.field.d)
    matrix = [[zero] * len(basis) for _ in basis]
    for j, im in enumerate(images):
        for m, c in im.terms.items():
            if m in index:
                matrix[index[m]][j] = c
    return basis, matrix, images


def check_sigma_iso(W: WordSystem, g: int = 2, degree_cap: int | None = None) -> CheckReport:
    """sigma is a bijection that preserves the degree filtration.

    The matrix of sigma on the reduced basis is block lower triangular by degree, and
    sigma is bijective exactly when every diagonal block (the map induced on one
    degree) is invertible; the exact rank of the whole matrix decides this.
    """
    rep = CheckReport("sigma isomorphism", True)
    basis, matrix, images = sigma_matrix(W, g, degree_cap)
    top = _iso_degrees(W, degree_cap)
    for m, im in zip(basis, images):
        low = [t for t in im.terms if t.degree < m.degree]
        high = [t for t in im.terms if t.degree > top] if not W.variety.is_nilpotent else []
        if low:
            rep.verdict = False
            rep.witnesses.append(Witness("filtration", g, im, f"image of {m} has terms below degree {m.degree}"))
        if high:
            rep.verdict = False
            rep.witnesses.append(Witness("degree bound", g, im, f"image of {m} leaves degrees <= {top}"))
    r = rank(matrix) if matrix else 0
    rep.details.update(size=len(basis), rank=r)
    if r < len(basis):
        rep.verdict = False
        for d in range(1, top + 1):
            idx = [i for i, m in enumerate(basis) if m.degree == d]
            block = [[matrix[i][j] for j in idx] for i in idx]
            ker = kernel(block, FieldElement(1), FieldElement(0)) if block else []
            if ker:
                phi_inv = W.phi.inverse()
                e = linear_combine(((apply_aut(phi_inv, c), AlgebraElement.from_monomial(basis[i], g))
                                    for c, i in zip(ker[0], idx)), g)
                rep.witnesses.append(Witness(f"singular degree-{d} block", g, e,
                                             f"{len(idx)}x{len(idx)} block has rank {rank(block)}"))
                break
    return rep


def filtration_check(W: WordSystem, g: int, i: int, degree_cap: int | None = None) -> bool:
    """sigma maps the span of basis monomials of degree >= i onto the filtration piece F^i."""
    basis, matrix, images = sigma_matrix(W, g, degree_cap)
    cols = [j for j, m in enumerate(basis) if m.degree >= i]
    rows = [k for k, m in enumerate(basis) if m.degree < i]
    if any(matrix[k][j] for k in rows for j in cols):
        return False
    sub = [[matrix[k][j] for j in cols] for k in range(len(basis)) if basis[k].degree >= i]
    return rank(sub) == len(cols) if cols else True


class SigmaInverter:
    """Inverse of sigma, solved degree by degree with exact inverses of the diagonal blocks."""

    def __init__(self, W: WordSystem, g: int, degree_cap: int | None = None):
        self.W = W
        self.g = g
        self.S = StarAlgebra(W)
        self.top = _iso_degrees(W, degree_cap)
        self.blocks = {}
        one, zero = FieldElement(1, 0, W.field.d), FieldElement(0, 0, W.field.d)
        basis, matrix, _ = sigma_matrix(W, g, self.top)
        for d in range(1, self.top + 1):
            idx = [i for i, m in enumerate(basis) if m.degree == d]
            if not idx:
                continue
            block = [[matrix[i][j] for j in idx] for i in idx]
            self.blocks[d] = ([basis[i] for i in idx], inverse(block, one, zero))

    def __call__(self, y: AlgebraElement) -> AlgebraElement:
        S = self.S
        y = S.nf(y)
        f = AlgebraElement.zero(self.g)
        phi_inv = self.W.phi.inverse()
        for d in range(1, self.top + 1):
            if d not in self.blocks:
                continue
            r = graded_component(S.nf(y - S.evaluate(f, generators(self.g)) if f else y), d)
            if not r:
                continue
            mons, inv = self.blocks[d]
            rv = [r.coefficient(m) for m in mons]
            z = [sum((inv[i][j] * rv[j] for j in range(len(mons))), FieldElement(0)) for i in range(len(mons))]
            f = f + linear_combine(((apply_aut(phi_inv, c), AlgebraElement.from_monomial(m, self.g))
                                    for c, m in zip(z, mons)), self.g)
        if S.evaluate(f, generators(self.g)) != y:
            raise InconsistentSystemError(f"could not invert sigma at {y}")
        return f


def _random_element(rng: random.Random, W: WordSystem, g: int, max_degree: int) -> AlgebraElement:
    terms = {}
    for d in range(1, max_degree + 1):
        for m in reduced_basis(W.variety, g, d):
            if rng.random() < 0.5:
                terms[m] = W.field.random_element(rng, 3)
    return AlgebraElement(terms, g)


def check_b1(W: WordSystem, samples: int = 20, seed: int = 0, max_gens: int = 3) -> CheckReport:
    """For random homomorphisms psi between relatively free algebras, the conjugates
    sigma^-1 psi sigma and sigma psi sigma^-1 are homomorphisms (for the original and the
    star operations respectively), checked on sums, scalar multiples and products of generators."""
    rng = random.Random(seed)
    rep = CheckReport("B1 sampled", True)
    inverters: dict[int, SigmaInverter] = {}
    S = StarAlgebra(W)
    top = _iso_degrees(W, None)
    img_deg = 1 if not W.variety.is_nilpotent else max(1, top - 1)
    for _ in range(samples):
        p = rng.randint(1, max_gens)
        q = rng.randint(1, max_gens)
        images = [_random_element(rng, W, q, img_deg) for _ in range(p)]

        def psi(e):
            return normal_form(W.variety, substitute(e, images, W.truncation))

        for n in (p, q):
            if n not in inverters:
                inverters[n] = SigmaInverter(W, n)
        inv_q = inverters[q]
        inv_p = inverters[p]

        def chi(e):  # sigma^-1 psi sigma : a homomorphism of the original algebras
            return inv_q(psi(sigma_eval(W, e, S)))

        def chi_star(e):  # sigma psi sigma^-1 : a homomorphism of the star algebras
            return sigma_eval(W, psi(inv_p(e)), S)

        gens = generators(p)
        lam = W.field.random_element(rng, 4)
        for i in range(p):
            for j in range(p):
                u, v = gens[i], gens[j]
                checks = [
                    ("product", chi(u * v), normal_form(W.variety, chi(u) * chi(v))),
                    ("sum", chi(u + v), chi(u) + chi(v)),
                    ("scalar", chi(u.scale(lam)), chi(u).scale(lam)),
                    ("star product", chi_star(S.dot(u, v)), S.dot(chi_star(u), chi_star(v))),
                    ("star sum", chi_star(S.plus(u, v)), S.plus(chi_star(u), chi_star(v))),
                ]
                for name, lhs, rhs in checks:
                    res = normal_form(W.variety, lhs - rhs)
                    if res:
                        rep.verdict = False
                        rep.witnesses.append(Witness(f"B1 {name}", q, res, f"psi images {[str(x) for x in images]}"))
                        return rep
    return rep


# --- inner automorphisms --------------------------------------------------------

@dataclass
class InnerResult:
    feasible: bool
    certificate: AlgebraElement | None = None
    reason: str = ""

    def __bool__(self):
        return self.feasible


T = "t"


def inner_solve(W: WordSystem, ansatz_degree: int | None = None) -> InnerResult:
    """Search for p in F(x) with p(f1 + f2) = p(f1) + p(f2) (star addition), p(f1 f2) = p(f1) x p(f2)
    (star product) and p(lambda f) = lambda * p(f), solving one degree of p at a time.

    A solution is the certificate c(f) = p(f) of a natural isomorphism from the identity
    functor, so the automorphism is inner exactly when one exists with invertible linear part.
    """
    variety = W.variety
    if ansatz_degree is None:
        ansatz_degree = variety.nilpotency - 1 if variety.is_nilpotent else 2
    S = StarAlgebra(W)
    basis = {d: reduced_basis(variety, 1, d) for d in range(1, ansatz_degree + 1)}
    names = {}
    p_terms = {}
    for d, mons in basis.items():
        for k, m in enumerate(mons):
            name = f"c{d}_{k}"
            names[name] = (d, m)
            p_terms[m] = Poly.var(name)
    p = AlgebraElement(p_terms, 1)
    x1, x2 = generators(2)
    (x,) = generators(1)
    maxdeg = W.truncation
    check_degree = maxdeg if maxdeg is not None else 2 * ansatz_degree

    def comp(e: AlgebraElement, f: AlgebraElement) -> AlgebraElement:
        return normal_form(variety, substitute(e, [f], maxdeg))

    px1, px2 = comp(p, x1), comp(p, x2)
    residuals = [
        ("additivity", S.nf(comp(p, x1 + x2) - S.plus(px1, px2))),
        ("multiplicativity", S.nf(comp(p, x1 * x2) - S.dot(px1, px2))),
    ]
    if W.phi.is_identity:
        t = Poly.var(T)
        residuals.append(("scalar", S.nf(comp(p, x.scale(t)) - S.scal_a(t, comp(p, x)))))
        universal = {T}
    else:
        universal = set()
        for lam in (W.field.sqrt_d(), FieldElement(1, 1, W.field.d)):
            residuals.append((f"scalar at {lam}", S.nf(comp(p, x.scale(lam)) - S.scal(lam, comp(p, x)))))

    def equations(e: AlgebraElement, degree: int):
        out = []
        for m, c in e.terms.items():
            if m.degree == degree:
                c = Poly.coerce(c)
                out.extend(c.split(universal).values() if universal else [c])
        return out

    solution: dict[str, Poly] = {}
    for d in range(1, ansatz_degree + 1):
        stage = [n for n, (dd, _) in names.items() if dd == d]
        eqs = []
        for label, res in residuals:
            out_deg = d + 1 if label == "multiplicativity" else d
            for e in equations(res, out_deg):
                e = e.subs(solution)
                if e:
                    eqs.append((label, e))
        if d == 1:
            # the linear coefficient is invertible, so common powers of it can be divided out
            (c1,) = stage
            reduced = []
            for label, e in eqs:
                low = min(dict(m).get(c1, 0) for m in e.terms)
                if low:
                    e = Poly({tuple((v, k - low if v == c1 else k) for v, k in m if not (v == c1 and k == low)): c
                              for m, c in e.terms.items()})
                reduced.append((label, e))
            eqs = reduced
        for label, e in eqs:
            if e.is_constant():
                deg = d + 1 if label == "multiplicativity" else d
                return InnerResult(False, None, f"{label} in degree {deg} reduces to the nonzero constant {e}")
        sol, left = eliminate([e for _, e in eqs], stage)
        if left:
            return InnerResult(False, None, f"degree {d} constraints inconsistent: {left[0]} = 0")
        free = {n: Poly() for n in stage if n not in sol}
        sol = {k: v.subs(free) for k, v in sol.items()}
        sol.update(free)
        for k in solution:
            solution[k] = solution[k].subs(sol)
        solution.update(sol)
        if d == 1 and not solution[stage[0]]:
            return InnerResult(False, None, "linear coefficient of the certificate must be invertible")
    for label, res in residuals:
        for m, c in res.terms.items():
            if m.degree > check_degree:
                continue
            c = Poly.coerce(c).subs(solution)
            if c:
                return InnerResult(False, None, f"{label} fails in degree {m.degree}: {c} = 0")
    cert = {}
    for n, (d, m) in names.items():
        v = solution[n]
        if v.variables():
            return InnerResult(False, None, f"certificate coefficient {n} undetermined")
        cert[m] = v.constant()
    return InnerResult(True, AlgebraElement(cert, 1), "")

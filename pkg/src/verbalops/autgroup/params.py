"""Parameterised strongly stable automorphisms and their group law.

Nilpotent varieties of class 3 and 4 carry the parameters
(phi, gamma12[, gamma_1(2,2), gamma_(1,1)2], alpha12, alpha21); the classical
varieties carry (phi, alpha12, alpha21) with variety-specific restrictions.
Composition order follows function composition: compose(p2, p1) applies p1 first.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..errors import ConstraintError
from ..exactfield import FieldAutomorphism, FieldElement, FieldSpec, apply_aut
from ..freemagma import AlgebraElement, leaf, node
from ..polynomial import Poly
from ..relfree import VarietySpec, normal_form
from ..verbal import ScalarWordFamily, WordSystem

GAMMA12 = "gamma12"
GAMMA1_22 = "gamma_1(2,2)"
GAMMA11_2 = "gamma_(1,1)2"
ALPHA12 = "alpha12"
ALPHA21 = "alpha21"

TWO_ALPHA = ("free", "power_associative")
ONE_ALPHA = ("commutative", "jordan", "anticommutative")


def kind_of(variety: VarietySpec) -> str:
    if variety.is_nilpotent:
        if variety.nilpotency not in (3, 4):
            raise ValueError("closed forms exist for nilpotency classes 3 and 4 only")
        return f"nilpotent{variety.nilpotency}"
    return variety.name


def _fe(x, field: FieldSpec) -> FieldElement:
    x = FieldElement.coerce(x)
    return FieldElement(x.a, x.b, field.d) if (x.d is None and field.d is not None) else x


@dataclass(frozen=True)
class StronglyStableParams:
    variety: VarietySpec
    field: FieldSpec
    phi: FieldAutomorphism
    alpha12: FieldElement
    alpha21: FieldElement
    gamma12: FieldElement = FieldElement(0)
    gamma1_22: FieldElement = FieldElement(0)
    gamma11_2: FieldElement = FieldElement(0)

    def __post_init__(self):
        for name in ("alpha12", "alpha21", "gamma12", "gamma1_22", "gamma11_2"):
            object.__setattr__(self, name, _fe(getattr(self, name), self.field))
        kind = kind_of(self.variety)
        a12, a21 = self.alpha12, self.alpha21
        if kind in TWO_ALPHA or kind.startswith("nilpotent"):
            if a12 == a21 or a12 == -a21:
                raise ConstraintError("alpha12 != ±alpha21", f"alpha12 = {a12}, alpha21 = {a21}")
        elif kind in ONE_ALPHA:
            if a21 or not a12:
                raise ConstraintError("alpha21 == 0 and alpha12 != 0", f"{kind} has a single multiplication scalar")
        elif kind == "alternative":
            if bool(a12) == bool(a21):
                raise ConstraintError("exactly one of alpha12, alpha21 nonzero",
                                      "alternative multiplication words are x1*x2 or x2*x1")
        if kind != "nilpotent4" and (self.gamma1_22 or self.gamma11_2):
            raise ConstraintError("degree-three gammas only for nilpotency class 4")
        if not kind.startswith("nilpotent") and self.gamma12:
            raise ConstraintError("gamma12 only for nilpotent varieties")

    @property
    def kind(self) -> str:
        return kind_of(self.variety)

    @property
    def side(self) -> str | None:
        if self.kind != "alternative":
            return None
        return "straight" if self.alpha12 else "reversed"

    def as_dict(self) -> dict:
        out = {"variety": self.variety.cli_name, "phi": self.phi.kind}
        if self.kind.startswith("nilpotent"):
            out["gamma12"] = str(self.gamma12)
        if self.kind == "nilpotent4":
            out["gamma1_22"] = str(self.gamma1_22)
            out["gamma11_2"] = str(self.gamma11_2)
        out["alpha12"] = str(self.alpha12)
        out["alpha21"] = str(self.alpha21)
        return out

    def __str__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.as_dict().items() if k != "variety")
        return f"{self.variety.cli_name}({inner})"


def make_params(variety: VarietySpec, field: FieldSpec | None = None, phi: str | FieldAutomorphism = "identity",
                alpha12=1, alpha21=0, gamma12=0, gamma1_22=0, gamma11_2=0) -> StronglyStableParams:
    field = field or FieldSpec.quadratic(2)
    if isinstance(phi, str):
        phi = FieldAutomorphism(phi, field)
    return StronglyStableParams(variety, field, phi, alpha12, alpha21, gamma12, gamma1_22, gamma11_2)


# --- closed-form words -----------------------------------------------------------

def _m(*path):
    """Build a monomial from nested tuples of generator indices."""
    if isinstance(path[0], int) and len(path) == 1:
        return leaf(path[0])
    l, r = path
    lm = leaf(l) if isinstance(l, int) else _m(*l)
    rm = leaf(r) if isinstance(r, int) else _m(*r)
    return node(lm, rm)


def closed_form_words(kind: str, gamma12=0, gamma1_22=0, gamma11_2=0, alpha12=1, alpha21=0):
    """(w_plus, w_dot, scalar coefficients) for given parameter values (scalars or polynomials)."""
    a = Poly.var("a")
    g, g122, g112 = Poly.coerce(gamma12), Poly.coerce(gamma1_22), Poly.coerce(gamma11_2)
    a12, a21 = Poly.coerce(alpha12), Poly.coerce(alpha21)
    plus = {_m(1): 1, _m(2): 1}
    dot = {_m(1, 2): a12, _m(2, 1): a21}
    scalar = {_m(1): a}
    if kind in ("nilpotent3", "nilpotent4"):
        plus[_m(1, 2)] = g
        plus[_m(2, 1)] = g
        scalar[_m(1, 1)] = g * (a * a - a)
    if kind == "nilpotent4":
        gg = g * g
        plus.update({
            _m((1, 1), 2): g112, _m((2, 2), 1): g112,
            _m((1, 2), 2): gg + g112, _m((1, 2), 1): gg + g112,
            _m((2, 1), 1): gg + g112, _m((2, 1), 2): gg + g112,
            _m(1, (2, 2)): g122, _m(2, (1, 1)): g122,
            _m(1, (1, 2)): gg + g122, _m(1, (2, 1)): gg + g122,
            _m(2, (2, 1)): gg + g122, _m(2, (1, 2)): gg + g122,
        })
        dot.update({
            _m((1, 1), 2): -a12 * g, _m(2, (1, 1)): -a21 * g,
            _m((2, 2), 1): -a21 * g, _m(1, (2, 2)): -a12 * g,
        })
        a3 = a * a * a
        scalar[_m(1, (1, 1))] = gg * (a3 - a * a) + g122 * (a3 - a)
        scalar[_m((1, 1), 1)] = gg * (a3 - a * a) + g112 * (a3 - a)

    def elem(d, n):
        return AlgebraElement({m: _demote(c) for m, c in d.items()}, n)

    return elem(plus, 2), elem(dot, 2), {m: Poly.coerce(c) for m, c in scalar.items()}


def _demote(c):
    if isinstance(c, Poly) and c.is_constant():
        return c.constant()
    return c


def params_to_wordsystem(p: StronglyStableParams) -> WordSystem:
    w_plus, w_dot, scalar = closed_form_words(p.kind, p.gamma12, p.gamma1_22, p.gamma11_2, p.alpha12, p.alpha21)
    w_dot = normal_form(p.variety, w_dot)
    return WordSystem(p.variety, p.field, ScalarWordFamily.build(p.phi, scalar), w_plus, w_dot)


def wordsystem_to_params(W: WordSystem) -> StronglyStableParams:
    """Read parameters back off a word system in closed form (exact inverse of params_to_wordsystem)."""
    kind = kind_of(W.variety)
    get = W.w_plus.coefficient
    kw = dict(alpha12=W.w_dot.coefficient(_m(1, 2)), alpha21=W.w_dot.coefficient(_m(2, 1)))
    if kind.startswith("nilpotent"):
        kw["gamma12"] = get(_m(1, 2))
    if kind == "nilpotent4":
        kw["gamma1_22"] = get(_m(1, (2, 2)))
        kw["gamma11_2"] = get(_m((1, 1), 2))
    p = StronglyStableParams(W.variety, W.field, W.phi, **kw)
    if params_to_wordsystem(p) != W:
        raise ConstraintError("word system is not of closed form", str(W.w_plus))
    return p


# --- group law ----------------------------------------------------------------------

def _alpha_law(p2: StronglyStableParams, p1: StronglyStableParams):
    f = p2.phi
    u12, u21 = apply_aut(f, p1.alpha12), apply_aut(f, p1.alpha21)
    return (u12 * p2.alpha12 + u21 * p2.alpha21,
            u12 * p2.alpha21 + u21 * p2.alpha12)


def _check_pair(p2: StronglyStableParams, p1: StronglyStableParams) -> None:
    if p1.variety != p2.variety:
        raise ValueError("composition across different varieties")
    if p1.field != p2.field:
        raise ValueError("composition across different fields")


def compose(p2: StronglyStableParams, p1: StronglyStableParams) -> StronglyStableParams:
    """Parameters of the composite (p1 applied first, then p2)."""
    _check_pair(p2, p1)
    kind = p1.kind
    if kind == "nilpotent3":
        return compose3(p2, p1)
    if kind == "nilpotent4":
        return compose4(p2, p1)
    a12, a21 = _alpha_law(p2, p1)
    return StronglyStableParams(p1.variety, p1.field, p2.phi.compose(p1.phi), a12, a21)


def compose3(p2: StronglyStableParams, p1: StronglyStableParams) -> StronglyStableParams:
    _check_pair(p2, p1)
    a12, a21 = _alpha_law(p2, p1)
    gamma = p2.gamma12 + apply_aut(p2.phi, p1.gamma12) * (p2.alpha12 + p2.alpha21)
    return StronglyStableParams(p1.variety, p1.field, p2.phi.compose(p1.phi), a12, a21, gamma)


def _conjugated_gammas(p2: StronglyStableParams, p1: StronglyStableParams):
    """Gamma-part of p1 conjugated by the alpha-part of p2."""
    f = p2.phi
    s = p2.alpha12 + p2.alpha21
    g = apply_aut(f, p1.gamma12) * s
    g122 = s * (p2.alpha12 * apply_aut(f, p1.gamma1_22) + p2.alpha21 * apply_aut(f, p1.gamma11_2))
    g112 = s * (p2.alpha12 * apply_aut(f, p1.gamma11_2) + p2.alpha21 * apply_aut(f, p1.gamma1_22))
    return g, g122, g112


def compose4(p2: StronglyStableParams, p1: StronglyStableParams) -> StronglyStableParams:
    """Write each automorphism as (gamma part) after (alpha part), move the alpha part of p2
    past the gamma part of p1, then combine the two gamma parts."""
    _check_pair(p2, p1)
    a12, a21 = _alpha_law(p2, p1)
    g, g122, g112 = _conjugated_gammas(p2, p1)
    cross = p2.gamma12 * g
    return StronglyStableParams(
        p1.variety, p1.field, p2.phi.compose(p1.phi), a12, a21,
        gamma12=p2.gamma12 + g,
        gamma1_22=p2.gamma1_22 + g122 - cross,
        gamma11_2=p2.gamma11_2 + g112 - cross,
    )


def identity_params(variety: VarietySpec, field: FieldSpec) -> StronglyStableParams:
    return make_params(variety, field, "identity", 1, 0)


def alpha_part(p: StronglyStableParams) -> StronglyStableParams:
    return replace(p, gamma12=FieldElement(0), gamma1_22=FieldElement(0), gamma11_2=FieldElement(0))


def gamma_part(p: StronglyStableParams) -> StronglyStableParams:
    return replace(p, phi=FieldAutomorphism.identity(p.field), alpha12=FieldElement(1), alpha21=FieldElement(0))


def invert(p: StronglyStableParams) -> StronglyStableParams:
    finv = p.phi.inverse()
    u, v = apply_aut(finv, p.alpha12), apply_aut(finv, p.alpha21)
    det = u * u - v * v
    a_inv = replace(alpha_part(p), phi=finv, alpha12=u / det, alpha21=-v / det)
    if not p.kind.startswith("nilpotent"):
        return a_inv
    g = p.gamma12
    if p.kind == "nilpotent4":
        g_inv = replace(gamma_part(p), gamma12=-g,
                        gamma1_22=-p.gamma1_22 - g * g, gamma11_2=-p.gamma11_2 - g * g)
    else:
        g_inv = replace(gamma_part(p), gamma12=-g)
    return compose(a_inv, g_inv)


def truncate_params(p: StronglyStableParams) -> StronglyStableParams:
    """Restriction of a class-4 automorphism to class 3."""
    if p.kind != "nilpotent4":
        raise ValueError("truncation maps nilpotency class 4 to class 3")
    return StronglyStableParams(VarietySpec.nilpotent(3), p.field, p.phi, p.alpha12, p.alpha21, p.gamma12)


# --- quotient by inner automorphisms ------------------------------------------------

@dataclass(frozen=True)
class QuotientClass:
    """Image in the quotient by inner automorphisms.

    kind "ratio": value is iota = (alpha12 + alpha21)/(alpha12 - alpha21) in k*;
    kind "side": value is "straight" or "reversed";
    kind "field": only the field automorphism survives.
    """

    kind: str
    phi: FieldAutomorphism
    value: object = None

    @property
    def is_trivial(self) -> bool:
        if not self.phi.is_identity:
            return False
        if self.kind == "ratio":
            return self.value == 1
        if self.kind == "side":
            return self.value == "straight"
        return True

    def __str__(self):
        if self.kind == "field":
            return f"({self.phi})"
        return f"({self.value}, {self.phi})"


def quotient_class(p: StronglyStableParams) -> QuotientClass:
    kind = p.kind
    if kind in TWO_ALPHA or kind.startswith("nilpotent"):
        return QuotientClass("ratio", p.phi, (p.alpha12 + p.alpha21) / (p.alpha12 - p.alpha21))
    if kind == "alternative":
        return QuotientClass("side", p.phi, p.side)
    return QuotientClass("field", p.phi)


def compose_quotient(q2: QuotientClass, q1: QuotientClass) -> QuotientClass:
    """Semidirect law: (iota2, phi2)(iota1, phi1) = (phi2(iota1) iota2, phi2 phi1)."""
    if q1.kind != q2.kind:
        raise ValueError("quotient classes of different shapes")
    phi = q2.phi.compose(q1.phi)
    if q1.kind == "ratio":
        return QuotientClass("ratio", phi, apply_aut(q2.phi, q1.value) * q2.value)
    if q1.kind == "side":
        return QuotientClass("side", phi, "straight" if q1.value == q2.value else "reversed")
    return QuotientClass("field", phi)


def params_from_ratio(variety: VarietySpec, field: FieldSpec, iota: FieldElement,
                      phi: str = "identity") -> StronglyStableParams:
    """A representative with a prescribed quotient ratio (shows the ratio map is onto k*)."""
    half = FieldElement(1, 0, field.d) / 2
    return make_params(variety, field, phi, (iota + 1) * half, (iota - 1) * half)

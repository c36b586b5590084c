"""Derive all admissible word systems of a variety by staged coefficient comparison.

Nilpotent varieties: starting from the forced linear parts (addition x1 + x2,
no linear multiplication term, scalar action a*x), each stage d adds every
degree-d monomial to the words with an unknown coefficient (scalar words get
unknown polynomials in a of degree <= d), evaluates every axiom in the
relatively free algebra of class d + 1, and compares degree-d coefficients.
The resulting equations are linear in the stage unknowns.

Classical varieties: addition and scalar words are the linear ones, the
multiplication word is a general element of degree <= 3.  The structural
axioms kill everything outside multidegree (1, 1); the variety's own identities
then give polynomial relations between the surviving coefficients, which are
factored and split into branches.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InconsistentSystemError
from ..exactfield import FieldAutomorphism, FieldSpec
from ..freemagma import (
    AlgebraElement,
    Monomial,
    enumerate_monomials,
    generators,
    graded_component,
    leaf,
    monomial_key,
    node,
)
from ..linalg import SparseEchelon
from ..polynomial import Poly, eliminate
from ..relfree import VarietySpec, reduced_basis
from ..verbal import ScalarWordFamily, StarAlgebra, WordSystem, axiom_pairs
from .params import ALPHA12, ALPHA21, GAMMA1_22, GAMMA11_2, GAMMA12, closed_form_words, kind_of

UNIVERSAL = ("a", "b")
PREFERRED_FREE = (GAMMA12, ALPHA12, ALPHA21, GAMMA1_22, GAMMA11_2)


def coefficient_name(prefix: str, m: Monomial) -> str:
    """gamma12, gamma_(1,2)2, gamma_1(2,2) style names; bracketed text for longer monomials."""
    if m.degree == 1:
        return f"{prefix}{m.gen}"
    if m.degree == 2:
        return f"{prefix}{m.left.gen}{m.right.gen}"
    if m.degree == 3:
        if m.right.is_leaf:
            return f"{prefix}_({m.left.left.gen},{m.left.right.gen}){m.right.gen}"
        return f"{prefix}_{m.left.gen}({m.right.left.gen},{m.right.right.gen})"
    return f"{prefix}[{m}]"


def scalar_name(m: Monomial) -> str:
    if m.degree == 2:
        return "psi"
    if m.degree == 3:
        return "psi1" if m.right.degree == 2 else "psi2"
    return f"psi[{m}]"


def scalar_unknown(base: str, degree: int) -> Poly:
    """The ansatz polynomial sum_k base_k a^k for a scalar-word coefficient."""
    a = Poly.var("a")
    return sum((Poly.var(f"{base}_{k}") * a ** k for k in range(degree + 1)), Poly())


@dataclass
class Stage:
    degree: int
    unknowns: list[str]
    equations: list[Poly]
    solution: dict[str, Poly]
    free: list[str]


@dataclass
class SolvedFamily:
    variety: VarietySpec
    free_parameters: list[str]
    constraint_relations: list[Poly]
    closed_form: WordSystem | None
    solution: dict[str, Poly] = field(default_factory=dict)
    stages: list[Stage] = field(default_factory=list)
    inequations: list[Poly] = field(default_factory=list)
    branches: list["SolvedFamily"] = field(default_factory=list)
    label: str = ""

    def implies(self, relation: Poly) -> bool:
        """relation vanishes identically once the solved unknowns are substituted."""
        return not relation.subs(self.solution)

    def spans(self, relation: Poly) -> bool:
        """Every coefficient (in the universal scalar symbols) of relation is a linear
        combination of the recorded constraint equations."""
        ech = SparseEchelon(key=lambda m: (len(m), m))
        ech.extend(dict(e.terms) for e in self.constraint_relations)
        return all(ech.contains(dict(p.terms)) for p in relation.split(UNIVERSAL).values())

    def zeroed_by(self, values: dict[str, Poly]) -> bool:
        """All constraint equations vanish under a candidate assignment of every unknown."""
        return all(not e.subs(values) for e in self.constraint_relations)


def _stage_equations(W: WordSystem, degree: int | None, include_identities: bool,
                     generator_cap: int = 3) -> list[Poly]:
    S = StarAlgebra(W)
    out = []
    for _, _, build in axiom_pairs(W, S, generator_cap, include_identities):
        lhs, rhs = build()
        res = S.nf(lhs - rhs)
        if degree is not None:
            res = graded_component(res, degree)
        for _, c in res.items():
            out.extend(p for p in Poly.coerce(c).split(UNIVERSAL).values() if p)
    return out


def _word_system(variety: VarietySpec, plus: dict, dot: dict, scalar: dict) -> WordSystem:
    field = FieldSpec.rationals()
    return WordSystem(variety, field, ScalarWordFamily.build(FieldAutomorphism.identity(field), scalar),
                      AlgebraElement(plus, 2), AlgebraElement(dot, 2))


def _subs_all(d: dict, values: dict) -> dict:
    out = {}
    for k, v in d.items():
        v = Poly.coerce(v).subs(values)
        if v:
            out[k] = v.constant() if v.is_constant() else v
    return out


def _det(matrix: list[list]) -> Poly:
    n = len(matrix)
    if n == 0:
        return Poly.const(1)
    if n == 1:
        return Poly.coerce(matrix[0][0])
    total = Poly()
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = Poly.coerce(matrix[0][j]) * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _degree_two_determinant(W: WordSystem) -> Poly:
    """Determinant of sigma on the multidegree (1, 1) block; sigma is invertible only where it is nonzero."""
    mixed = [m for m in reduced_basis(W.variety, 2, 2) if m.multidegree(2) == (1, 1)]
    S = StarAlgebra(W)
    g2 = generators(2)
    images = [graded_component(S.evaluate(AlgebraElement.from_monomial(m, 2), g2), 2) for m in mixed]
    return _det([[im.coefficient(r) for im in images] for r in mixed])


def solve_general_wordsystem(variety: VarietySpec) -> SolvedFamily:
    if variety.is_nilpotent:
        return _solve_nilpotent(variety)
    return _solve_classical(variety)


def _solve_nilpotent(variety: VarietySpec) -> SolvedFamily:
    n = variety.nilpotency
    a = Poly.var("a")
    x1, x2, x = leaf(1), leaf(2), leaf(1)
    plus: dict = {x1: 1, x2: 1}
    dot: dict = {}
    scalar: dict = {x: a}
    stages: list[Stage] = []
    relations: list[Poly] = []
    solution: dict[str, Poly] = {}
    free: list[str] = []
    for d in range(2, n):
        unknowns = []
        for m in enumerate_monomials(2, d):
            gname, aname = coefficient_name("gamma", m), coefficient_name("alpha", m)
            plus[m] = Poly.var(gname)
            dot[m] = Poly.var(aname)
            unknowns += [gname, aname]
        for m in enumerate_monomials(1, d):
            base = scalar_name(m)
            scalar[m] = scalar_unknown(base, d)
            unknowns += [f"{base}_{k}" for k in range(d + 1)]
        W = _word_system(VarietySpec.nilpotent(d + 1), plus, dot, scalar)
        eqs = _stage_equations(W, d, include_identities=False)
        sol, left = eliminate(eqs, unknowns, keep_last=[u for u in PREFERRED_FREE if u in unknowns])
        stage_unknown_left = [e for e in left if e.variables() & set(unknowns)]
        if left:
            raise InconsistentSystemError(
                f"degree {d}: relations {', '.join(map(str, left))} are not solvable linearly"
                + (" in the stage unknowns" if stage_unknown_left else ""))
        stage_free = [u for u in unknowns if u not in sol]
        free += stage_free
        stages.append(Stage(d, unknowns, eqs, sol, stage_free))
        relations += eqs
        for k in solution:
            solution[k] = solution[k].subs(sol)
        solution.update(sol)
        plus, dot, scalar = _subs_all(plus, sol), _subs_all(dot, sol), _subs_all(scalar, sol)
        scalar = {m: Poly.coerce(v) for m, v in scalar.items()}
    closed = _word_system(variety, plus, dot, scalar)
    det = _degree_two_determinant(closed)
    return SolvedFamily(variety, ["phi"] + free, relations, closed, solution, stages, [det])


def _factor(p: Poly) -> list[Poly]:
    import sympy

    _, factors = sympy.factor_list(p.to_sympy())
    return [Poly.from_sympy(f) for f, _ in factors]


def _solve_classical(variety: VarietySpec, ansatz_degree: int = 3) -> SolvedFamily:
    a = Poly.var("a")
    x1, x2 = leaf(1), leaf(2)
    plus = {x1: 1, x2: 1}
    scalar = {leaf(1): a}
    dot: dict = {}
    unknowns = []
    for d in range(1, ansatz_degree + 1):
        for m in reduced_basis(variety, 2, d):
            name = coefficient_name("alpha", m)
            dot[m] = Poly.var(name)
            unknowns.append(name)
    W = _word_system(variety, plus, dot, scalar)
    eqs = _stage_equations(W, None, include_identities=False)
    sol, left = eliminate(eqs, unknowns, keep_last=[ALPHA12, ALPHA21])
    if left:
        raise InconsistentSystemError(f"structural axioms leave {left[0]} = 0")
    free = [u for u in unknowns if u not in sol]
    dot = _subs_all(dot, sol)
    base = SolvedFamily(variety, ["phi"] + free, list(eqs), None, dict(sol),
                        [Stage(2, unknowns, eqs, sol, free)])
    return _branch(base, plus, dot, scalar, free)


def _branch(family: SolvedFamily, plus, dot, scalar, free: list[str]) -> SolvedFamily:
    variety = family.variety
    W = _word_system(variety, plus, dot, scalar)
    relations = _stage_equations(W, None, include_identities=True)
    relations = [r for r in relations if r]
    if not relations:
        family.closed_form = W
        family.free_parameters = ["phi"] + free
        family.inequations = [_degree_two_determinant(W)]
        return family
    family.constraint_relations = family.constraint_relations + relations
    factors = []
    for f in _factor(relations[0]):
        if f.variables() and f not in factors:
            factors.append(f)
    for f in factors:
        sol, left = eliminate([f], free)
        if left or not sol:
            continue
        (var, value), = sol.items()
        sub_free = [u for u in free if u != var]
        solution = {k: v.subs(sol) for k, v in family.solution.items()}
        solution.update(sol)
        child = SolvedFamily(variety, [], list(family.constraint_relations), None, solution,
                             list(family.stages), label=f"{f} = 0")
        child = _branch(child, plus, _subs_all(dot, sol), scalar, sub_free)
        if child.closed_form is not None and not child.closed_form.w_dot.is_zero():
            family.branches.append(child)
    if not family.branches:
        raise InconsistentSystemError(f"no branch satisfies {relations[0]} = 0")
    if len(family.branches) == 1:
        only = family.branches[0]
        only.constraint_relations = family.constraint_relations
        return only
    family.free_parameters = ["phi"]
    return family


def reference_family(variety: VarietySpec) -> dict:
    """Closed-form words with formal parameters, for comparison with the solver output."""
    kind = kind_of(variety)
    g, g122, g112 = Poly.var(GAMMA12), Poly.var(GAMMA1_22), Poly.var(GAMMA11_2)
    a12, a21 = Poly.var(ALPHA12), Poly.var(ALPHA21)
    if kind in ("commutative", "jordan", "anticommutative"):
        a21 = 0
    w_plus, w_dot, scalar = closed_form_words(kind, g, g122, g112, a12, a21)
    return {"w_plus": w_plus, "w_dot": w_dot, "scalar": scalar}


def nilpotent4_reference_relations() -> dict[str, Poly]:
    """The degree-three constraints of class-4 word systems in their closed solved form."""
    g = Poly.var(GAMMA12)
    gg = g * g
    g122, g112 = Poly.var(GAMMA1_22), Poly.var(GAMMA11_2)
    a12, a21 = Poly.var(ALPHA12), Poly.var(ALPHA21)
    a = Poly.var("a")
    V = Poly.var
    rel = {
        "additive associativity (1,2)2": V("gamma_(1,2)2") - gg - g112,
        "additive associativity (1,2)1": V("gamma_(1,2)1") - gg - g112,
        "additive associativity 1(1,2)": V("gamma_1(1,2)") - gg - g122,
        "additive associativity 1(2,1)": V("gamma_1(2,1)") - gg - g122,
        "left distributivity (1,1)2": V("alpha_(1,1)2") + a12 * g,
        "left distributivity (1,2)1": V("alpha_(1,2)1"),
        "left distributivity (2,1)1": V("alpha_(2,1)1"),
        "left distributivity 1(1,2)": V("alpha_1(1,2)"),
        "left distributivity 1(2,1)": V("alpha_1(2,1)"),
        "left distributivity 2(1,1)": V("alpha_2(1,1)") + a21 * g,
        "right distributivity (1,2)2": V("alpha_(1,2)2"),
        "right distributivity (2,1)2": V("alpha_(2,1)2"),
        "right distributivity (2,2)1": V("alpha_(2,2)1") + a21 * g,
        "right distributivity 1(2,2)": V("alpha_1(2,2)") + a12 * g,
        "right distributivity 2(1,2)": V("alpha_2(1,2)"),
        "right distributivity 2(2,1)": V("alpha_2(2,1)"),
        "scalar distributivity (x*x)*x": scalar_unknown("psi2", 3) - (gg * a * (a * a - a) + g112 * (a ** 3 - a)),
        "scalar distributivity x*(x*x)": scalar_unknown("psi1", 3) - (gg * a * (a * a - a) + g122 * (a ** 3 - a)),
    }
    return rel


def reference_assignment(variety: VarietySpec) -> dict[str, Poly]:
    """Value of every ansatz unknown of a nilpotent variety read off the reference closed form."""
    ref = reference_family(variety)
    w_plus, w_dot, scalar = ref["w_plus"], ref["w_dot"], ref["scalar"]
    out: dict[str, Poly] = {}
    for d in range(2, variety.nilpotency):
        for m in enumerate_monomials(2, d):
            out[coefficient_name("gamma", m)] = Poly.coerce(w_plus.coefficient(m))
            out[coefficient_name("alpha", m)] = Poly.coerce(w_dot.coefficient(m))
        for m in enumerate_monomials(1, d):
            by_power = Poly.coerce(scalar.get(m, Poly())).split(["a"])
            for k in range(d + 1):
                out[f"{scalar_name(m)}_{k}"] = by_power.get((("a", k),) if k else (), Poly())
    return out

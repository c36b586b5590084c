"""Relatively free algebras: T-ideals of identities and normal forms modulo them.

Every computation is done one multidegree at a time.  The T-ideal component of
a multidegree is spanned by substitution instances of the multilinearised
defining identities, closed under left and right multiplication by monomials;
an exact reduced row echelon form of that span gives a rewrite rule for every
pivot monomial.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DegreeCapExceededError
from .exactfield import FieldElement
from .freemagma import (
    AlgebraElement,
    Monomial,
    compositions,
    enumerate_monomials,
    generators,
    leaf,
    monomial_key,
    multihomogeneous_components,
    node,
    substitute,
)
from .linalg import SparseEchelon

DEFAULT_DEGREE_CAP = 5

_CLI_NAMES = {
    "free": "free",
    "commutative": "commutative",
    "anticommutative": "anticommutative",
    "power_associative": "power-associative",
    "alternative": "alternative",
    "jordan": "jordan",
}


@dataclass(frozen=True)
class VarietySpec:
    """A variety of (nonassociative) algebras given by defining identities."""

    name: str
    nilpotency: int | None = None
    extra_identities: tuple[AlgebraElement, ...] = ()
    identity_cap: int = 4
    degree_cap: int = DEFAULT_DEGREE_CAP

    def __post_init__(self):
        known = set(_CLI_NAMES) | {"nilpotent"}
        if self.name not in known:
            raise ValueError(f"unknown variety {self.name!r}")
        if self.name == "nilpotent" and (self.nilpotency is None or self.nilpotency < 2):
            raise ValueError("nilpotent varieties need a degree n >= 2")
        if self.extra_identities and self.name != "anticommutative":
            raise ValueError("extra identities are only supported for anticommutative subvarieties")

    @classmethod
    def free(cls) -> "VarietySpec":
        return cls("free")

    @classmethod
    def commutative(cls) -> "VarietySpec":
        return cls("commutative")

    @classmethod
    def anticommutative(cls, extra: Sequence[AlgebraElement] = ()) -> "VarietySpec":
        return cls("anticommutative", extra_identities=tuple(extra))

    @classmethod
    def power_associative(cls, cap: int = 4) -> "VarietySpec":
        return cls("power_associative", identity_cap=cap)

    @classmethod
    def alternative(cls) -> "VarietySpec":
        return cls("alternative")

    @classmethod
    def jordan(cls) -> "VarietySpec":
        return cls("jordan")

    @classmethod
    def nilpotent(cls, n: int) -> "VarietySpec":
        return cls("nilpotent", nilpotency=n)

    @classmethod
    def parse(cls, text: str) -> "VarietySpec":
        t = text.strip().lower().replace("_", "-")
        if t.startswith("nilpotent"):
            try:
                return cls.nilpotent(int(t[len("nilpotent"):]))
            except ValueError:
                raise ValueError(f"bad nilpotent variety name {text!r}") from None
        for key, cli in _CLI_NAMES.items():
            if t == cli:
                return cls(key)
        raise ValueError(f"unknown variety {text!r}")

    @property
    def is_nilpotent(self) -> bool:
        return self.name == "nilpotent"

    @property
    def cli_name(self) -> str:
        if self.is_nilpotent:
            return f"nilpotent{self.nilpotency}"
        return _CLI_NAMES[self.name]

    def __str__(self):
        return self.cli_name

    def identities(self) -> list[AlgebraElement]:
        """Defining identities as elements of a free algebra (each one is set to zero)."""
        name = self.name
        if name == "free":
            return []
        if name == "nilpotent":
            n = self.nilpotency
            return [AlgebraElement.from_monomial(m, n) for m in enumerate_monomials(n, (1,) * n)]
        x1, x2 = generators(2)
        if name == "commutative":
            return [x1 * x2 - x2 * x1]
        if name == "anticommutative":
            return [(x1 * x2 + x2 * x1)] + list(self.extra_identities)
        if name == "alternative":
            return [(x1 * x1) * x2 - x1 * (x1 * x2), x2 * (x1 * x1) - (x2 * x1) * x1]
        if name == "jordan":
            return [x1 * x2 - x2 * x1, ((x1 * x1) * x2) * x1 - (x1 * x1) * (x2 * x1)]
        if name == "power_associative":
            out = []
            for n in range(3, self.identity_cap + 1):
                mons = enumerate_monomials(1, n)
                # every power of one element coincides with the balanced one
                base = _balanced_power(n)
                out.extend(AlgebraElement.from_monomial(m, 1) - AlgebraElement.from_monomial(base, 1)
                           for m in mons if m is not base)
            return out
        raise AssertionError(name)


def _balanced_power(n: int) -> Monomial:
    if n == 1:
        return leaf(1)
    if n == 3:
        return node(leaf(1), node(leaf(1), leaf(1)))
    half = n // 2
    return node(_balanced_power(half), _balanced_power(n - half))


# --- linearisation -------------------------------------------------------------

def full_linearization(f: AlgebraElement) -> AlgebraElement:
    """Multilinear polarisation of a multihomogeneous element.

    Generator x_i of degree k is replaced by a sum of k fresh generators and the
    component linear in every fresh generator is kept.
    """
    comps = multihomogeneous_components(f)
    if len(comps) != 1:
        raise ValueError("full linearisation needs a multihomogeneous element")
    (mu, _), = comps.items()
    r = sum(mu)
    images = []
    nxt = 1
    for k in mu:
        s = AlgebraElement.zero(r)
        for _ in range(k):
            s = s + AlgebraElement.generator(nxt, r)
            nxt += 1
        images.append(s)
    expanded = substitute(f, images)
    return AlgebraElement(
        {m: c for m, c in expanded.terms.items() if m.multidegree(r) == (1,) * r}, r)


def linearize_identity(e: AlgebraElement) -> list[AlgebraElement]:
    """Multihomogeneous components of e followed by the full linearisation of each non-multilinear one."""
    comps = list(multihomogeneous_components(e).values())
    out = list(comps)
    for c in comps:
        mu = next(iter(c.terms)).multidegree(c.ngens)
        if any(k > 1 for k in mu):
            out.append(full_linearization(c))
    return out


def _multilinear_identities(variety: VarietySpec) -> list[tuple[int, list[tuple[Monomial, Fraction]]]]:
    out = []
    seen = set()
    for ident in variety.identities():
        for comp in linearize_identity(ident):
            mu = next(iter(comp.terms)).multidegree(comp.ngens)
            if any(k > 1 for k in mu):
                continue
            # drop generators that do not occur, keeping indices contiguous
            used = [i + 1 for i, k in enumerate(mu) if k]
            relabel = {g: j + 1 for j, g in enumerate(used)}
            terms = [(_relabel(m, relabel), _rational(c)) for m, c in comp.items()]
            key = frozenset(terms)
            if key not in seen:
                seen.add(key)
                out.append((len(used), terms))
    return out


def _rational(c) -> Fraction:
    c = FieldElement.coerce(c) if not isinstance(c, FieldElement) else c
    if c.b:
        raise ValueError("identities must have rational coefficients")
    return c.a


def _relabel(m: Monomial, mapping: dict[int, int]) -> Monomial:
    if m.gen is not None:
        return leaf(mapping[m.gen])
    return node(_relabel(m.left, mapping), _relabel(m.right, mapping))


def _plug(m: Monomial, args: Sequence[Monomial]) -> Monomial:
    if m.gen is not None:
        return args[m.gen - 1]
    return node(_plug(m.left, args), _plug(m.right, args))


# --- T-ideal components -------------------------------------------------------

@dataclass
class NormalFormBasis:
    """Reduced monomials and rewrite rules for one multidegree."""

    key: tuple
    reduced_monomials: list[Monomial]
    rewrite_table: dict[Monomial, dict[Monomial, Fraction]] = field(default_factory=dict)


_lock = threading.RLock()
_components: dict[tuple, SparseEchelon] = {}
_bases: dict[tuple, NormalFormBasis] = {}
_identity_cache: dict[VarietySpec, list] = {}


def _sub_multidegrees(mu: tuple[int, ...]):
    """All nonzero nu <= mu with nu != mu."""
    for nu in itertools.product(*(range(k + 1) for k in mu)):
        if any(nu) and nu != mu:
            yield nu


def _ordered_splits(mu: tuple[int, ...], r: int):
    """All r-tuples of nonzero multidegrees summing to mu."""
    if r == 1:
        if any(mu):
            yield (mu,)
        return
    for nu in _sub_multidegrees(mu):
        rest = tuple(a - b for a, b in zip(mu, nu))
        for tail in _ordered_splits(rest, r - 1):
            yield (nu,) + tail


def _check_cap(variety: VarietySpec, degree: int) -> None:
    if not variety.is_nilpotent and degree > variety.degree_cap:
        raise DegreeCapExceededError(
            f"degree {degree} exceeds the working cap {variety.degree_cap} for {variety}")


def _component(variety: VarietySpec, mu: tuple[int, ...]) -> SparseEchelon:
    """Echelon basis of the T-ideal in multidegree mu (mu has no zero entries)."""
    key = (variety, mu)
    with _lock:
        hit = _components.get(key)
        if hit is not None:
            return hit
        g = len(mu)
        deg = sum(mu)
        ech = SparseEchelon(monomial_key)
        if variety.is_nilpotent:
            if deg >= variety.nilpotency:
                ech.extend({m: Fraction(1)} for m in enumerate_monomials(g, mu))
        elif variety.name != "free":
            _check_cap(variety, deg)
            if variety not in _identity_cache:
                _identity_cache[variety] = _multilinear_identities(variety)
            idents = _identity_cache[variety]
            mons: dict[tuple, list[Monomial]] = {}

            def mons_of(nu):
                if nu not in mons:
                    mons[nu] = enumerate_monomials(g, nu)
                return mons[nu]

            for r, terms in idents:
                if r > deg:
                    continue
                for split in _ordered_splits(mu, r):
                    for args in itertools.product(*(mons_of(nu) for nu in split)):
                        vec: dict = {}
                        for m, c in terms:
                            pm = _plug(m, args)
                            vec[pm] = vec.get(pm, 0) + c
                        ech.add(vec)
            for nu in _sub_multidegrees(mu):
                rho = tuple(a - b for a, b in zip(mu, nu))
                rows = _component_any(variety, nu)
                if not rows:
                    continue
                for row in rows:
                    for m in mons_of(rho):
                        ech.add({node(p, m): c for p, c in row.items()})
                        ech.add({node(m, p): c for p, c in row.items()})
        _components[key] = ech
        return ech


def _support(mu: tuple[int, ...]) -> tuple[tuple[int, ...], dict[int, int], dict[int, int]]:
    used = [i + 1 for i, k in enumerate(mu) if k]
    down = {g: j + 1 for j, g in enumerate(used)}
    up = {j + 1: g for j, g in enumerate(used)}
    return tuple(mu[g - 1] for g in used), down, up


def _component_any(variety: VarietySpec, mu: tuple[int, ...]) -> list[dict]:
    """Echelon rows for a multidegree that may contain zero entries, in the original labels."""
    core, down, up = _support(mu)
    ech = _component(variety, core)
    if all(up[j] == j for j in up):
        return list(ech.rows.values())
    return [{_relabel(m, up): c for m, c in row.items()} for row in ech.rows.values()]


def normal_form_basis(variety: VarietySpec, g: int, mu: Sequence[int]) -> NormalFormBasis:
    mu = tuple(mu)
    if len(mu) != g:
        raise ValueError(f"multidegree {mu} does not match {g} generators")
    key = (variety, mu)
    with _lock:
        hit = _bases.get(key)
        if hit is not None:
            return hit
        core, down, up = _support(mu)
        ech = _component(variety, core)
        identity = all(up[j] == j for j in up)

        def lift(m):
            return m if identity else _relabel(m, up)

        table = {}
        for pivot, row in ech.rows.items():
            table[lift(pivot)] = {lift(m): -c for m, c in row.items() if m is not pivot}
        reduced = [m for m in enumerate_monomials(g, mu) if m not in table]
        basis = NormalFormBasis(key, reduced, table)
        _bases[key] = basis
        return basis


def tideal_component(variety: VarietySpec, g: int, mu: Sequence[int]) -> list[AlgebraElement]:
    """Basis (in reduced echelon form) of the T-ideal component of multidegree mu on g generators."""
    mu = tuple(mu)
    if len(mu) != g:
        raise ValueError(f"multidegree {mu} does not match {g} generators")
    if not any(mu):
        return []
    _check_cap(variety, sum(mu))
    return [AlgebraElement(row, g) for row in _component_any(variety, mu)]


def dim_component(variety: VarietySpec, g: int, grading) -> int:
    """Dimension of a homogeneous (int) or multihomogeneous (tuple) component of the relatively free algebra."""
    if isinstance(grading, int):
        if variety.is_nilpotent and grading >= variety.nilpotency:
            return 0
        return sum(dim_component(variety, g, mu) for mu in compositions(grading, g))
    mu = tuple(grading)
    if variety.is_nilpotent and sum(mu) >= variety.nilpotency:
        return 0
    _check_cap(variety, sum(mu))
    return len(normal_form_basis(variety, g, mu).reduced_monomials)


def reduced_basis(variety: VarietySpec, g: int, degree: int) -> list[Monomial]:
    """Reduced monomials of total degree `degree`, in canonical order."""
    if variety.is_nilpotent and degree >= variety.nilpotency:
        return []
    out = []
    for mu in compositions(degree, g):
        out.extend(normal_form_basis(variety, g, mu).reduced_monomials)
    return sorted(out, key=monomial_key)


def normal_form(variety: VarietySpec, e: AlgebraElement) -> AlgebraElement:
    """Unique representative of e modulo the T-ideal, written in reduced monomials."""
    if variety.name == "free" and not e.terms:
        return e
    g = e.ngens
    n = variety.nilpotency if variety.is_nilpotent else None
    out: dict = {}
    for m, c in e.terms.items():
        if n is not None:
            if m.degree >= n:
                continue
            rule = None
        elif variety.name == "free":
            _check_cap(variety, m.degree)
            rule = None
        else:
            _check_cap(variety, m.degree)
            rule = normal_form_basis(variety, g, m.multidegree(g)).rewrite_table.get(m)
        if rule is None:
            s = out.get(m)
            out[m] = c if s is None else s + c
        else:
            for r, v in rule.items():
                t = c * v
                s = out.get(r)
                out[r] = t if s is None else s + t
    return AlgebraElement(out, g)


def is_identity(variety: VarietySpec, e: AlgebraElement) -> bool:
    """True when e lies in the T-ideal, i.e. e vanishes identically on the variety."""
    return normal_form(variety, e).is_zero()


def clear_caches() -> None:
    with _lock:
        _components.clear()
        _bases.clear()
        _identity_cache.clear()

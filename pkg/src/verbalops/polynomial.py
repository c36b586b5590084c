"""Sparse multivariate polynomials over an exact field.

These serve as coefficients whenever a computation is carried out with formal
parameters (unknown word coefficients, or the image a = phi(lambda) of a scalar).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .exactfield import FieldElement, format_scalar

Monomial = tuple  # tuple of (name, exponent) pairs sorted by name

_ONE_KEY: Monomial = ()


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


class Poly:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, FieldElement] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = FieldElement.coerce(c)
                if c:
                    clean[m] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): FieldElement(1)})

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({_ONE_KEY: c})

    @classmethod
    def coerce(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        return cls.const(x)

    @staticmethod
    def _ok(x) -> bool:
        return isinstance(x, (Poly, FieldElement, int, Fraction))

    def __add__(self, y):
        if not self._ok(y):
            return NotImplemented
        y = Poly.coerce(y)
        out = dict(self.terms)
        for m, c in y.terms.items():
            s = out.get(m)
            out[m] = c if s is None else s + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, y):
        if not self._ok(y):
            return NotImplemented
        return self + (-Poly.coerce(y))

    def __rsub__(self, y):
        if not self._ok(y):
            return NotImplemented
        return Poly.coerce(y) - self

    def __mul__(self, y):
        if not self._ok(y):
            return NotImplemented
        if not isinstance(y, Poly):
            y = FieldElement.coerce(y)
            if not y:
                return Poly()
            return Poly({m: c * y for m, c in self.terms.items()})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in y.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, y):
        if isinstance(y, Poly):
            if not y.is_constant():
                raise ZeroDivisionError("division by a non-constant polynomial")
            y = y.constant()
        inv = FieldElement.coerce(y).inverse()
        return self * inv

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant(self) -> FieldElement:
        """Constant term (the whole value when is_constant())."""
        return self.terms.get(_ONE_KEY, FieldElement(0))

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e for _, e in m) for m in self.terms)
        return max(dict(m).get(var, 0) for m in self.terms)

    def map_coefficients(self, f: Callable) -> "Poly":
        return Poly({m: f(c) for m, c in self.terms.items()})

    def subs(self, values: Mapping[str, object]) -> "Poly":
        """Substitute polynomials or scalars for variables."""
        if not values or not (self.variables() & values.keys()):
            return self
        result = Poly()
        powers: dict = {}
        for m, c in self.terms.items():
            term = Poly.const(c)
            rest = []
            for v, e in m:
                if v in values:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = Poly.coerce(values[v]) ** e
                    term = term * powers[key]
                else:
                    rest.append((v, e))
            if rest:
                term = term * Poly({tuple(rest): 1})
            result = result + term
        return result

    def split(self, names: Iterable[str]) -> dict[Monomial, "Poly"]:
        """Group terms by the monomial in the given variables; values are polynomials in the rest."""
        names = set(names)
        groups: dict[Monomial, dict] = {}
        for m, c in self.terms.items():
            inner = tuple((v, e) for v, e in m if v in names)
            outer = tuple((v, e) for v, e in m if v not in names)
            groups.setdefault(inner, {})[outer] = c
        return {k: Poly(v) for k, v in groups.items()}

    def linear_part(self, var: str) -> tuple["Poly", "Poly"]:
        """Write self = coeff * var + rest with var absent from coeff; raise if var occurs nonlinearly."""
        coeff: dict = {}
        rest: dict = {}
        for m, c in self.terms.items():
            e = dict(m).get(var, 0)
            if e == 0:
                rest[m] = c
            elif e == 1:
                coeff[tuple((v, k) for v, k in m if v != var)] = c
            else:
                raise ValueError(f"{var} occurs with exponent {e}")
        return Poly(coeff), Poly(rest)

    def univariate_coefficients(self, var: str) -> dict[int, FieldElement]:
        out = {}
        for m, c in self.terms.items():
            md = dict(m)
            if set(md) - {var}:
                raise ValueError(f"not univariate in {var}")
            out[md.get(var, 0)] = c
        return out

    def __eq__(self, y):
        if isinstance(y, Poly):
            return self.terms == y.terms
        if isinstance(y, (FieldElement, int, Fraction)):
            return self.terms == Poly.const(y).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant())
            else:
                self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sort_key(self):
        return sorted(self.terms)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)

    def to_sympy(self):
        import sympy

        expr = sympy.Integer(0)
        symbols: dict[str, object] = {}
        for m, c in self.terms.items():
            coeff = sympy.Rational(c.a.numerator, c.a.denominator)
            if c.b:
                coeff += sympy.Rational(c.b.numerator, c.b.denominator) * sympy.sqrt(c.d)
            term = coeff
            for v, e in m:
                if v not in symbols:
                    symbols[v] = sympy.Symbol(v)
                term *= symbols[v] ** e
            expr += term
        return expr

    @classmethod
    def from_sympy(cls, expr, d: int | None = None) -> "Poly":
        import sympy

        expr = sympy.expand(expr)
        gens = sorted(expr.free_symbols, key=lambda s: s.name)
        if not gens:
            return cls.const(_sympy_scalar(expr, d))
        out = {}
        for exps, c in sympy.Poly(expr, *gens).terms():
            m = tuple(sorted((g.name, e) for g, e in zip(gens, exps) if e))
            out[m] = _sympy_scalar(c, d)
        return cls(out)


def _sympy_scalar(c, d: int | None) -> FieldElement:
    import sympy

    c = sympy.nsimplify(c)
    if c.is_Rational:
        return FieldElement(Fraction(int(c.p), int(c.q)), 0, d)
    if d is None:
        raise ValueError(f"irrational coefficient {c} without a radicand")
    root = sympy.sqrt(d)
    b = sympy.nsimplify(sympy.expand(c).coeff(root))
    a = sympy.nsimplify(sympy.expand(c - b * root))
    return FieldElement(Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q)), d)


def _format_mono(m: Monomial) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    items = sorted(p.terms.items(), key=lambda kv: (-sum(e for _, e in kv[0]), kv[0]))
    out = []
    for i, (m, c) in enumerate(items):
        negative = not c.b and c.a < 0
        mag = -c if negative else c
        body = _format_mono(m)
        if not body:
            text = format_scalar(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{format_scalar(mag)}*{body}"
        if i == 0:
            out.append(f"-{text}" if negative else text)
        else:
            out.append(f" - {text}" if negative else f" + {text}")
    return "".join(out)


def _normalised(p: Poly) -> Poly:
    lead = min(p.terms)
    return p / p.terms[lead]


def eliminate(equations: Iterable[Poly], unknowns: Iterable[str],
              keep_last: Iterable[str] = ()) -> tuple[dict[str, Poly], list[Poly]]:
    """Solve for unknowns that occur linearly with a constant coefficient.

    Unknowns are eliminated one at a time by substitution; those listed in
    ``keep_last`` are only eliminated when nothing else can be.  Returns the
    solved values (in terms of the remaining symbols) and the leftover
    nonzero equations.
    """
    keep_last = list(keep_last)
    order = [u for u in unknowns if u not in keep_last] + [u for u in keep_last if u in set(unknowns)]
    remaining = list(order)
    seen = set()
    eqs = []
    for e in equations:
        if e:
            n = _normalised(e)
            if n not in seen:
                seen.add(n)
                eqs.append(n)
    solution: dict[str, Poly] = {}
    while True:
        choice = None
        for var in remaining:
            best = None
            for idx, e in enumerate(eqs):
                if var not in e.variables():
                    continue
                try:
                    coeff, rest = e.linear_part(var)
                except ValueError:
                    continue
                if not coeff.is_constant():
                    continue
                size = len(e.terms)
                if best is None or size < best[0]:
                    best = (size, idx, coeff, rest)
            if best is not None:
                choice = (var,) + best[1:]
                break
        if choice is None:
            break
        var, idx, coeff, rest = choice
        value = -rest / coeff
        remaining.remove(var)
        for k in solution:
            solution[k] = solution[k].subs({var: value})
        solution[var] = value
        new_eqs = []
        seen = set()
        for i, e in enumerate(eqs):
            if i == idx:
                continue
            e = e.subs({var: value})
            if e:
                n = _normalised(e)
                if n not in seen:
                    seen.add(n)
                    new_eqs.append(n)
        eqs = new_eqs
    return solution, eqs

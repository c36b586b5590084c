"""Free nonassociative (magma) algebras: binary-tree monomials and their linear combinations."""

from __future__ import annotations

import itertools
import threading
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import ArityError, GeneratorCountMismatchError
from .exactfield import FieldElement, format_scalar
from .polynomial import Poly


class Monomial:
    """An interned binary tree whose leaves are generator indices (1-based).

    Interning makes structural equality coincide with identity, so monomials
    hash and compare cheaply.
    """

    __slots__ = ("left", "right", "gen", "degree", "counts", "key", "__weakref__")

    _table: dict = {}
    _lock = threading.Lock()

    def __new__(cls, *args, **kwargs):
        raise TypeError("use leaf() or node() to build monomials")

    @classmethod
    def _make(cls, left, right, gen):
        ident = ("g", gen) if gen is not None else (id(left), id(right))
        with cls._lock:
            m = cls._table.get(ident)
            if m is not None:
                return m
            m = object.__new__(cls)
            object.__setattr__(m, "left", left)
            object.__setattr__(m, "right", right)
            object.__setattr__(m, "gen", gen)
            if gen is not None:
                counts = (0,) * (gen - 1) + (1,)
                object.__setattr__(m, "degree", 1)
                object.__setattr__(m, "key", (1, (gen,)))
            else:
                n = max(len(left.counts), len(right.counts))
                lc = left.counts + (0,) * (n - len(left.counts))
                rc = right.counts + (0,) * (n - len(right.counts))
                counts = tuple(a + b for a, b in zip(lc, rc))
                deg = left.degree + right.degree
                object.__setattr__(m, "degree", deg)
                object.__setattr__(m, "key", (deg, (0,) + left.key[1] + right.key[1]))
            object.__setattr__(m, "counts", counts)
            cls._table[ident] = m
            return m

    def __setattr__(self, name, value):
        raise AttributeError("monomials are immutable")

    @property
    def is_leaf(self) -> bool:
        return self.gen is not None

    def multidegree(self, g: int) -> tuple[int, ...]:
        if len(self.counts) > g:
            raise GeneratorCountMismatchError(f"monomial {self} uses more than {g} generators")
        return self.counts + (0,) * (g - len(self.counts))

    @property
    def max_generator(self) -> int:
        return len(self.counts)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        return node(self, other)

    def __lt__(self, other: "Monomial") -> bool:
        return self.key < other.key

    def __reduce__(self):
        if self.gen is not None:
            return (leaf, (self.gen,))
        return (node, (self.left, self.right))

    def __repr__(self):
        return f"Monomial({render_monomial(self)})"

    def __str__(self):
        return render_monomial(self)


def leaf(i: int) -> Monomial:
    if not isinstance(i, int) or i < 1:
        raise ValueError(f"generator index must be a positive integer, got {i!r}")
    return Monomial._make(None, None, i)


def node(u: Monomial, v: Monomial) -> Monomial:
    return Monomial._make(u, v, None)


def render_monomial(m: Monomial, top: bool = True) -> str:
    """Leaves render as x<i>; inner products are parenthesised, the outermost one is not."""
    if m.gen is not None:
        return f"x{m.gen}"
    body = f"{render_monomial(m.left, False)}*{render_monomial(m.right, False)}"
    return body if top else f"({body})"


def monomial_key(m: Monomial):
    """Canonical order: degree first, then the preorder traversal (0 marks an inner node)."""
    return m.key


# --- coefficients -----------------------------------------------------------

def _coerce_coeff(c):
    if isinstance(c, (FieldElement, Poly)):
        return c
    if isinstance(c, (int, Fraction)):
        return FieldElement(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _is_scalar(x) -> bool:
    return isinstance(x, (FieldElement, Poly, int, Fraction))


class AlgebraElement:
    """A finite linear combination of monomials in the free magma algebra on x1..x_g."""

    __slots__ = ("_terms", "ngens", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, ngens: int = 1):
        clean = {}
        if terms:
            for m, c in terms.items():
                if m.max_generator > ngens:
                    raise GeneratorCountMismatchError(f"{m} does not live on {ngens} generators")
                c = _coerce_coeff(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self.ngens = ngens
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, ngens: int) -> "AlgebraElement":
        e = object.__new__(cls)
        e._terms = terms
        e.ngens = ngens
        e._hash = None
        return e

    @classmethod
    def zero(cls, ngens: int) -> "AlgebraElement":
        return cls._raw({}, ngens)

    @classmethod
    def generator(cls, i: int, ngens: int) -> "AlgebraElement":
        if not 1 <= i <= ngens:
            raise GeneratorCountMismatchError(f"x{i} is not among {ngens} generators")
        return cls._raw({leaf(i): FieldElement(1)}, ngens)

    @classmethod
    def from_monomial(cls, m: Monomial, ngens: int, coeff=1) -> "AlgebraElement":
        return cls({m: coeff}, ngens)

    @property
    def terms(self) -> Mapping[Monomial, object]:
        return self._terms

    def items(self) -> list[tuple[Monomial, object]]:
        """Terms in canonical monomial order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].key)

    def __iter__(self) -> Iterator[tuple[Monomial, object]]:
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def coefficient(self, m: Monomial):
        return self._terms.get(m, FieldElement(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other: "AlgebraElement") -> None:
        if self.ngens != other.ngens:
            raise GeneratorCountMismatchError(
                f"elements on {self.ngens} and {other.ngens} generators mixed")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return AlgebraElement._raw(out, self.ngens)

    def __neg__(self):
        return AlgebraElement._raw({m: -c for m, c in self._terms.items()}, self.ngens)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        c = _coerce_coeff(c)
        if not c:
            return AlgebraElement.zero(self.ngens)
        out = {}
        for m, v in self._terms.items():
            p = v * c
            if p:
                out[m] = p
        return AlgebraElement._raw(out, self.ngens)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return product(self, other)
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.ngens == other.ngens and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ngens, frozenset(self._terms.items())))
        return self._hash

    def degrees(self) -> set[int]:
        return {m.degree for m in self._terms}

    def degree(self) -> int:
        return max((m.degree for m in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((m.degree for m in self._terms), default=-1)

    def map_coefficients(self, f: Callable) -> "AlgebraElement":
        return AlgebraElement({m: f(c) for m, c in self._terms.items()}, self.ngens)

    def with_ngens(self, ngens: int) -> "AlgebraElement":
        """The same element viewed in an algebra with a different number of generators."""
        return AlgebraElement(self._terms, ngens)

    def __repr__(self):
        return f"AlgebraElement({render_element(self)!r}, ngens={self.ngens})"

    def __str__(self):
        return render_element(self)


def _scalar_text(c) -> tuple[bool, str]:
    """(negative, magnitude text) for a coefficient."""
    if isinstance(c, Poly):
        if c.is_constant():
            return _scalar_text(c.constant())
        return False, f"({c})"
    if not c.b and c.a < 0:
        return True, format_scalar(-c)
    return False, format_scalar(c)


def render_element(e: AlgebraElement) -> str:
    """Canonical text: terms in monomial order, coefficient 1 elided, "0" for zero."""
    if not e._terms:
        return "0"
    parts = []
    for i, (m, c) in enumerate(e.items()):
        negative, mag = _scalar_text(c)
        body = render_monomial(m)
        text = body if mag == "1" else f"{mag}*{body}"
        if i == 0:
            parts.append(f"-{text}" if negative else text)
        else:
            parts.append(f" - {text}" if negative else f" + {text}")
    return "".join(parts)


# --- products, substitution, grading -----------------------------------------

def product(x: AlgebraElement, y: AlgebraElement, max_degree: int | None = None) -> AlgebraElement:
    """Bilinear extension of the tree product; terms of degree > max_degree are dropped."""
    x._check(y)
    out: dict = {}
    for m1, c1 in x._terms.items():
        for m2, c2 in y._terms.items():
            if max_degree is not None and m1.degree + m2.degree > max_degree:
                continue
            m = node(m1, m2)
            v = c1 * c2
            s = out.get(m)
            out[m] = v if s is None else s + v
    return AlgebraElement._raw({m: c for m, c in out.items() if c}, x.ngens)


def linear_combine(pairs: Iterable[tuple[object, AlgebraElement]], ngens: int) -> AlgebraElement:
    out: dict = {}
    for c, e in pairs:
        if e.ngens != ngens:
            raise GeneratorCountMismatchError("linear combination across generator counts")
        c = _coerce_coeff(c)
        if not c:
            continue
        for m, v in e._terms.items():
            s = out.get(m)
            out[m] = c * v if s is None else s + c * v
    return AlgebraElement._raw({m: c for m, c in out.items() if c}, ngens)


def substitute(e: AlgebraElement, images: Sequence[AlgebraElement],
               max_degree: int | None = None) -> AlgebraElement:
    """Image of e under the endomorphism x_i -> images[i-1] (extended multiplicatively and linearly)."""
    if len(images) != e.ngens:
        raise ArityError(f"{len(images)} images for an element on {e.ngens} generators")
    target = images[0].ngens
    for im in images:
        if im.ngens != target:
            raise GeneratorCountMismatchError("substitution images live on different generator counts")
    cache: dict = {}

    def img(m: Monomial) -> AlgebraElement:
        r = cache.get(m)
        if r is None:
            if m.gen is not None:
                r = images[m.gen - 1]
                if max_degree is not None:
                    r = truncate(r, max_degree + 1)
            else:
                r = product(img(m.left), img(m.right), max_degree)
            cache[m] = r
        return r

    return linear_combine(((c, img(m)) for m, c in e._terms.items()), target)


def graded_component(e: AlgebraElement, grading) -> AlgebraElement:
    """Component of a given degree (int) or multidegree (tuple)."""
    if isinstance(grading, int):
        return AlgebraElement._raw({m: c for m, c in e._terms.items() if m.degree == grading}, e.ngens)
    grading = tuple(grading)
    return AlgebraElement._raw(
        {m: c for m, c in e._terms.items() if m.multidegree(len(grading)) == grading}, e.ngens)


def homogeneous_components(e: AlgebraElement) -> dict[int, AlgebraElement]:
    out: dict = {}
    for m, c in e._terms.items():
        out.setdefault(m.degree, {})[m] = c
    return {d: AlgebraElement._raw(t, e.ngens) for d, t in sorted(out.items())}


def multihomogeneous_components(e: AlgebraElement) -> dict[tuple, AlgebraElement]:
    out: dict = {}
    for m, c in e._terms.items():
        out.setdefault(m.multidegree(e.ngens), {})[m] = c
    return {k: AlgebraElement._raw(t, e.ngens) for k, t in sorted(out.items())}


def truncate(e: AlgebraElement, n: int) -> AlgebraElement:
    """Drop every term of degree >= n."""
    return AlgebraElement._raw({m: c for m, c in e._terms.items() if m.degree < n}, e.ngens)


# --- enumeration --------------------------------------------------------------

@lru_cache(maxsize=None)
def _shapes(n: int) -> tuple:
    """All binary tree shapes with n leaves, as nested tuples (None is a leaf)."""
    if n == 1:
        return (None,)
    out = []
    for k in range(1, n):
        for l in _shapes(k):
            for r in _shapes(n - k):
                out.append((l, r))
    return tuple(out)


def _fill(shape, labels: Iterator[int]) -> Monomial:
    if shape is None:
        return leaf(next(labels))
    left = _fill(shape[0], labels)
    return node(left, _fill(shape[1], labels))


def _arrangements(mult: Sequence[int]) -> list[tuple[int, ...]]:
    items = [i + 1 for i, k in enumerate(mult) for _ in range(k)]
    return sorted(set(itertools.permutations(items)))


@lru_cache(maxsize=None)
def _monomials_of(mult: tuple) -> tuple:
    n = sum(mult)
    if n == 0:
        return ()
    arr = _arrangements(mult)
    out = [_fill(shape, iter(a)) for shape in _shapes(n) for a in arr]
    return tuple(sorted(out, key=monomial_key))


def enumerate_monomials(g: int, grading) -> list[Monomial]:
    """All monomials on x1..x_g of a total degree (int) or multidegree (tuple), in canonical order."""
    if isinstance(grading, int):
        out = []
        for mult in compositions(grading, g):
            out.extend(_monomials_of(mult))
        return sorted(out, key=monomial_key)
    grading = tuple(grading)
    if len(grading) != g:
        raise GeneratorCountMismatchError(f"multidegree {grading} for {g} generators")
    return list(_monomials_of(grading))


@lru_cache(maxsize=None)
def compositions(n: int, g: int) -> tuple:
    """All g-tuples of nonnegative integers summing to n."""
    if g == 1:
        return ((n,),)
    return tuple((k,) + rest for k in range(n, -1, -1) for rest in compositions(n - k, g - 1))


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def monomial_count(grading) -> int:
    """Closed form Catalan(n - 1) * multinomial(n; grading)."""
    n = sum(grading)
    count = catalan(n - 1)
    rest = n
    for k in grading:
        count *= comb(rest, k)
        rest -= k
    return count


def generators(g: int) -> list[AlgebraElement]:
    return [AlgebraElement.generator(i, g) for i in range(1, g + 1)]

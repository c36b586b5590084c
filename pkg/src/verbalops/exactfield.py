"""Exact arithmetic in the rationals and in real/imaginary quadratic fields Q(sqrt d)."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import FieldMismatchError, InvalidAutomorphismError, ParseError

Number = Union[int, Fraction, "FieldElement"]


def _is_square_free(d: int) -> bool:
    n = abs(d)
    for p in range(2, math.isqrt(n) + 1):
        if n % (p * p) == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (d is None) or Q(sqrt d) with d square-free, d not 0 or 1."""

    kind: str = "rationals"
    d: int | None = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.d is not None:
                raise ValueError("the rationals carry no radicand")
        elif self.kind == "quadratic":
            if self.d is None or self.d in (0, 1) or not _is_square_free(self.d):
                raise ValueError(f"radicand must be square-free and not 0 or 1, got {self.d}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals")

    @classmethod
    def quadratic(cls, d: int = 2) -> "FieldSpec":
        return cls("quadratic", d)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip()
        if text in ("rationals", "Q", "QQ"):
            return cls.rationals()
        if text.startswith("quadratic"):
            _, _, rest = text.partition(":")
            try:
                return cls.quadratic(int(rest) if rest else 2)
            except ValueError as exc:
                raise ParseError(f"bad field {text!r}: {exc}") from None
        raise ParseError(f"unknown field {text!r}")

    @property
    def is_quadratic(self) -> bool:
        return self.kind == "quadratic"

    def __str__(self) -> str:
        return "rationals" if self.d is None else f"quadratic:{self.d}"

    def element(self, a=0, b=0) -> "FieldElement":
        return FieldElement(a, b, self.d)

    def one(self) -> "FieldElement":
        return FieldElement(1, 0, self.d)

    def zero(self) -> "FieldElement":
        return FieldElement(0, 0, self.d)

    def sqrt_d(self) -> "FieldElement":
        if self.d is None:
            raise InvalidAutomorphismError("the rationals have no adjoined square root")
        return FieldElement(0, 1, self.d)

    def automorphisms(self) -> list["FieldAutomorphism"]:
        auts = [FieldAutomorphism("identity", self)]
        if self.is_quadratic:
            auts.append(FieldAutomorphism("conjugation", self))
        return auts

    def random_element(self, rng: random.Random, height: int = 5) -> "FieldElement":
        def q():
            return Fraction(rng.randint(-height, height), rng.randint(1, height))

        return FieldElement(q(), q() if self.is_quadratic else 0, self.d)


class FieldElement:
    """a + b*sqrt(d) with rational a, b.  d is None for plain rationals."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int | None = None):
        a = a if isinstance(a, Fraction) else Fraction(a)
        b = b if isinstance(b, Fraction) else Fraction(b)
        if b and d is None:
            raise FieldMismatchError("irrational part given without a radicand")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @classmethod
    def coerce(cls, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to a field element")

    @staticmethod
    def _join(x: "FieldElement", y: "FieldElement") -> int | None:
        if x.d is None:
            return y.d
        if y.d is None or y.d == x.d:
            return x.d
        raise FieldMismatchError(f"Q(sqrt {x.d}) and Q(sqrt {y.d}) elements mixed")

    def _other(self, y):
        if isinstance(y, FieldElement):
            return y
        if isinstance(y, (int, Fraction)):
            return FieldElement(y)
        return None

    def __add__(self, y):
        y = self._other(y)
        if y is None:
            return NotImplemented
        return FieldElement(self.a + y.a, self.b + y.b, self._join(self, y))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, y):
        y = self._other(y)
        if y is None:
            return NotImplemented
        return FieldElement(self.a - y.a, self.b - y.b, self._join(self, y))

    def __rsub__(self, y):
        y = self._other(y)
        if y is None:
            return NotImplemented
        return y - self

    def __mul__(self, y):
        y = self._other(y)
        if y is None:
            return NotImplemented
        d = self._join(self, y)
        if not self.b or not y.b:
            return FieldElement(self.a * y.a, self.a * y.b + self.b * y.a, d)
        return FieldElement(self.a * y.a + d * self.b * y.b, self.a * y.b + self.b * y.a, d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - (self.d or 0) * self.b * self.b

    def inverse(self) -> "FieldElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return FieldElement(self.a / n, -self.b / n, self.d)

    def __truediv__(self, y):
        y = self._other(y)
        if y is None:
            return NotImplemented
        return self * y.inverse()

    def __rtruediv__(self, y):
        y = self._other(y)
        if y is None:
            return NotImplemented
        return y * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = FieldElement(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "FieldElement":
        return FieldElement(self.a, -self.b, self.d)

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __bool__(self):
        return not self.is_zero()

    @property
    def is_rational(self) -> bool:
        return not self.b

    def __eq__(self, y):
        if isinstance(y, FieldElement):
            if self.b or y.b:
                return self.a == y.a and self.b == y.b and self.d == y.d
            return self.a == y.a
        if isinstance(y, (int, Fraction)):
            return not self.b and self.a == y
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        if self.d is None:
            return f"FieldElement({self.a})"
        return f"FieldElement({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        return format_scalar(self)


def format_scalar(x: FieldElement) -> str:
    """Canonical scalar text: "p/q" for rationals, "[p/q, r/s]" for irrational quadratics."""
    if x.b:
        return f"[{x.a}, {x.b}]"
    return str(x.a)


def parse_scalar(text: str, field: FieldSpec | None = None) -> FieldElement:
    d = field.d if field is not None else None
    s = text.strip()
    try:
        if s.startswith("["):
            if not s.endswith("]"):
                raise ValueError("unterminated bracket")
            parts = s[1:-1].split(",")
            if len(parts) != 2:
                raise ValueError("quadratic scalars have exactly two components")
            if d is None:
                raise FieldMismatchError("quadratic scalar outside a quadratic field")
            return FieldElement(Fraction(parts[0].strip()), Fraction(parts[1].strip()), d)
        return FieldElement(Fraction(s), 0, d)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar {text!r}: {exc}") from None


class FieldAutomorphism:
    """Identity or (for quadratic fields) the conjugation sqrt d -> -sqrt d."""

    __slots__ = ("kind", "field")

    KINDS = ("identity", "conjugation")

    def __init__(self, kind: str = "identity", field: FieldSpec | None = None):
        if kind not in self.KINDS:
            raise InvalidAutomorphismError(f"unknown automorphism {kind!r}")
        field = field or FieldSpec.rationals()
        if kind == "conjugation" and not field.is_quadratic:
            raise InvalidAutomorphismError("conjugation requested on the rationals")
        self.kind = kind
        self.field = field

    @classmethod
    def identity(cls, field: FieldSpec | None = None) -> "FieldAutomorphism":
        return cls("identity", field)

    @classmethod
    def conjugation(cls, field: FieldSpec) -> "FieldAutomorphism":
        return cls("conjugation", field)

    @property
    def is_identity(self) -> bool:
        return self.kind == "identity"

    def __call__(self, x):
        return apply_aut(self, x)

    def compose(self, other: "FieldAutomorphism") -> "FieldAutomorphism":
        """self after other."""
        field = self.field if self.field.is_quadratic else other.field
        kind = "identity" if self.kind == other.kind else "conjugation"
        return FieldAutomorphism(kind, field)

    def inverse(self) -> "FieldAutomorphism":
        return self

    def __eq__(self, other):
        if not isinstance(other, FieldAutomorphism):
            return NotImplemented
        return self.kind == other.kind

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return f"FieldAutomorphism({self.kind!r}, {self.field})"

    def __str__(self):
        return self.kind


def apply_aut(phi: FieldAutomorphism, x):
    """Apply a field automorphism to a scalar, or coefficient-wise to anything with map_coefficients."""
    if isinstance(x, (int, Fraction)):
        return FieldElement(x, 0, phi.field.d)
    if isinstance(x, FieldElement):
        if x.d is not None and phi.field.d is not None and x.d != phi.field.d:
            raise FieldMismatchError(f"automorphism of Q(sqrt {phi.field.d}) applied to Q(sqrt {x.d})")
        if phi.kind == "identity" or not x.b:
            return x
        return FieldElement(x.a, -x.b, x.d)
    mapper = getattr(x, "map_coefficients", None)
    if mapper is None:
        raise TypeError(f"cannot apply an automorphism to {type(x).__name__}")
    return mapper(lambda c: apply_aut(phi, c))


def field_arith(op: str, x: Number, y: Number | None = None) -> FieldElement:
    """Dispatch helper: op in add, sub, mul, div, neg, inv."""
    x = FieldElement.coerce(x)
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    y = FieldElement.coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown field operation {op!r}")

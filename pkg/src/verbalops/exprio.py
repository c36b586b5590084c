"""Text and JSON input/output for algebra expressions, scalar polynomials, word systems and parameters.

Expression grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := scalar | generator | '(' expr ')'

``*`` associates to the left.  It is the algebra product when both sides are
algebra elements and scalar action otherwise.  Rationals are written ``p/q``;
elements of Q(sqrt d) are written ``[a, b]`` for a + b sqrt d.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import ConstraintError, ParseError, SchemaError, VerbalOpsError
from .exactfield import FieldAutomorphism, FieldElement, FieldSpec, format_scalar
from .freemagma import AlgebraElement, Monomial, render_element
from .polynomial import Poly, format_poly
from .relfree import VarietySpec
from .verbal import A, ScalarWordFamily, WordSystem, check_op1


class AmbiguousAssociationWarning(UserWarning):
    """Three or more algebra factors multiplied without parentheses."""


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<bracket>\[[^\]]*\])
  | (?P<number>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


def _bracket_scalar(tok: Token, field: FieldSpec) -> FieldElement:
    parts = tok.text[1:-1].split(",")
    if len(parts) != 2:
        raise ParseError("quadratic scalars need two components", tok.pos)
    if not field.is_quadratic:
        raise ParseError("quadratic scalar in an expression over the rationals", tok.pos)
    try:
        return FieldElement(Fraction(parts[0].strip()), Fraction(parts[1].strip()), field.d)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"malformed scalar {tok.text!r}", tok.pos) from None


def _number(tok: Token, field: FieldSpec) -> FieldElement:
    try:
        return FieldElement(Fraction(tok.text), 0, field.d)
    except ZeroDivisionError:
        raise ParseError(f"malformed scalar {tok.text!r}", tok.pos) from None


class _Parser:
    def __init__(self, text: str, field: FieldSpec):
        self.text = text
        self.field = field
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def take(self, text: str | None = None) -> Token:
        t = self.tok
        if text is not None and t.text != text:
            got = repr(t.text) if t.text else "end of input"
            raise ParseError(f"expected {text!r}, found {got}", t.pos)
        self.i += 1
        return t

    def at(self, *texts: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in texts

    def finish(self):
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)


class _ExpressionParser(_Parser):
    def __init__(self, text: str, ngens: int, field: FieldSpec):
        super().__init__(text, field)
        self.ngens = ngens

    def expr(self):
        negate = False
        if self.at("-"):
            self.take()
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while self.at("+", "-"):
            op = self.take().text
            rhs = self.term()
            acc = self._add(acc, rhs if op == "+" else -rhs)
        return acc

    def _add(self, x, y):
        if isinstance(x, FieldElement) and isinstance(y, FieldElement):
            return x + y
        if isinstance(x, FieldElement) or isinstance(y, FieldElement):
            # a nonzero scalar summand has no meaning in an algebra without unit
            s = x if isinstance(x, FieldElement) else y
            if s:
                raise ParseError("scalar added to an algebra element", self.tok.pos)
            return y if isinstance(x, FieldElement) else x
        return x + y

    def term(self):
        start = self.tok.pos
        acc = self.factor()
        algebra_factors = int(isinstance(acc, AlgebraElement))
        while self.at("*"):
            self.take()
            rhs = self.factor()
            algebra_factors += isinstance(rhs, AlgebraElement)
            acc = acc * rhs  # product or scalar action, decided by the operand types
        if algebra_factors >= 3:
            warnings.warn(f"left-associating unparenthesized product at offset {start}",
                          AmbiguousAssociationWarning, stacklevel=4)
        return acc

    def factor(self):
        t = self.tok
        if t.kind == "number":
            self.take()
            return _number(t, self.field)
        if t.kind == "bracket":
            self.take()
            return _bracket_scalar(t, self.field)
        if t.kind == "name":
            self.take()
            return self._generator(t)
        if self.at("("):
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if self.at("-"):
            self.take()
            return -self.factor()
        got = repr(t.text) if t.text else "end of input"
        raise ParseError(f"expected a scalar, generator or '(', found {got}", t.pos)

    def _generator(self, t: Token) -> AlgebraElement:
        if t.text == "x" and self.ngens == 1:
            return AlgebraElement.generator(1, 1)
        m = re.fullmatch(r"x(\d+)", t.text)
        if not m:
            raise ParseError(f"unknown symbol {t.text!r}", t.pos)
        idx = int(m.group(1))
        if not 1 <= idx <= self.ngens:
            raise ParseError(f"generator x{idx} outside x1..x{self.ngens}", t.pos)
        return AlgebraElement.generator(idx, self.ngens)


def parse_expression(text: str, generator_count: int, field: FieldSpec | None = None) -> AlgebraElement:
    """Parse an algebra expression on generators x1..x{generator_count}."""
    field = field or FieldSpec.quadratic(2)
    p = _ExpressionParser(text, generator_count, field)
    value = p.expr()
    p.finish()
    if isinstance(value, FieldElement):
        if value:
            raise ParseError("expression is a bare scalar", 0)
        return AlgebraElement.zero(generator_count)
    return value


def format_expression(e: AlgebraElement) -> str:
    return render_element(e)


class _PolyParser(_Parser):
    """Polynomials in named indeterminates: sums of products of scalars, names and powers."""

    def __init__(self, text: str, field: FieldSpec, variables: set[str] | None):
        super().__init__(text, field)
        self.variables = variables

    def expr(self) -> Poly:
        negate = self.at("-")
        if negate:
            self.take()
        acc = self.term()
        if negate:
            acc = -acc
        while self.at("+", "-"):
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        acc = self.power()
        while self.at("*"):
            self.take()
            acc = acc * self.power()
        return acc

    def power(self) -> Poly:
        base = self.atom()
        if self.at("^"):
            self.take()
            t = self.take()
            if t.kind != "number" or "/" in t.text:
                raise ParseError("exponent must be a nonnegative integer", t.pos)
            return base ** int(t.text)
        return base

    def atom(self) -> Poly:
        t = self.tok
        if t.kind == "number":
            self.take()
            return Poly.const(_number(t, self.field))
        if t.kind == "bracket":
            self.take()
            return Poly.const(_bracket_scalar(t, self.field))
        if t.kind == "name":
            self.take()
            if self.variables is not None and t.text not in self.variables:
                raise ParseError(f"unknown indeterminate {t.text!r}", t.pos)
            return Poly.var(t.text)
        if self.at("("):
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if self.at("-"):
            self.take()
            return -self.atom()
        got = repr(t.text) if t.text else "end of input"
        raise ParseError(f"expected a scalar, indeterminate or '(', found {got}", t.pos)


def parse_polynomial(text: str, field: FieldSpec | None = None, variables=(A,)) -> Poly:
    """Parse e.g. "a^2 - a" or "[1, 1]*a".  Pass variables=None to accept any indeterminate."""
    field = field or FieldSpec.quadratic(2)
    p = _PolyParser(text, field, set(variables) if variables is not None else None)
    value = p.expr()
    p.finish()
    return value


def format_polynomial(p: Poly) -> str:
    return format_poly(p)


# --- documents ------------------------------------------------------------------

def _require(doc: dict, key: str, kind, path: str):
    if key not in doc:
        raise SchemaError(f"{path}.{key}", "missing field")
    value = doc[key]
    if not isinstance(value, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise SchemaError(f"{path}.{key}", f"expected {names}, got {type(value).__name__}")
    return value


def _wrap(path: str, fn, *args):
    """Run a parser, re-labelling its errors with the document path."""
    try:
        return fn(*args)
    except ParseError as exc:
        raise SchemaError(path, str(exc)) from None
    except (ValueError, VerbalOpsError) as exc:
        if isinstance(exc, (SchemaError, ConstraintError)):
            raise
        raise SchemaError(path, str(exc)) from None


def load_field(doc: Any, path: str = "$.field") -> FieldSpec:
    if doc is None:
        return FieldSpec.quadratic(2)
    if isinstance(doc, str):
        return _wrap(path, FieldSpec.parse, doc)
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an object or a string")
    kind = _require(doc, "kind", str, path)
    if kind == "rationals":
        return FieldSpec.rationals()
    if kind == "quadratic":
        d = doc.get("d", 2)
        if not isinstance(d, int) or isinstance(d, bool):
            raise SchemaError(f"{path}.d", "expected an integer")
        return _wrap(f"{path}.d", FieldSpec.quadratic, d)
    raise SchemaError(f"{path}.kind", f"unknown field kind {kind!r}")


def dump_field(field: FieldSpec) -> dict:
    return {"kind": "quadratic", "d": field.d} if field.is_quadratic else {"kind": "rationals"}


def _phi(doc: dict, field: FieldSpec, path: str) -> FieldAutomorphism:
    name = doc.get("phi", "identity")
    if not isinstance(name, str):
        raise SchemaError(f"{path}.phi", "expected a string")
    return _wrap(f"{path}.phi", FieldAutomorphism, name, field)


def _scalar_monomial(text: str, field: FieldSpec, path: str) -> Monomial:
    e = _wrap(path, parse_expression, text, 1, field)
    if len(e) != 1 or e.items()[0][1] != 1:
        raise SchemaError(path, "scalar family keys must be single monomials in x1")
    return e.items()[0][0]


def _validate(W: WordSystem) -> WordSystem:
    rep = check_op1(W)
    if not rep:
        w = rep.witnesses[0]
        raise ConstraintError(w.axiom, w.note)
    for m, p in W.scalar_family.coefficients:
        if p.subs({A: 0}):
            raise ConstraintError("scalar words vanish at a = 0", f"coefficient of {m} is {p}")
    return W


def load_wordsystem(doc: dict | str, validate: bool = True) -> WordSystem:
    """Build a WordSystem from an explicit document or a parameter shorthand."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected an object")
    if any(k in doc for k in ("params", "params3", "params4")):
        from .autgroup import params_to_wordsystem
        return params_to_wordsystem(load_params(doc))
    field = load_field(doc.get("field"))
    variety_name = _require(doc, "variety", str, "$")
    variety = _wrap("$.variety", VarietySpec.parse, variety_name)
    phi = _phi(doc, field, "$")
    w_plus = _wrap("$.w_plus", parse_expression, _require(doc, "w_plus", str, "$"), 2, field)
    w_dot = _wrap("$.w_dot", parse_expression, _require(doc, "w_dot", str, "$"), 2, field)
    family_doc = _require(doc, "scalar_family", dict, "$")
    coeffs = {}
    for key, value in family_doc.items():
        path = f"$.scalar_family[{key!r}]"
        if not isinstance(value, str):
            raise SchemaError(path, "expected a polynomial in a as a string")
        m = _scalar_monomial(key, field, path)
        coeffs[m] = coeffs.get(m, Poly()) + _wrap(path, parse_polynomial, value, field)
    W = WordSystem(variety, field, ScalarWordFamily.build(phi, coeffs), w_plus, w_dot)
    return _validate(W) if validate else W


def save_wordsystem(W: WordSystem) -> dict:
    for name, w in (("w_plus", W.w_plus), ("w_dot", W.w_dot)):
        if any(isinstance(c, Poly) and not c.is_constant() for _, c in w.items()):
            raise ValueError(f"{name} has symbolic coefficients and cannot be serialized")
    return {
        "variety": W.variety.cli_name,
        "field": dump_field(W.field),
        "phi": W.phi.kind,
        "w_plus": format_expression(W.w_plus),
        "w_dot": format_expression(W.w_dot),
        "scalar_family": {format_expression(AlgebraElement.from_monomial(m, 1)): format_poly(p)
                          for m, p in W.scalar_family.coefficients},
    }


_PARAM_KEYS = ("gamma12", "gamma1_22", "gamma11_2", "alpha12", "alpha21")


def load_params(doc: dict | str):
    """Parameter documents: {"params3": {...}}, {"params4": {...}} or {"params": {"variety": ..., ...}}."""
    from .autgroup import StronglyStableParams

    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected an object")
    field = load_field(doc.get("field"))
    for key, variety in (("params3", "nilpotent3"), ("params4", "nilpotent4"), ("params", None)):
        if key in doc:
            break
    else:
        raise SchemaError("$", "expected one of params, params3, params4")
    body = doc[key]
    path = f"$.{key}"
    if not isinstance(body, dict):
        raise SchemaError(path, "expected an object")
    if variety is None:
        variety = _require(body, "variety", str, path)
    spec = _wrap(f"{path}.variety", VarietySpec.parse, variety)
    phi = _phi(body, field, path)
    unknown = set(body) - set(_PARAM_KEYS) - {"phi", "variety"}
    if unknown:
        raise SchemaError(f"{path}.{sorted(unknown)[0]}", "unknown parameter")
    values = {}
    for k in _PARAM_KEYS:
        raw = body.get(k, 0)
        if isinstance(raw, bool) or not isinstance(raw, (str, int)):
            raise SchemaError(f"{path}.{k}", "expected a scalar string or integer")
        p = _wrap(f"{path}.{k}", parse_polynomial, str(raw), field, ())
        values[k] = p.constant()
    if spec.is_nilpotent and spec.nilpotency not in (3, 4):
        raise SchemaError(f"{path}.variety", "parameter documents cover nilpotency classes 3 and 4")
    return StronglyStableParams(spec, field, phi, **values)


def save_params(p) -> dict:
    body = p.as_dict()
    kind = p.kind
    if kind in ("nilpotent3", "nilpotent4"):
        body.pop("variety")
        key = "params3" if kind == "nilpotent3" else "params4"
    else:
        key = "params"
    return {"field": dump_field(p.field), key: body}


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=False)


__all__ = [
    "AmbiguousAssociationWarning",
    "dump_field",
    "dumps",
    "format_expression",
    "format_polynomial",
    "format_scalar",
    "load_field",
    "load_params",
    "load_wordsystem",
    "parse_expression",
    "parse_polynomial",
    "read_json",
    "save_params",
    "save_wordsystem",
    "tokenize",
]

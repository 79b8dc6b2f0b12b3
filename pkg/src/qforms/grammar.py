"""Expression grammar: parsing and canonical rendering of engine values.

The grammar (whitespace-insensitive)::

    expr  := ["-"] prod (("+"|"-") prod)*
    prod  := power (("*"|"/") power)*
    power := atom ["^" ["-"] INT]
    atom  := INT | "q" | NAME | "d" "(" expr ")" | "star" "(" expr ")"
           | "(" expr ")"

Products juxtapose every kind of value: scalars commute freely, algebra
elements multiply in normal form, products involving forms are module
products or wedge products, and integral forms act on (or are acted on by)
whatever stands next to them.  Division requires a scalar divisor; rationals
are spelled with it (``5/3``).

``format_value`` renders any engine value deterministically (sorted
monomials, sorted words) such that parsing the output reproduces the value.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from .algebra import AlgebraElement
from .forms import Form
from .integrals import IntegralForm, dual_basis
from .scalars import RatFunc, format_scalar


class ParseError(ValueError):
    """Syntax or name-resolution error, carrying the source position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at column {position + 1})")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)"
                    r"|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            break
        if m.group("int"):
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, bundle):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.bundle = bundle
        self.field = bundle.field

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, val, at = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", at)

    def parse(self):
        value = self.sum()
        kind, _, at = self.peek()
        if kind != "end":
            raise ParseError("trailing input", at)
        return value

    def sum(self):
        negate = False
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.next()
            negate = True
        value = self.prod()
        if negate:
            value = _neg(value)
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.prod()
                value = _add(self, value, _neg(rhs) if val == "-" else rhs)
            else:
                return value

    def prod(self):
        value = self.power()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.power()
                value = _mul(self, value, rhs) if val == "*" else _div(self, value, rhs)
            else:
                return value

    def power(self):
        value = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            sign = 1
            kind, val, at = self.peek()
            if kind == "op" and val == "-":
                self.next()
                sign = -1
            kind, val, at = self.next()
            if kind != "int":
                raise ParseError("expected integer exponent", at)
            value = _pow(self, value, sign * val)
        return value

    def atom(self):
        kind, val, at = self.next()
        if kind == "int":
            return self.field.rational(val)
        if kind == "op" and val == "(":
            inner = self.sum()
            self.expect_op(")")
            return inner
        if kind == "name":
            if val in ("d", "star"):
                self.expect_op("(")
                inner = self.sum()
                self.expect_op(")")
                return self._apply_map(val, inner, at)
            return self._resolve(val, at)
        raise ParseError("expected a value", at)

    def _apply_map(self, op: str, x, at: int):
        calc = self.bundle.calculus
        if _is_scalar_value(x):
            x = self.bundle.presentation.scalar(x)
        if op == "d":
            if isinstance(x, (AlgebraElement, Form)):
                return calc.d(x)
            raise ParseError("d(...) applies to algebra elements and forms", at)
        if isinstance(x, AlgebraElement):
            return x.star()
        if isinstance(x, Form):
            return calc.star(x)
        raise ParseError("star(...) applies to algebra elements and forms", at)

    def _resolve(self, name: str, at: int):
        b = self.bundle
        if name == "q":
            return self.field.q(1)
        if name in b.presentation.names:
            return b.presentation.gen(name)
        if name in b.abbreviations:
            return b.abbreviations[name]
        if name in b.calculus.form_names:
            return b.calculus.basis_form(name)
        for word, dual in b.dual_names.items():
            if dual == name:
                return dual_basis(b.calculus, word)
        raise ParseError(f"unknown identifier {name!r}", at)


def _is_scalar_value(x) -> bool:
    return isinstance(x, (int, Fraction, RatFunc))


def _neg(x):
    return -x


def _add(parser, x, y):
    b = parser.bundle
    if _is_scalar_value(x) and _is_scalar_value(y):
        return x + y
    if _is_scalar_value(x):
        x = b.presentation.scalar(x)
    if _is_scalar_value(y):
        y = b.presentation.scalar(y)
    if isinstance(x, AlgebraElement) and isinstance(y, Form):
        x = b.calculus.from_element(x)
    if isinstance(y, AlgebraElement) and isinstance(x, Form):
        y = b.calculus.from_element(y)
    try:
        return x + y
    except (TypeError, ValueError) as exc:
        raise ValueError(f"cannot add {_kind(x)} and {_kind(y)}: {exc}") from exc


def _mul(parser, x, y):
    if _is_scalar_value(x) or _is_scalar_value(y):
        if _is_scalar_value(x) and _is_scalar_value(y):
            return x * y
        scalar, other = (x, y) if _is_scalar_value(x) else (y, x)
        return other.scale(scalar)
    if isinstance(x, IntegralForm) and isinstance(y, IntegralForm):
        duality = parser.bundle.duality
        if duality is None:
            raise ValueError("no duality data: cannot multiply integral forms")
        product = duality.transported_mul(x, y)
        return parser.field.zero if product is None else product
    if isinstance(x, Form) and isinstance(y, IntegralForm):
        raise ValueError("a form cannot act on an integral form from the left")
    result = x * y
    if result is NotImplemented:
        raise ValueError(f"cannot multiply {_kind(x)} by {_kind(y)}")
    return result


def _div(parser, x, y):
    if not _is_scalar_value(y):
        raise ValueError("division requires a scalar divisor")
    if _is_scalar_value(x):
        one = parser.field.one
        return x * (one / y)
    return x.scale(parser.field.one / y)


def _pow(parser, x, k: int):
    if _is_scalar_value(x):
        return x ** k if isinstance(x, RatFunc) else Fraction(x) ** k
    if isinstance(x, AlgebraElement):
        return x ** k
    if isinstance(x, Form):
        if k < 0:
            raise ValueError("forms cannot be raised to negative powers")
        out = parser.bundle.calculus.from_element(parser.bundle.presentation.one())
        for _ in range(k):
            out = out * x
        return out
    raise ValueError(f"cannot exponentiate {_kind(x)}")


def _kind(x) -> str:
    if _is_scalar_value(x):
        return "scalar"
    return type(x).__name__


def parse_expr(text: str, bundle):
    """Parse an expression in the context of a preset bundle."""
    return _Parser(text, bundle).parse()


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _scalar_str(c) -> str:
    return format_scalar(c)


def _monomial_str(pres, mono) -> str:
    parts = []
    for name, e in zip(pres.names, mono):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _element_str(a: AlgebraElement) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for mono in sorted(a.terms):
        c = a.terms[mono]
        mono_s = _monomial_str(a.presentation, mono)
        if not mono_s:
            parts.append("1" if c == a.presentation.field.one else f"({_scalar_str(c)})")
        elif c == a.presentation.field.one:
            parts.append(mono_s)
        else:
            parts.append(f"({_scalar_str(c)})*{mono_s}")
    return " + ".join(parts)


def _word_str(calc, word) -> str:
    return "*".join(calc.form_names[i] for i in word)


def _form_str(u: Form) -> str:
    if u.is_zero():
        return "0"
    parts = []
    for word in sorted(u.terms, key=lambda w: (len(w), w)):
        c = u.terms[word]
        if not word:
            parts.append(_element_str(c))
            continue
        word_s = _word_str(u.calculus, word)
        if c == u.calculus.presentation.one():
            parts.append(word_s)
        elif len(c.terms) == 1:
            (mono, s), = c.terms.items()
            mono_s = _monomial_str(c.presentation, mono)
            head = mono_s if s == u.calculus.field.one and mono_s else \
                (f"({_scalar_str(s)})" if not mono_s else f"({_scalar_str(s)})*{mono_s}")
            parts.append(f"{head}*{word_s}")
        else:
            parts.append(f"({_element_str(c)})*{word_s}")
    return " + ".join(parts)


def _integral_str(f: IntegralForm, dual_names) -> str:
    if f.degree == 0:
        return _element_str(f.element())
    if f.is_zero():
        return "0"
    calc = f.calculus
    parts = []
    for word in sorted(f.values):
        name = dual_names.get(word)
        if name is None:
            name = f"dual[{_word_str(calc, word)}]"
        r = calc.word_twist(word, f.values[word])
        if r == calc.presentation.one():
            parts.append(name)
        else:
            parts.append(f"{name}*({_element_str(r)})")
    return " + ".join(parts)


def format_value(x, dual_names: Optional[dict] = None) -> str:
    """Deterministic, re-parseable rendering of any engine value."""
    if _is_scalar_value(x):
        return _scalar_str(x)
    if isinstance(x, AlgebraElement):
        return _element_str(x)
    if isinstance(x, Form):
        return _form_str(x)
    if isinstance(x, IntegralForm):
        return _integral_str(x, dual_names or {})
    raise TypeError(f"cannot format {type(x).__name__}")

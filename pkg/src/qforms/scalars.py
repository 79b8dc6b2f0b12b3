"""Exact arithmetic in the field Q(q) of rational functions in the parameter q.

A scalar is a quotient num/den where num is a Laurent polynomial in q and den
an ordinary polynomial, both with exact rational coefficients.  The stored
representation is canonical:

* den is monic, has a nonzero constant term (every pure power of q is moved
  into the Laurent exponents of num) and shares no nonconstant factor with num;
* zero is stored as num = 0, den = 1.

Canonicity makes equality a structural check, which the rest of the engine
relies on: every verified identity reduces to "both sides have identical
representation".

The module also provides the scalar *domains* the engine is generic over:
:class:`SymbolicScalars` (values are :class:`RatFunc`) and
:class:`RationalScalars` (q specialized to a fixed nonzero rational, values
are :class:`fractions.Fraction`).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Union[int, Fraction]


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at a zero of its denominator."""


# ---------------------------------------------------------------------------
# polynomial helpers; a polynomial is a dict {exponent: Fraction}, no zeros
# ---------------------------------------------------------------------------

def _trim(p: dict) -> dict:
    return {e: c for e, c in p.items() if c}


def _padd(p1: dict, p2: dict) -> dict:
    out = dict(p1)
    for e, c in p2.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _pmul(p1: dict, p2: dict) -> dict:
    out: dict = {}
    for e1, c1 in p1.items():
        for e2, c2 in p2.items():
            e = e1 + e2
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _pshift(p: dict, k: int) -> dict:
    return {e + k: c for e, c in p.items()}


def _pscale(p: dict, s: Fraction) -> dict:
    return {e: c * s for e, c in p.items()} if s else {}


def _pdivmod(p1: dict, p2: dict) -> tuple[dict, dict]:
    # long division of ordinary polynomials over Q; p2 nonzero
    quot: dict = {}
    rem = dict(p1)
    d2 = max(p2)
    lc2 = p2[d2]
    while rem and max(rem) >= d2:
        d1 = max(rem)
        f = rem[d1] / lc2
        quot[d1 - d2] = f
        rem = _padd(rem, _pscale(_pshift(p2, d1 - d2), -f))
    return quot, rem


def _pgcd(p1: dict, p2: dict) -> dict:
    # monic gcd via the Euclidean algorithm
    a, b = dict(p1), dict(p2)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return {}
    lc = a[max(a)]
    return _pscale(a, Fraction(1) / lc)


def _peval(p: dict, x: Fraction) -> Fraction:
    return sum((c * x ** e for e, c in p.items()), Fraction(0))


class RatFunc:
    """An element of Q(q) in canonical form.

    Supports +, -, *, /, ** (integer exponents, negative allowed for nonzero
    values) and mixes freely with ``int`` and ``Fraction``.
    """

    __slots__ = ("_num", "_den")

    _TRIVIAL_DEN = ((0, Fraction(1)),)

    @classmethod
    def _raw(cls, num: tuple, den: tuple) -> "RatFunc":
        # bypass canonicalization for values already in canonical form
        out = cls.__new__(cls)
        out._num = num
        out._den = den
        return out

    def __init__(self, num: Mapping[int, Rational] | Rational = 0,
                 den: Mapping[int, Rational] | Rational = 1):
        if not isinstance(num, Mapping):
            num = {0: num}
        if not isinstance(den, Mapping):
            den = {0: den}
        n = _trim({e: Fraction(c) for e, c in num.items()})
        d = _trim({e: Fraction(c) for e, c in den.items()})
        if not d:
            raise ZeroDivisionError("zero denominator")
        if not n:
            self._num, self._den = (), ((0, Fraction(1)),)
            return
        # pull pure q powers of den into num's Laurent exponents
        shift = min(d)
        if shift:
            d = _pshift(d, -shift)
            n = _pshift(n, -shift)
        # cancel the common polynomial factor
        val = min(n)
        p = _pshift(n, -val)
        if max(d) > 0:
            g = _pgcd(p, d)
            if max(g) > 0:
                p = _pdivmod(p, g)[0]
                d = _pdivmod(d, g)[0]
        # make den monic
        lc = d[max(d)]
        if lc != 1:
            d = _pscale(d, Fraction(1) / lc)
            p = _pscale(p, Fraction(1) / lc)
        n = _pshift(p, val)
        self._num = tuple(sorted(n.items()))
        self._den = tuple(sorted(d.items()))

    # -- accessors ---------------------------------------------------------

    @property
    def num_terms(self) -> tuple:
        return self._num

    @property
    def den_terms(self) -> tuple:
        return self._den

    def is_zero(self) -> bool:
        return not self._num

    def __bool__(self) -> bool:
        return bool(self._num)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "RatFunc | None":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc({0: x})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._den == RatFunc._TRIVIAL_DEN and o._den == RatFunc._TRIVIAL_DEN:
            n = _padd(dict(self._num), dict(o._num))
            if not n:
                return ZERO
            return RatFunc._raw(tuple(sorted(n.items())), RatFunc._TRIVIAL_DEN)
        n1, d1 = dict(self._num), dict(self._den)
        n2, d2 = dict(o._num), dict(o._den)
        if d1 == d2:
            return RatFunc(_padd(n1, n2), d1)
        return RatFunc(_padd(_pmul(n1, d2), _pmul(n2, d1)), _pmul(d1, d2))

    __radd__ = __add__

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out._num = tuple((e, -c) for e, c in self._num)
        out._den = self._den
        return out

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._den == RatFunc._TRIVIAL_DEN and o._den == RatFunc._TRIVIAL_DEN:
            if len(self._num) == 1 and len(o._num) == 1:
                (e1, c1), = self._num
                (e2, c2), = o._num
                return RatFunc._raw(((e1 + e2, c1 * c2),), RatFunc._TRIVIAL_DEN)
            n = _pmul(dict(self._num), dict(o._num))
            if not n:
                return ZERO
            return RatFunc._raw(tuple(sorted(n.items())), RatFunc._TRIVIAL_DEN)
        return RatFunc(_pmul(dict(self._num), dict(o._num)),
                       _pmul(dict(self._den), dict(o._den)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._num:
            raise ZeroDivisionError("division by zero in Q(q)")
        if o._den == RatFunc._TRIVIAL_DEN and len(o._num) == 1:
            (e, c), = o._num
            return self * RatFunc._raw(((-e, 1 / c),), RatFunc._TRIVIAL_DEN)
        return RatFunc(_pmul(dict(self._num), dict(o._den)),
                       _pmul(dict(self._den), dict(o._num)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if self._den == RatFunc._TRIVIAL_DEN and len(self._num) == 1:
            (e, c), = self._num
            return RatFunc._raw(((e * k, c ** k),), RatFunc._TRIVIAL_DEN)
        if k < 0:
            return (RatFunc(1) / self) ** (-k)
        out = RatFunc(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._num == o._num and self._den == o._den

    def __hash__(self):
        return hash((self._num, self._den))

    def __repr__(self):
        return f"RatFunc({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = RatFunc(0)
ONE = RatFunc(1)


def q_power(k: int = 1) -> RatFunc:
    """The Laurent monomial q^k."""
    return RatFunc({k: 1})


def qint(m: int, e: int = 1) -> RatFunc:
    """The x-integer [m]_x = 1 + x + ... + x^(m-1) with x = q^e.

    [0]_x is the empty sum 0; m must be nonnegative.
    """
    if m < 0:
        raise ValueError("q-integer index must be nonnegative")
    out: dict[int, int] = {}
    for j in range(m):
        out[e * j] = out.get(e * j, 0) + 1
    return RatFunc(out)


def specialize(f: RatFunc, q0: Rational) -> Fraction:
    """Exact value of f at a nonzero rational q0.

    Raises :class:`PoleError` at zeros of the denominator; q0 = 0 is rejected
    because of Laurent exponents.
    """
    q0 = Fraction(q0)
    if q0 == 0:
        raise ValueError("cannot specialize at q = 0")
    den = _peval(dict(f.den_terms), q0)
    if den == 0:
        raise PoleError(f"pole at q = {q0}")
    return _peval(dict(f.num_terms), q0) / den


# ---------------------------------------------------------------------------
# rendering (kept in sync with the expression grammar of qforms.grammar)
# ---------------------------------------------------------------------------

def _format_poly(pairs: Iterable[tuple[int, Fraction]]) -> str:
    terms = sorted(pairs, key=lambda t: -t[0])
    if not terms:
        return "0"
    parts: list[str] = []
    for e, c in terms:
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if e == 0:
            body = str(a)
        else:
            qpart = "q" if e == 1 else f"q^{e}"
            body = qpart if a == 1 else f"{a}*{qpart}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out


def format_scalar(f) -> str:
    """Grammar-compatible rendering, e.g. ``q^2+1`` or ``(q^2+1)/(q^2+q+1)``."""
    if isinstance(f, (int, Fraction)):
        return str(f)
    num = _format_poly(f.num_terms)
    if f.den_terms == ((0, Fraction(1)),):
        return num
    den = _format_poly(f.den_terms)
    return f"({num})/({den})"


# ---------------------------------------------------------------------------
# scalar domains
# ---------------------------------------------------------------------------

class SymbolicScalars:
    """The field Q(q) itself; q is treated as transcendental."""

    symbolic = True

    def __init__(self):
        self.zero = ZERO
        self.one = ONE

    def q(self, k: int = 1) -> RatFunc:
        return q_power(k)

    def qint(self, m: int, e: int = 1) -> RatFunc:
        return qint(m, e)

    def rational(self, num: Rational, den: Rational = 1) -> RatFunc:
        return RatFunc({0: Fraction(num, den) if den != 1 else Fraction(num)})

    def from_symbolic(self, f: RatFunc) -> RatFunc:
        return f

    def describe(self) -> str:
        return "Q(q)"


class RationalScalars:
    """Q with q specialized to a fixed rational value distinct from 0."""

    symbolic = False

    def __init__(self, q0: Rational):
        q0 = Fraction(q0)
        if q0 == 0:
            raise ValueError("q must be specialized to a nonzero rational")
        self.q0 = q0
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def q(self, k: int = 1) -> Fraction:
        return self.q0 ** k

    def qint(self, m: int, e: int = 1) -> Fraction:
        if m < 0:
            raise ValueError("q-integer index must be nonnegative")
        x = self.q0 ** e
        return sum((x ** j for j in range(m)), Fraction(0))

    def rational(self, num: Rational, den: Rational = 1) -> Fraction:
        return Fraction(num, den) if den != 1 else Fraction(num)

    def from_symbolic(self, f: RatFunc) -> Fraction:
        return specialize(f, self.q0)

    def describe(self) -> str:
        return f"Q at q={self.q0}"


SYMBOLIC = SymbolicScalars()

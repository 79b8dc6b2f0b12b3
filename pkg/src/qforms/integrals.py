"""Right duals of form modules, hom-connections and the integral complex.

A degree-k integral form is a right-linear functional on degree-k forms,
stored extensionally by its values on the canonical ascending words; the
canonical basis is free of finite rank, so this is lossless and makes
equality decidable.  Degree 0 is identified with the algebra itself via the
value on the empty word.

Actions (for phi of degree k+l, forms w of degree l, algebra elements a, b):

    (a . phi . b)(w) = a * phi(b * w)          bimodule structure
    (phi * w)(w')    = phi(w * w')             degree-lowering action

The canonical hom-connection of a calculus with skew constants k_i is

    nabla(f) = sum_i k_i * partial_i(f(b_i))

on degree-1 integral forms; it extends to nabla_k : I^(k+1) -> I^k by

    nabla_k(phi)(w) = nabla(phi * w) + (-1)^(k+1) * phi(d w)

and the curvature nabla . nabla_1 measures the failure of the tower to be a
chain complex.
"""

from __future__ import annotations

from typing import Mapping

from .algebra import AlgebraElement, _is_scalar
from .forms import Calculus, Form, Word


class IntegralForm:
    """Right-linear functional on degree-k forms, given by its values on
    the canonical ascending words of degree k."""

    __slots__ = ("calculus", "degree", "values")

    def __init__(self, calculus: Calculus, degree: int,
                 values: Mapping[Word, AlgebraElement]):
        if degree < 0 or degree > calculus.top_degree:
            raise ValueError(f"degree {degree} out of range")
        self.calculus = calculus
        self.degree = degree
        self.values = {}
        for w, v in values.items():
            w = tuple(w)
            if len(w) != degree:
                raise ValueError(f"word {w} has wrong degree for a degree-{degree} functional")
            if v:
                self.values[w] = v

    # -- evaluation --------------------------------------------------------------

    def __call__(self, u) -> AlgebraElement:
        """Value on a form of matching degree (right-linear extension)."""
        pres = self.calculus.presentation
        if isinstance(u, AlgebraElement):
            u = self.calculus.from_element(u)
        if u.is_zero():
            return pres.zero()
        if u.degree() != self.degree:
            raise ValueError(f"cannot evaluate degree-{self.degree} functional "
                             f"on a degree-{u.degree()} form")
        out = pres.zero()
        for w, r in self.calculus.right_coefficients(u).items():
            v = self.values.get(w)
            if v is not None:
                out = out + v * r
        return out

    def element(self) -> AlgebraElement:
        """The algebra element identified with a degree-0 functional."""
        if self.degree != 0:
            raise ValueError("not a degree-0 functional")
        return self.values.get((), self.calculus.presentation.zero())

    # -- actions ------------------------------------------------------------------

    def act(self, u: Form) -> "IntegralForm":
        """The functional w' -> phi(u * w'), of degree (k - deg u)."""
        if u.is_zero():
            return IntegralForm(self.calculus, 0, {})
        du = u.degree()
        if du > self.degree:
            raise ValueError("degree overflow: form degree exceeds functional degree")
        k = self.degree - du
        vals = {}
        for w in self.calculus.words(k):
            wform = Form(self.calculus, {w: self.calculus.presentation.one()})
            vals[w] = self(u * wform)
        return IntegralForm(self.calculus, k, vals)

    def right_action(self, b: AlgebraElement) -> "IntegralForm":
        """(phi . b)(w) = phi(b w)."""
        vals = {}
        for w in self.calculus.words(self.degree):
            wform = Form(self.calculus, {w: self.calculus.presentation.one()})
            vals[w] = self(b * wform)
        return IntegralForm(self.calculus, self.degree, vals)

    def left_action(self, a: AlgebraElement) -> "IntegralForm":
        """(a . phi)(w) = a * phi(w)."""
        return IntegralForm(self.calculus, self.degree,
                            {w: a * v for w, v in self.values.items()})

    def __mul__(self, other):
        if isinstance(other, Form):
            return self.act(other)
        if isinstance(other, AlgebraElement):
            return self.right_action(other)
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.left_action(other)
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def scale(self, s) -> "IntegralForm":
        if not s:
            return IntegralForm(self.calculus, self.degree, {})
        return IntegralForm(self.calculus, self.degree,
                            {w: v.scale(s) for w, v in self.values.items()})

    # -- linear structure ------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, IntegralForm):
            return NotImplemented
        if self.calculus is not other.calculus or self.degree != other.degree:
            raise ValueError("incompatible integral forms")
        out = dict(self.values)
        for w, v in other.values.items():
            prev = out.get(w)
            s = v if prev is None else prev + v
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return IntegralForm(self.calculus, self.degree, out)

    def __neg__(self):
        return IntegralForm(self.calculus, self.degree,
                            {w: -v for w, v in self.values.items()})

    def __sub__(self, other):
        if not isinstance(other, IntegralForm):
            return NotImplemented
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.values

    def __bool__(self):
        return bool(self.values)

    def __eq__(self, other):
        if not isinstance(other, IntegralForm):
            return NotImplemented
        return (self.calculus is other.calculus and self.degree == other.degree
                and self.values == other.values)

    def __repr__(self):
        from .grammar import format_value
        return f"<{format_value(self)}>"


def dual_basis(calculus: Calculus, word: Word) -> IntegralForm:
    """The functional taking value 1 on ``word`` and 0 on other canonical
    words of the same degree."""
    word = tuple(word)
    return IntegralForm(calculus, len(word), {word: calculus.presentation.one()})


def bimodule_action(a: AlgebraElement, phi: IntegralForm, b: AlgebraElement) -> IntegralForm:
    """(a . phi . b)(w) = a * phi(b * w)."""
    return phi.right_action(b).left_action(a)


def nabla(f: IntegralForm) -> AlgebraElement:
    """Canonical hom-connection on degree-1 integral forms."""
    calc = f.calculus
    if calc.hom_constants is None:
        raise ValueError("calculus has no hom-connection constants")
    if f.degree != 1:
        raise ValueError("hom-connection applies to degree-1 integral forms")
    out = calc.presentation.zero()
    for i, k_i in enumerate(calc.hom_constants):
        v = f.values.get((i,))
        if v is not None:
            out = out + k_i * calc.partial(i, v)
    return out


def nabla_ext(phi: IntegralForm) -> IntegralForm:
    """Extension nabla_k : I^(k+1) -> I^k of the hom-connection.

    For degree-1 input this returns the degree-0 functional identified with
    nabla(phi).
    """
    calc = phi.calculus
    k = phi.degree - 1
    if k < 0:
        raise ValueError("cannot extend below degree 0")
    sign = calc.field.one if (k + 1) % 2 == 0 else -calc.field.one
    vals = {}
    for w in calc.words(k):
        wform = Form(calc, {w: calc.presentation.one()})
        value = nabla(phi.act(wform))
        dw = calc.d(wform)
        if dw:
            value = value + sign * phi(dw)
        vals[w] = value
    return IntegralForm(calc, k, vals)


def curvature(phi: IntegralForm) -> AlgebraElement:
    """nabla(nabla_1(phi)) on degree-2 integral forms; zero means flat."""
    if phi.degree != 2:
        raise ValueError("curvature is computed on degree-2 integral forms")
    return nabla(nabla_ext(phi))

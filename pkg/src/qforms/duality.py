"""Degree-reversing isomorphisms between the form and integral complexes.

For a calculus of top degree N the duality data assigns to every canonical
word w of degree k a pair (scalar, target word) of degree N-k, defining a
right-module isomorphism

    iso_k : (forms of degree k) -> (integral forms of degree N-k),
    iso_k(w * a) = scalar * dual_basis(target) . a,

with degree N-k = 0 read as the algebra itself.  The family transports the
wedge product onto integral forms, yielding in particular the finite
"skeletal" multiplication table of the basis functionals, and the engine
checks commutativity of every square

    iso_(k+1) . d = nabla_(N-k-1) . iso_k .
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

from .algebra import AlgebraElement
from .forms import Calculus, Form, Word
from .integrals import IntegralForm, nabla, nabla_ext


class Duality:
    """Duality data plus the operations it induces."""

    def __init__(self, calculus: Calculus, level_maps: Sequence[Mapping[Word, tuple]]):
        self.calculus = calculus
        n = calculus.top_degree
        if len(level_maps) != n + 1:
            raise ValueError(f"expected {n + 1} level maps")
        self.level_maps = []
        for k, mapping in enumerate(level_maps):
            words = calculus.words(k)
            if set(mapping) != set(words):
                raise ValueError(f"level {k} must map exactly the degree-{k} words")
            targets = set()
            for w, (s, t) in mapping.items():
                if not s:
                    raise ValueError(f"level {k} image of {w} has zero scalar")
                if len(t) != n - k:
                    raise ValueError(f"level {k} image of {w} has wrong degree")
                targets.add(tuple(t))
            if len(targets) != len(words):
                raise ValueError(f"level {k} map is not invertible")
            self.level_maps.append({tuple(w): (s, tuple(t)) for w, (s, t) in mapping.items()})

    @property
    def top(self) -> int:
        return self.calculus.top_degree

    # -- the isomorphisms ---------------------------------------------------------

    def apply(self, x, level: Optional[int] = None):
        """Image of a degree-``level`` form (or algebra element, level 0)
        under the duality map; the top level lands in the algebra."""
        calc = self.calculus
        if isinstance(x, AlgebraElement):
            x = calc.from_element(x)
        if level is None:
            level = x.degree()  # raises on mixed or zero input
        if level < 0 or level > self.top:
            raise ValueError(f"level {level} out of range")
        mapping = self.level_maps[level]
        out_degree = self.top - level
        vals: dict = {}
        for w, r in calc.right_coefficients(x).items():
            s, t = mapping[w]
            # iso(w * r) = s * dual_basis(t) . r, and (dual . r)(t) = twist_t^-1(r)
            add = calc.word_twist(t, r, inverse=True).scale(s)
            prev = vals.get(t)
            val = add if prev is None else prev + add
            if val:
                vals[t] = val
            else:
                vals.pop(t, None)
        result = IntegralForm(calc, out_degree, vals)
        return result.element() if out_degree == 0 else result

    def lift(self, y, level: Optional[int] = None) -> Form:
        """Inverse isomorphism: integral form (or algebra element, read at
        the top level) back to the form side."""
        calc = self.calculus
        if isinstance(y, AlgebraElement):
            y = IntegralForm(calc, 0, {(): y})
        if level is None:
            level = self.top - y.degree
        if not 0 <= level <= self.top:
            raise ValueError(f"level {level} out of range")
        if y.degree != self.top - level:
            raise ValueError("integral form degree does not match level")
        mapping = self.level_maps[level]
        rc = {}
        one = calc.field.one
        for w, (s, t) in mapping.items():
            v = y.values.get(t)
            if v is not None:
                rc[w] = calc.word_twist(t, v).scale(one / s)
        return calc.from_right_coefficients(rc)

    # -- transported product ---------------------------------------------------------

    def transported_mul(self, x: IntegralForm, y: IntegralForm):
        """Product of integral forms transported through the isomorphisms.

        The lifts multiply in the form algebra; when their degrees overflow
        the top degree the product is zero (returned as None).
        """
        jx = self.top - x.degree
        jy = self.top - y.degree
        if jx + jy > self.top:
            return None
        prod = self.lift(x) * self.lift(y)
        if prod.is_zero():
            return None
        return self.apply(prod, level=jx + jy)

    def skeletal_basis(self, names: Sequence[tuple]) -> list[tuple]:
        """Resolve (name, word) pairs to (name, IntegralForm) basis entries."""
        from .integrals import dual_basis
        return [(name, dual_basis(self.calculus, w)) for name, w in names]

    def skeletal_table(self, names: Sequence[tuple]) -> list[list]:
        """Multiplication table over the named dual-basis functionals.

        Entries are None (zero) or (scalar, name) pairs; a degree-0 result
        c*1 is reported as c times the top functional, whose name must be
        first in ``names`` (the customary identification of the unit).
        """
        basis = self.skeletal_basis(names)
        word_names = {w: name for name, w in names}
        unit_name = names[0][0]
        table = []
        for _, x in basis:
            row = []
            for _, y in basis:
                row.append(self._classify(self.transported_mul(x, y), word_names, unit_name))
            table.append(row)
        return table

    def _classify(self, product, word_names, unit_name):
        if product is None:
            return None
        if isinstance(product, AlgebraElement):
            if product.is_zero():
                return None
            terms = product.terms
            unit = (0,) * len(self.calculus.presentation.generators)
            if set(terms) != {unit}:
                raise ValueError("degree-0 product is not a scalar")
            return (terms[unit], unit_name)
        if product.is_zero():
            return None
        (w, v), = product.values.items()
        unit = (0,) * len(self.calculus.presentation.generators)
        if set(v.terms) != {unit}:
            raise ValueError("product is not a scalar multiple of a basis functional")
        return (v.terms[unit], word_names[w])

    # -- diagram commutativity ----------------------------------------------------------

    def square_defect(self, x, level: int):
        """Both paths around the square at ``level`` and their difference.

        Returns (via_d, via_nabla) where via_d = iso_(level+1)(d x) and
        via_nabla is nabla applied after iso_level; equality for all x is
        the commutativity of the duality diagram.
        """
        calc = self.calculus
        if isinstance(x, AlgebraElement):
            x = calc.from_element(x)
        via_d = self.apply(calc.d(x), level=level + 1)
        image = self.apply(x, level=level)
        if level == self.top - 1:
            via_nabla = nabla(image)
        else:
            via_nabla = nabla_ext(image)
            if via_nabla.degree == 0:
                via_nabla = via_nabla.element()
        return via_d, via_nabla


def surjectivity_witness(bundle, k: int, l: int, m: int):
    """Preimage exhibiting the top generator grid under the hom-connection.

    For the quantum Euclidean group preset the degree-1 integral form

        f = q^(-k+2m+2l) / [m+1]_(q^2) * xi_minus . (v^(k-2) zs^l z^(m+1))

    satisfies nabla(f) = v^k zs^l z^m; returns (f, target).
    """
    from .integrals import dual_basis
    field = bundle.field
    pres = bundle.presentation
    if l < 0 or m < 0:
        raise ValueError("zs and z exponents must be nonnegative")
    target = pres.monomial((k, l, m))
    scalar = field.q(-k + 2 * m + 2 * l) / field.qint(m + 1, 2)
    carrier = pres.monomial((k - 2, l, m + 1))
    f = dual_basis(bundle.calculus, (0,)).right_action(carrier).scale(scalar)
    return f, target


def exactness_witness(bundle, k: int, l: int, m: int):
    """Degree-2 primitive for the top-degree monomial grid.

    For l, m >= 1 the 2-form  u = 1/[m]_(q^2) * v^k zs^(l-1) z^m dv dzs
    satisfies  d(u) = v^k zs^(l-1) z^(m-1) dz dv dzs; returns (u, d-target).
    """
    if l < 1 or m < 1:
        raise ValueError("witness requires l, m >= 1")
    field = bundle.field
    pres = bundle.presentation
    calc = bundle.calculus
    dv = calc.d(pres.gen("v"))
    dz = calc.d(pres.gen("z"))
    dzs = calc.d(pres.gen("zs"))
    u = (pres.monomial((k, l - 1, m)) * (dv * dzs)).scale(
        field.one / field.qint(m, 2))
    target = pres.monomial((k, l - 1, m - 1)) * (dz * (dv * dzs))
    return u, target

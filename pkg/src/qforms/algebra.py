"""Algebras presented by ordered generators with scalar commutation relations.

A presentation fixes an ordered list of generators g_0 < g_1 < ... and, for
every pair j > i, a nonzero scalar c[j,i] with

    g_j * g_i = c[j,i] * g_i * g_j.

Because every relation is an invertible scalar rewrite, the rewrite system is
confluent and each element has a unique normal form: a linear combination of
ordered monomials g_0^e0 * g_1^e1 * ... (exponents of invertible generators
may be negative).  Optionally the presentation carries a Z-grading (one
integer per generator) and a star structure sending each generator to a
scalar multiple of a signed power of a generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence

Monomial = tuple  # exponent vector, one integer per generator


@dataclass(frozen=True)
class GeneratorSpec:
    """One generator: display name, invertibility, Z-degree, star image.

    ``star`` is None (no star structure for this generator) or a triple
    ``(coefficient, target_index, exponent)`` meaning g* = coefficient *
    g_target^exponent with exponent in {+1, -1}.
    """

    name: str
    invertible: bool = False
    degree: int = 0
    star: Optional[tuple] = None


class Presentation:
    """An ordered q-commutation presentation over a scalar domain."""

    def __init__(self, generators: Sequence[GeneratorSpec],
                 commutation: Mapping[tuple, object], field):
        self.generators = tuple(generators)
        self.field = field
        n = len(self.generators)
        self.commutation = {}
        for j in range(n):
            for i in range(j):
                if (j, i) not in commutation:
                    raise ValueError(f"missing commutation scalar for pair ({j}, {i})")
                self.commutation[(j, i)] = commutation[(j, i)]
        self.names = tuple(g.name for g in self.generators)

    # -- element constructors -------------------------------------------------

    def element(self, terms: Mapping[Monomial, object]) -> "AlgebraElement":
        return AlgebraElement(self, terms)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        n = len(self.generators)
        return AlgebraElement(self, {(0,) * n: self.field.one})

    def monomial(self, exponents: Sequence[int], coeff=None) -> "AlgebraElement":
        exponents = tuple(exponents)
        if len(exponents) != len(self.generators):
            raise ValueError("exponent vector has wrong length")
        for g, e in zip(self.generators, exponents):
            if e < 0 and not g.invertible:
                raise ValueError(f"negative exponent on non-invertible generator {g.name}")
        if coeff is None:
            coeff = self.field.one
        return AlgebraElement(self, {exponents: coeff})

    def gen(self, key) -> "AlgebraElement":
        idx = self.names.index(key) if isinstance(key, str) else key
        exps = [0] * len(self.generators)
        exps[idx] = 1
        return self.monomial(exps)

    def scalar(self, c) -> "AlgebraElement":
        n = len(self.generators)
        return AlgebraElement(self, {(0,) * n: c})

    # -- monomial arithmetic ---------------------------------------------------

    def reorder_scalar(self, left: Monomial, right: Monomial):
        """Scalar picked up when normalizing g^left * g^right.

        Moving g_i^right[i] leftwards past g_j^left[j] for every pair j > i
        contributes c[j,i] ** (left[j] * right[i]).
        """
        s = self.field.one
        for (j, i), c in self.commutation.items():
            k = left[j] * right[i]
            if k:
                s = s * c ** k
        return s

    def mul_monomials(self, left: Monomial, right: Monomial):
        merged = tuple(a + b for a, b in zip(left, right))
        return self.reorder_scalar(left, right), merged

    # -- validation -------------------------------------------------------------

    def has_star(self) -> bool:
        return all(g.star is not None for g in self.generators)

    def validate(self) -> list[str]:
        """Structural report: empty list when the presentation is consistent.

        Checks that every commutation scalar is nonzero (relations must be
        invertible rewrites), that star is an involution on generators, and
        that star is compatible with each relation: applying star to both
        sides of g_j g_i = c g_i g_j must give equal normal forms.
        """
        problems = []
        for (j, i), c in self.commutation.items():
            if not c:
                problems.append(
                    f"non-invertible relation: c[{self.names[j]},{self.names[i]}] = 0")
        if problems:
            return problems
        if self.has_star():
            for idx in range(len(self.generators)):
                g = self.gen(idx)
                if g.star().star() != g:
                    problems.append(f"star is not involutive on {self.names[idx]}")
            for (j, i), c in self.commutation.items():
                lhs = (self.gen(j) * self.gen(i)).star()
                rhs = (c * self.gen(i) * self.gen(j)).star()
                if lhs != rhs:
                    problems.append(
                        "star incompatible with relation "
                        f"{self.names[j]}*{self.names[i]}")
        return problems

    def __repr__(self):
        return f"Presentation({', '.join(self.names)})"


class AlgebraElement:
    """Normal-form linear combination of ordered monomials.

    Stored as a map from exponent vectors to nonzero scalars.  Elements are
    immutable in use; all operations return fresh values.
    """

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation: Presentation, terms: Mapping[Monomial, object]):
        self.presentation = presentation
        self.terms = {m: c for m, c in terms.items() if c}

    def _check(self, other: "AlgebraElement"):
        if self.presentation is not other.presentation:
            raise ValueError("elements over different presentations")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, monomial: Monomial):
        return self.terms.get(tuple(monomial), self.presentation.field.zero)

    # -- ring structure ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, self.presentation.field.zero) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return AlgebraElement(self.presentation, out)

    def __neg__(self):
        return AlgebraElement(self.presentation, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            pres = self.presentation
            out: dict = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    s, m = pres.mul_monomials(m1, m2)
                    v = out.get(m, pres.field.zero) + c1 * c2 * s
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
            return AlgebraElement(pres, out)
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "AlgebraElement":
        if not c:
            return AlgebraElement(self.presentation, {})
        return AlgebraElement(self.presentation, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = self.presentation.one()
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "AlgebraElement":
        """Inverse of a single invertible monomial term."""
        if len(self.terms) != 1:
            raise ValueError("only monomial elements can be inverted")
        (m, c), = self.terms.items()
        for g, e in zip(self.presentation.generators, m):
            if e and not g.invertible:
                raise ValueError(f"generator {g.name} is not invertible")
        minv = tuple(-e for e in m)
        s = self.presentation.reorder_scalar(m, minv)
        # m * minv = s * 1, so (c*m)^-1 = 1/(c*s) * minv
        one = self.presentation.field.one
        return AlgebraElement(self.presentation, {minv: one / (c * s)})

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.presentation is other.presentation and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.presentation), tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    # -- star, grading, diagonal automorphisms ----------------------------------

    def star(self) -> "AlgebraElement":
        """Antimultiplicative involution; scalars are fixed (q is real)."""
        pres = self.presentation
        if not pres.has_star():
            raise ValueError("presentation has no star structure")
        out = pres.zero()
        n = len(pres.generators)
        for m, c in self.terms.items():
            term = pres.scalar(c)
            # (g_0^e0 ... g_k^ek)* = (g_k*)^ek ... (g_0*)^e0
            for idx in range(n - 1, -1, -1):
                e = m[idx]
                if not e:
                    continue
                coeff, tgt, p = pres.generators[idx].star
                img = pres.gen(tgt) ** (p * e)
                term = term * (coeff ** e * img)
            out = out + term
        return out

    def degree(self) -> int:
        """Z-degree of a homogeneous nonzero element."""
        degs = {self._monomial_degree(m) for m in self.terms}
        if not degs:
            raise ValueError("zero element has no degree")
        if len(degs) > 1:
            raise ValueError("inhomogeneous element")
        return degs.pop()

    def _monomial_degree(self, m: Monomial) -> int:
        return sum(e * g.degree for e, g in zip(m, self.presentation.generators))

    def is_homogeneous(self) -> bool:
        return len({self._monomial_degree(m) for m in self.terms}) <= 1

    def homogeneous_parts(self) -> list[tuple[int, "AlgebraElement"]]:
        """Split into (degree, part) pairs, degrees ascending."""
        buckets: dict[int, dict] = {}
        for m, c in self.terms.items():
            buckets.setdefault(self._monomial_degree(m), {})[m] = c
        return [(d, AlgebraElement(self.presentation, t))
                for d, t in sorted(buckets.items())]

    def scaled_generators(self, scales: Sequence) -> "AlgebraElement":
        """Diagonal automorphism g_i -> scales[i] * g_i applied to the element."""
        for s in scales:
            if not s:
                raise ValueError("automorphism scale must be nonzero")
        out = {}
        for m, c in self.terms.items():
            f = c
            for s, e in zip(scales, m):
                if e:
                    f = f * s ** e
            out[m] = f
        return AlgebraElement(self.presentation, out)

    def __repr__(self):
        from .grammar import format_value
        return f"<{format_value(self)}>"


def _is_scalar(x) -> bool:
    from fractions import Fraction
    from .scalars import RatFunc
    return isinstance(x, (int, Fraction, RatFunc))


def diagonal_automorphism(scales: Sequence) -> Callable[[AlgebraElement], AlgebraElement]:
    """The algebra automorphism determined by per-generator scales."""
    def apply(a: AlgebraElement) -> AlgebraElement:
        return a.scaled_generators(scales)
    return apply

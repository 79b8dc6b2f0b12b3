"""Differential graded algebra over a presented algebra.

The calculus is generated as a free left module in each degree by strictly
ascending words in a fixed ordered set of basis one-forms b_0 < b_1 < ...
Each basis form carries a diagonal twist automorphism s_i of the algebra,
and the bimodule structure is

    b_i * a = s_i(a) * b_i.

Words reorder through scalar wedge rules b_j b_i = wedge[j,i] * b_i b_j
(j > i) with b_i^2 = 0, so degree k has the ascending k-letter words as a
basis and the top degree equals the number of basis forms.

The differential is determined by its values on algebra generators and on
basis one-forms, extended by the graded Leibniz rule; the twisted partial
derivatives are the left coefficients of d on degree zero,

    d(a) = sum_i partial_i(a) * b_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Optional, Sequence

from .algebra import AlgebraElement, Presentation, _is_scalar

Word = tuple  # strictly ascending tuple of basis-form indices


@dataclass(frozen=True)
class BasisFormSpec:
    """One basis one-form: name, twist scales (one nonzero scalar per
    algebra generator), optional star image ``(coefficient, target_index)``."""

    name: str
    twist: tuple
    star: Optional[tuple] = None


class Calculus:
    """A differential calculus: form basis, wedge rules, differential data.

    ``d_generators`` maps each algebra generator index to the degree-1 terms
    of its differential, ``d_forms`` maps each basis-form index to the
    degree-2 terms of d(b_i); both use {word: AlgebraElement} maps.
    ``hom_constants`` are the per-form scalars of the canonical
    hom-connection, if configured.
    """

    def __init__(self, presentation: Presentation, basis: Sequence[BasisFormSpec],
                 wedge: Mapping[tuple, object],
                 d_generators: Sequence[Mapping[Word, AlgebraElement]],
                 d_forms: Sequence[Mapping[Word, AlgebraElement]],
                 hom_constants: Optional[Sequence] = None):
        self.presentation = presentation
        self.field = presentation.field
        self.basis = tuple(basis)
        n = len(self.basis)
        self.wedge = {}
        for j in range(n):
            for i in range(j):
                if (j, i) not in wedge:
                    raise ValueError(f"missing wedge scalar for pair ({j}, {i})")
                self.wedge[(j, i)] = wedge[(j, i)]
        self._d_generators = tuple(dict(m) for m in d_generators)
        self._d_forms = tuple(dict(m) for m in d_forms)
        self.hom_constants = tuple(hom_constants) if hom_constants is not None else None
        self.form_names = tuple(b.name for b in self.basis)
        self._d_power_cache: dict = {}
        self._d_word_cache: dict = {}
        self._d_monomial_cache: dict = {}
        self._word_scale_cache: dict = {}

    # -- basic structure -------------------------------------------------------

    @property
    def top_degree(self) -> int:
        return len(self.basis)

    def words(self, k: int) -> list[Word]:
        """Canonical ascending words of degree k."""
        return list(combinations(range(len(self.basis)), k))

    def zero(self) -> "Form":
        return Form(self, {})

    def form(self, terms: Mapping[Word, AlgebraElement]) -> "Form":
        return Form(self, terms)

    def basis_form(self, key) -> "Form":
        idx = self.form_names.index(key) if isinstance(key, str) else key
        return Form(self, {(idx,): self.presentation.one()})

    def from_element(self, a: AlgebraElement) -> "Form":
        return Form(self, {(): a})

    # -- twists ------------------------------------------------------------------

    def twist(self, i: int, a: AlgebraElement) -> AlgebraElement:
        return a.scaled_generators(self.basis[i].twist)

    def twist_inv(self, i: int, a: AlgebraElement) -> AlgebraElement:
        one = self.field.one
        return a.scaled_generators([one / s for s in self.basis[i].twist])

    def word_twist(self, word: Word, a: AlgebraElement, inverse: bool = False) -> AlgebraElement:
        """Composite twist of a word (diagonal twists commute, so the
        per-generator scales simply multiply across the letters)."""
        if not word:
            return a
        key = (word, inverse)
        scales = self._word_scale_cache.get(key)
        if scales is None:
            one = self.field.one
            acc = [one] * len(self.presentation.generators)
            for i in word:
                for g, s in enumerate(self.basis[i].twist):
                    acc[g] = acc[g] * (one / s if inverse else s)
            scales = tuple(acc)
            self._word_scale_cache[key] = scales
        return a.scaled_generators(scales)

    # -- wedge words --------------------------------------------------------------

    def sort_word(self, word: Sequence[int]):
        """Ascending normal form of a word: (scalar, word) or None when the
        word contains a repeated letter and therefore vanishes."""
        letters = list(word)
        scalar = self.field.one
        # insertion sort; each adjacent transposition picks up a wedge scalar
        for t in range(1, len(letters)):
            p = t
            while p > 0 and letters[p - 1] >= letters[p]:
                if letters[p - 1] == letters[p]:
                    return None
                scalar = scalar * self.wedge[(letters[p - 1], letters[p])]
                letters[p - 1], letters[p] = letters[p], letters[p - 1]
                p -= 1
        return scalar, tuple(letters)

    # -- product -------------------------------------------------------------------

    def mul(self, u: "Form", w: "Form") -> "Form":
        if u.calculus is not w.calculus:
            raise ValueError("forms over different calculi")
        out: dict = {}
        for w1, c1 in u.terms.items():
            for w2, c2 in w.terms.items():
                # push the right coefficient left through the letters of w1
                c = c1 * self.word_twist(w1, c2)
                if not c:
                    continue
                sorted_ = self.sort_word(w1 + w2)
                if sorted_ is None:
                    continue
                s, word = sorted_
                prev = out.get(word)
                val = c.scale(s) if prev is None else prev + c.scale(s)
                if val:
                    out[word] = val
                else:
                    out.pop(word, None)
        return Form(self, out)

    # -- differential -----------------------------------------------------------------

    def d(self, x) -> "Form":
        """Exterior differential of an algebra element or a form."""
        if isinstance(x, AlgebraElement):
            return self._d_element(x)
        if isinstance(x, Form):
            out = self.zero()
            for word, c in x.terms.items():
                dc = self._d_element(c)
                wform = Form(self, {word: self.presentation.one()})
                out = out + self.mul(dc, wform)
                dword = self._d_word(word)
                if dword:
                    out = out + self.mul(self.from_element(c), dword)
            return out
        raise TypeError(f"cannot differentiate {type(x).__name__}")

    def _d_element(self, a: AlgebraElement) -> "Form":
        out = self.zero()
        for m, c in a.terms.items():
            out = out + self._d_monomial(m).scale(c)
        return out

    def _d_monomial(self, m) -> "Form":
        # Leibniz over the generator powers of the ordered monomial
        cached = self._d_monomial_cache.get(m)
        if cached is not None:
            return cached
        pres = self.presentation
        total = self.zero()
        n = len(pres.generators)
        for idx in range(n):
            e = m[idx]
            if not e:
                continue
            left = list(m)
            right = list(m)
            for t in range(idx, n):
                left[t] = 0
            for t in range(idx + 1):
                right[t] = 0
            right[idx] = 0
            left_elt = pres.monomial(left) if any(left) else None
            right_elt = pres.monomial(right) if any(right) else None
            piece = self._d_gen_power(idx, e)
            if left_elt is not None:
                piece = self.mul(self.from_element(left_elt), piece)
            if right_elt is not None:
                piece = self.mul(piece, self.from_element(right_elt))
            total = total + piece
        self._d_monomial_cache[m] = total
        return total

    def _d_gen_power(self, idx: int, e: int) -> "Form":
        key = (idx, e)
        cached = self._d_power_cache.get(key)
        if cached is not None:
            return cached
        pres = self.presentation
        g = pres.gen(idx)
        if e == 0:
            out = self.zero()
        elif e == 1:
            out = Form(self, self._d_generators[idx])
        elif e > 1:
            # d(g^e) = d(g^(e-1)) g + g^(e-1) dg
            prev = self._d_gen_power(idx, e - 1)
            out = self.mul(prev, self.from_element(g)) + \
                self.mul(self.from_element(g ** (e - 1)), self._d_gen_power(idx, 1))
        elif e == -1:
            # 0 = d(g g^-1) forces d(g^-1) = -g^-1 dg g^-1
            ginv = self.from_element(g.inverse())
            dg = self._d_gen_power(idx, 1)
            out = self.mul(self.mul(ginv, dg), ginv).scale(-self.field.one)
        else:
            prev = self._d_gen_power(idx, e + 1)
            ginv = self.from_element(g.inverse())
            out = self.mul(prev, ginv) + \
                self.mul(self.from_element(g ** (e + 1)), self._d_gen_power(idx, -1))
        self._d_power_cache[key] = out
        return out

    def _d_word(self, word: Word) -> "Form":
        if not word:
            return self.zero()
        cached = self._d_word_cache.get(word)
        if cached is not None:
            return cached
        head, rest = word[0], word[1:]
        out = self.mul(Form(self, self._d_forms[head]),
                       Form(self, {rest: self.presentation.one()}))
        drest = self._d_word(rest)
        if drest:
            out = out + self.mul(self.basis_form(head), drest).scale(-self.field.one)
        self._d_word_cache[word] = out
        return out

    def partial(self, i: int, a: AlgebraElement) -> AlgebraElement:
        """Twisted partial derivative: the left coefficient of b_i in d(a)."""
        return self._d_element(a).coefficient((i,))

    # -- right-coefficient representation -----------------------------------------

    def right_coefficients(self, u: "Form") -> dict[Word, AlgebraElement]:
        """Rewrite u = sum_w c_w * w as sum_w w * r_w via inverse twists."""
        return {w: self.word_twist(w, c, inverse=True) for w, c in u.terms.items()}

    def from_right_coefficients(self, rc: Mapping[Word, AlgebraElement]) -> "Form":
        return Form(self, {w: self.word_twist(w, r) for w, r in rc.items()})

    # -- skew-derivation constants ---------------------------------------------------

    def skew_constant(self, i: int):
        """The scalar k_i with twist_i^-1 . partial_i . twist_i = k_i partial_i.

        Derived by comparison on every generator; two twisted derivations that
        agree on generators agree everywhere, so this determines the operator
        identity.  Raises ValueError when no consistent scalar exists.
        """
        pres = self.presentation
        candidate = None
        for idx in range(len(pres.generators)):
            g = pres.gen(idx)
            rhs = self.partial(i, g)
            lhs = self.twist_inv(i, self.partial(i, self.twist(i, g)))
            if not rhs:
                if lhs:
                    raise ValueError(
                        f"no skew constant for form {self.form_names[i]}: "
                        f"conjugated derivative is nonzero on {pres.names[idx]}")
                continue
            m, c = next(iter(rhs.terms.items()))
            ratio = lhs.coefficient(m) / c
            if lhs != rhs.scale(ratio):
                raise ValueError(
                    f"no skew constant for form {self.form_names[i]}: "
                    f"mismatch on generator {pres.names[idx]}")
            if candidate is None:
                candidate = ratio
            elif candidate != ratio:
                raise ValueError(
                    f"inconsistent skew constants for form {self.form_names[i]}")
        if candidate is None:
            raise ValueError(
                f"partial derivative along {self.form_names[i]} vanishes on all generators")
        return candidate

    # -- density -------------------------------------------------------------------

    def density_report(self, witnesses: Mapping[int, Sequence[tuple]]) -> list[str]:
        """Check sum_t a_t * partial_k(b_t) = delta_ik for the given witness
        pairs; returns a list of failure descriptions (empty = dense)."""
        problems = []
        n = len(self.basis)
        for i in range(n):
            pairs = witnesses.get(i, [])
            if not pairs:
                problems.append(f"no density witnesses for {self.form_names[i]}")
                continue
            for k in range(n):
                total = self.presentation.zero()
                for a, b in pairs:
                    total = total + a * self.partial(k, b)
                expected = self.presentation.one() if i == k else self.presentation.zero()
                if total != expected:
                    problems.append(
                        f"density witness failure at (i={self.form_names[i]}, "
                        f"k={self.form_names[k]})")
        return problems

    # -- star ---------------------------------------------------------------------

    def has_star(self) -> bool:
        return self.presentation.has_star() and all(b.star is not None for b in self.basis)

    def star(self, u: "Form") -> "Form":
        """Graded antimultiplicative star: (a b_1 ... b_k)* = b_k* ... b_1* a*."""
        if not self.has_star():
            raise ValueError("calculus has no star structure")
        out = self.zero()
        for word, c in u.terms.items():
            term = self.from_element(self.presentation.one())
            for letter in reversed(word):
                coeff, tgt = self.basis[letter].star
                term = self.mul(term, self.basis_form(tgt).scale(coeff))
            term = self.mul(term, self.from_element(c.star()))
            out = out + term
        return out

    def __repr__(self):
        return f"Calculus({', '.join(self.form_names)} over {self.presentation!r})"


class Form:
    """Graded element: map from ascending basis words to left coefficients.

    The empty word holds the degree-0 part.  Mixed-degree forms are allowed;
    operations that need a single degree require homogeneity.
    """

    __slots__ = ("calculus", "terms")

    def __init__(self, calculus: Calculus, terms: Mapping[Word, AlgebraElement]):
        self.calculus = calculus
        self.terms = {w: c for w, c in terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, word: Word) -> AlgebraElement:
        return self.terms.get(tuple(word), self.calculus.presentation.zero())

    def degree(self) -> int:
        degs = {len(w) for w in self.terms}
        if not degs:
            raise ValueError("zero form has no degree")
        if len(degs) > 1:
            raise ValueError("mixed-degree form")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if self.calculus is not other.calculus:
            raise ValueError("forms over different calculi")
        out = dict(self.terms)
        for w, c in other.terms.items():
            prev = out.get(w)
            val = c if prev is None else prev + c
            if val:
                out[w] = val
            else:
                out.pop(w, None)
        return Form(self.calculus, out)

    def __neg__(self):
        return Form(self.calculus, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Form):
            return self.calculus.mul(self, other)
        if isinstance(other, AlgebraElement):
            return self.calculus.mul(self, self.calculus.from_element(other))
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.calculus.mul(self.calculus.from_element(other), self)
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def scale(self, s) -> "Form":
        if not s:
            return Form(self.calculus, {})
        return Form(self.calculus, {w: c.scale(s) for w, c in self.terms.items()})

    def star(self) -> "Form":
        return self.calculus.star(self)

    def d(self) -> "Form":
        return self.calculus.d(self)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.calculus is other.calculus and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.calculus), tuple(sorted((w, tuple(sorted(c.terms.items())))
                                                     for w, c in self.terms.items()))))

    def __repr__(self):
        from .grammar import format_value
        return f"<{format_value(self)}>"

"""The verification suite: a registry of named, seeded, exact checks.

Every check replays a family of identities of the engine's presets (or the
generic identities of a user-supplied presentation) in exact arithmetic and
reports pass/fail with a rendered counterexample on failure.  Checks are
deterministic functions of (bundle, seed, trials, max_exp); the rng for each
check is derived from the seed and the check name, so reports are
byte-identical for identical configurations.

``run_suite`` executes a selection against a preset or presentation file,
optionally followed by a full re-run over exact rationals at a specialized
value of q.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Callable, Optional

from .algebra import AlgebraElement
from .duality import exactness_witness, surjectivity_witness
from .forms import Form
from .integrals import IntegralForm, curvature, dual_basis, nabla, nabla_ext
from .grammar import format_value
from .presets import Embedding, PresetBundle, build_cq, build_eq2, build_preset, \
    check_restriction
from .scalars import RationalScalars


@dataclass
class CheckResult:
    """Outcome of one named check."""

    name: str
    status: str  # pass | fail | error
    details: str
    anchor: str

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status,
                "details": self.details, "anchor": self.anchor}

    def line(self) -> str:
        tag = self.status.upper()
        out = f"{tag:5s} {self.name} [{self.anchor}]"
        if self.details and self.status != "pass":
            out += f" {self.details}"
        return out


@dataclass
class SuiteConfig:
    """Reproducible suite selection; the seed fixes every random element."""

    preset: Optional[str] = "eq2"
    file: Optional[str] = None
    suite: Optional[tuple] = None  # None = all applicable
    seed: int = 7
    trials: int = 100
    max_exp: int = 3
    numeric: Optional[Fraction] = None
    output_json: bool = False


# ---------------------------------------------------------------------------
# random sampling (all deterministic in the supplied rng)
# ---------------------------------------------------------------------------

def _rand_scalar(rng, field):
    num = rng.choice([-3, -2, -1, 1, 2, 3, 5])
    den = rng.choice([1, 1, 2, 3])
    return field.rational(num, den) * field.q(rng.randint(-2, 2))


def _rand_monomial(rng, bundle, max_exp):
    exps = []
    for g in bundle.presentation.generators:
        lo = -max_exp if g.invertible else 0
        exps.append(rng.randint(lo, max_exp))
    return tuple(exps)


def _rand_element(rng, bundle, max_exp, terms=2) -> AlgebraElement:
    out = bundle.presentation.zero()
    for _ in range(terms):
        mono = _rand_monomial(rng, bundle, max_exp)
        out = out + bundle.presentation.monomial(mono, _rand_scalar(rng, bundle.field))
    return out


def _rand_homogeneous(rng, bundle, max_exp) -> AlgebraElement:
    """Random nonzero element homogeneous for the Z-grading."""
    a = _rand_element(rng, bundle, max_exp, terms=3)
    parts = a.homogeneous_parts()
    if not parts:
        return bundle.presentation.one()
    return rng.choice(parts)[1]


def _rand_form(rng, bundle, degree, max_exp) -> Form:
    calc = bundle.calculus
    terms = {}
    for w in calc.words(degree):
        if rng.random() < 0.75:
            terms[w] = _rand_element(rng, bundle, max_exp)
    return calc.form(terms)


def _rand_integral(rng, bundle, degree, max_exp) -> IntegralForm:
    calc = bundle.calculus
    vals = {}
    for w in calc.words(degree):
        if rng.random() < 0.75:
            vals[w] = _rand_element(rng, bundle, max_exp)
    return IntegralForm(calc, degree, vals)


def _monomial_grid(bundle):
    """The deterministic monomial grid attached to the preset."""
    grid = bundle.expected.get("diagram_grid", {})
    lm_lo, lm_hi = grid.get("lm", (0, 2))
    pres = bundle.presentation
    out = []
    if "v" in grid:
        v_lo, v_hi = grid["v"]
        for k in range(v_lo, v_hi + 1):
            for l in range(lm_lo, lm_hi + 1):
                for m in range(lm_lo, lm_hi + 1):
                    out.append(pres.monomial((k, l, m)))
    else:
        for l in range(lm_lo, lm_hi + 1):
            for m in range(lm_lo, lm_hi + 1):
                out.append(pres.monomial((l, m)))
    return out


def _fmt(bundle):
    names = bundle.dual_names

    def fmt(x):
        if x is None:
            return "0"
        return format_value(x, names)
    return fmt


# ---------------------------------------------------------------------------
# the checks
# ---------------------------------------------------------------------------

def _check_normal_form(bundle, cfg, rng):
    pres = bundle.presentation
    fmt = _fmt(bundle)
    problems = pres.validate()
    if problems:
        return False, "; ".join(problems)
    for (j, i), c in pres.commutation.items():
        lhs = pres.gen(j) * pres.gen(i)
        rhs = c * (pres.gen(i) * pres.gen(j))
        if lhs != rhs:
            return False, (f"relation failed for ({pres.names[j]}, {pres.names[i]}): "
                           f"{fmt(lhs)} != {fmt(rhs)}")
    for idx, g in enumerate(pres.generators):
        if g.invertible:
            e = pres.gen(idx)
            if e * e.inverse() != pres.one():
                return False, f"unit relation failed for {g.name}"
    count = 0
    for _ in range(cfg.trials):
        a = _rand_element(rng, bundle, cfg.max_exp)
        b = _rand_element(rng, bundle, cfg.max_exp)
        c = _rand_element(rng, bundle, cfg.max_exp)
        if (a * b) * c != a * (b * c):
            return False, (f"associativity failed on a={fmt(a)}, b={fmt(b)}, "
                           f"c={fmt(c)}")
        count += 1
        # confluence: random bracketing of a letter product
        letters = []
        for _ in range(rng.randint(2, 6)):
            idx = rng.randrange(len(pres.generators))
            power = rng.choice([-1, 1]) if pres.generators[idx].invertible else 1
            letters.append(pres.gen(idx) ** power)
        sequential = pres.one()
        for x in letters:
            sequential = sequential * x
        while len(letters) > 1:
            t = rng.randrange(len(letters) - 1)
            letters[t:t + 2] = [letters[t] * letters[t + 1]]
        if letters[0] != sequential:
            return False, "confluence failed on a random bracketing"
    return True, f"relations, units, associativity and confluence on {count} trials"


def _check_star(bundle, cfg, rng):
    pres = bundle.presentation
    calc = bundle.calculus
    fmt = _fmt(bundle)
    for idx in range(len(pres.generators)):
        g = pres.gen(idx)
        if g.star().star() != g:
            return False, f"star not involutive on {pres.names[idx]}"
    for _ in range(cfg.trials):
        a = _rand_element(rng, bundle, cfg.max_exp)
        b = _rand_element(rng, bundle, cfg.max_exp)
        if a.star().star() != a:
            return False, f"star not involutive on {fmt(a)}"
        if (a * b).star() != b.star() * a.star():
            return False, f"(a*b)* != b* a* on a={fmt(a)}, b={fmt(b)}"
    expected = bundle.expected.get("star_forms")
    if calc.has_star():
        if expected:
            for i, (coeff, tgt) in expected:
                got = calc.star(calc.basis_form(i))
                want = calc.basis_form(tgt).scale(coeff)
                if got != want:
                    return False, (f"star({calc.form_names[i]}) = {fmt(got)}, "
                                   f"expected {fmt(want)}")
        for _ in range(cfg.trials):
            a = _rand_element(rng, bundle, cfg.max_exp)
            if calc.star(calc.d(a)) != calc.d(a.star()):
                return False, f"star(d(a)) != d(star(a)) on a={fmt(a)}"
            k = rng.randint(1, calc.top_degree)
            u = _rand_form(rng, bundle, k, cfg.max_exp)
            if calc.star(calc.star(u)) != u:
                return False, f"star not involutive on the form {fmt(u)}"
    return True, "involution, antimultiplicativity and star-calculus compatibility"


def _check_grading(bundle, cfg, rng):
    fmt = _fmt(bundle)
    shift = bundle.expected.get("partial_degree_shift")
    for _ in range(cfg.trials):
        a = _rand_homogeneous(rng, bundle, cfg.max_exp)
        b = _rand_homogeneous(rng, bundle, cfg.max_exp)
        ab = a * b
        if ab and ab.degree() != a.degree() + b.degree():
            return False, f"degree not additive on a={fmt(a)}, b={fmt(b)}"
        c = _rand_element(rng, bundle, cfg.max_exp, terms=3)
        parts = c.homogeneous_parts()
        total = bundle.presentation.zero()
        for deg, part in parts:
            if not part.is_homogeneous() or (part and part.degree() != deg):
                return False, f"homogeneous_parts returned a bad part for {fmt(c)}"
            total = total + part
        if total != c:
            return False, f"homogeneous_parts do not sum back to {fmt(c)}"
        if shift:
            for i, delta in enumerate(shift):
                da = bundle.calculus.partial(i, a)
                if da and da.degree() != a.degree() + delta:
                    return False, (f"partial {bundle.calculus.form_names[i]} shifts "
                                   f"degree of {fmt(a)} by {da.degree() - a.degree()}, "
                                   f"expected {delta}")
    return True, "additivity, homogeneous split and derivative degree shifts"


def _check_d_squared(bundle, cfg, rng):
    calc = bundle.calculus
    pres = bundle.presentation
    fmt = _fmt(bundle)
    for idx in range(len(pres.generators)):
        if calc.d(calc.d(pres.gen(idx))):
            return False, f"d(d({pres.names[idx]})) != 0"
    for i in range(calc.top_degree):
        if calc.d(calc.d(calc.basis_form(i))):
            return False, f"d(d({calc.form_names[i]})) != 0"
    for _ in range(cfg.trials):
        a = _rand_element(rng, bundle, cfg.max_exp)
        dda = calc.d(calc.d(a))
        if dda:
            return False, f"d^2 != 0 on a={fmt(a)}: d(d(a)) = {fmt(dda)}"
        k = rng.randint(1, max(1, calc.top_degree - 1))
        u = _rand_form(rng, bundle, k, cfg.max_exp)
        if calc.d(calc.d(u)):
            return False, f"d^2 != 0 on the degree-{k} form {fmt(u)}"
    return True, "d.d = 0 on generators, basis forms and random elements"


def _check_twisted_leibniz(bundle, cfg, rng):
    calc = bundle.calculus
    fmt = _fmt(bundle)
    for _ in range(cfg.trials):
        a = _rand_element(rng, bundle, cfg.max_exp)
        b = _rand_element(rng, bundle, cfg.max_exp)
        for i in range(calc.top_degree):
            lhs = calc.partial(i, a * b)
            rhs = calc.partial(i, a) * calc.twist(i, b) + a * calc.partial(i, b)
            if lhs != rhs:
                return False, (f"twisted Leibniz failed for {calc.form_names[i]} on "
                               f"a={fmt(a)}, b={fmt(b)}")
        rc = {(i,): calc.twist_inv(i, calc.partial(i, a))
              for i in range(calc.top_degree)}
        if calc.from_right_coefficients(rc) != calc.d(a):
            return False, (f"left and right expansions of d(a) disagree on a={fmt(a)}")
    return True, "twisted Leibniz rule and both expansions of d"


def _check_skew_constants(bundle, cfg, rng):
    calc = bundle.calculus
    fmt = _fmt(bundle)
    expected = bundle.expected.get("skew_constants")
    derived = []
    for i in range(calc.top_degree):
        derived.append(calc.skew_constant(i))
    if expected is not None:
        for i, (got, want) in enumerate(zip(derived, expected)):
            if got != want:
                return False, (f"skew constant of {calc.form_names[i]} is "
                               f"{fmt(got)}, expected {fmt(want)}")
    if calc.hom_constants is not None:
        for i, (got, want) in enumerate(zip(derived, calc.hom_constants)):
            if got != want:
                return False, (f"derived skew constant {fmt(got)} of "
                               f"{calc.form_names[i]} disagrees with the configured "
                               f"hom-connection constant {fmt(want)}")
    for _ in range(cfg.trials):
        a = _rand_element(rng, bundle, cfg.max_exp)
        for i, k_i in enumerate(derived):
            lhs = calc.twist_inv(i, calc.partial(i, calc.twist(i, a)))
            if lhs != k_i * calc.partial(i, a):
                return False, (f"operator identity for the skew constant of "
                               f"{calc.form_names[i]} failed on a={fmt(a)}")
    return True, "constants " + ", ".join(fmt(c) for c in derived)


def _check_density(bundle, cfg, rng):
    problems = bundle.calculus.density_report(bundle.density_witnesses)
    if problems:
        return False, "; ".join(problems)
    return True, "witness pairs produce the Kronecker delta"


def _eq2_zcoords(bundle):
    pres = bundle.presentation
    calc = bundle.calculus
    v = pres.gen("v")
    vi = bundle.abbreviations["vi"]
    return {
        "v": v, "vi": vi, "z": pres.gen("z"), "zs": pres.gen("zs"),
        "n": bundle.abbreviations["n"], "ns": bundle.abbreviations["ns"],
        "dv": calc.d(v), "dvi": calc.d(vi),
        "dz": calc.d(pres.gen("z")), "dzs": calc.d(pres.gen("zs")),
    }


def _check_omega_z(bundle, cfg, rng):
    calc = bundle.calculus
    q = bundle.field.q
    x = _eq2_zcoords(bundle)
    wm, w0, wp = calc.basis_form(0), calc.basis_form(1), calc.basis_form(2)
    v2 = x["v"] * x["v"]
    vi2 = x["vi"] * x["vi"]
    identities = [
        ("w0 = vi*d(v)", w0, x["vi"] * x["dv"]),
        ("wm = vi^2*d(z)", wm, vi2 * x["dz"]),
        ("wp = (q^-3)*v^2*d(zs)", wp, (v2 * x["dzs"]).scale(q(-3))),
        ("d(z) = v^2*wm", x["dz"], v2 * wm),
        ("d(zs) = (q^3)*vi^2*wp", x["dzs"], (vi2 * wp).scale(q(3))),
        ("wm = vi*d(n) - (q^-1)*n*d(vi)", wm,
         x["vi"] * calc.d(x["n"]) - (x["n"] * x["dvi"]).scale(q(-1))),
        ("wp = (q^-2)*v*d(ns) - (q^-1)*ns*d(v)", wp,
         (x["v"] * calc.d(x["ns"])).scale(q(-2)) - (x["ns"] * x["dv"]).scale(q(-1))),
    ]
    fmt = _fmt(bundle)
    for desc, lhs, rhs in identities:
        if lhs != rhs:
            return False, f"{desc}: {fmt(lhs)} != {fmt(rhs)}"
    return True, f"{len(identities)} coordinate identities"


def _check_rel_z(bundle, cfg, rng):
    q = bundle.field.q
    x = _eq2_zcoords(bundle)
    identities = [
        ("v*dv = (q^2)*dv*v", x["v"] * x["dv"], (x["dv"] * x["v"]).scale(q(2))),
        ("vi*dv = (q^-2)*dv*vi", x["vi"] * x["dv"], (x["dv"] * x["vi"]).scale(q(-2))),
        ("z*dv = (q^-1)*dv*z", x["z"] * x["dv"], (x["dv"] * x["z"]).scale(q(-1))),
        ("zs*dv = (q^-1)*dv*zs", x["zs"] * x["dv"], (x["dv"] * x["zs"]).scale(q(-1))),
        ("v*dz = q*dz*v", x["v"] * x["dz"], (x["dz"] * x["v"]).scale(q(1))),
        ("v*dzs = q*dzs*v", x["v"] * x["dzs"], (x["dzs"] * x["v"]).scale(q(1))),
        ("z*dz = (q^-2)*dz*z", x["z"] * x["dz"], (x["dz"] * x["z"]).scale(q(-2))),
        ("zs*dz = (q^-2)*dz*zs", x["zs"] * x["dz"], (x["dz"] * x["zs"]).scale(q(-2))),
    ]
    fmt = _fmt(bundle)
    for desc, lhs, rhs in identities:
        if lhs != rhs:
            return False, f"{desc}: {fmt(lhs)} != {fmt(rhs)}"
    return True, "all eight coordinate commutation relations"


def _check_wedge_z(bundle, cfg, rng):
    q = bundle.field.q
    x = _eq2_zcoords(bundle)
    zero = bundle.calculus.zero()
    identities = [
        ("d(z)^2 = 0", x["dz"] * x["dz"], zero),
        ("d(v)^2 = 0", x["dv"] * x["dv"], zero),
        ("dv*dvi = 0", x["dv"] * x["dvi"], zero),
        ("dv*dz = -q*dz*dv", x["dv"] * x["dz"], (x["dz"] * x["dv"]).scale(-q(1))),
        ("dv*dzs = -q*dzs*dv", x["dv"] * x["dzs"], (x["dzs"] * x["dv"]).scale(-q(1))),
        ("dz*dzs = -(q^2)*dzs*dz", x["dz"] * x["dzs"],
         (x["dzs"] * x["dz"]).scale(-q(2))),
    ]
    fmt = _fmt(bundle)
    for desc, lhs, rhs in identities:
        if lhs != rhs:
            return False, f"{desc}: {fmt(lhs)} != {fmt(rhs)}"
    return True, "wedge relations in the coordinate differentials"


def _check_hom_leibniz(bundle, cfg, rng):
    calc = bundle.calculus
    fmt = _fmt(bundle)
    one = bundle.field.one
    for _ in range(cfg.trials):
        f = _rand_integral(rng, bundle, 1, cfg.max_exp)
        a = _rand_element(rng, bundle, cfg.max_exp)
        lhs = nabla(f.right_action(a))
        rhs = nabla(f) * a + f(calc.d(a))
        if lhs != rhs:
            return False, (f"hom-connection law failed on f={fmt(f)}, a={fmt(a)}: "
                           f"{fmt(lhs)} != {fmt(rhs)}")
    combos = [(k, l) for k in range(0, calc.top_degree)
              for l in range(0, calc.top_degree - k)]
    per = max(1, cfg.trials // max(1, len(combos)))
    for k, l in combos:
        for _ in range(per):
            phi = _rand_integral(rng, bundle, k + l + 1, cfg.max_exp)
            u = _rand_form(rng, bundle, k, cfg.max_exp) if k else \
                calc.from_element(_rand_element(rng, bundle, cfg.max_exp))
            if u.is_zero():
                continue
            lhs = nabla_ext(phi.act(u))
            sign = one if (k + l) % 2 == 0 else -one
            rhs = nabla_ext(phi).act(u) + phi.act(calc.d(u)).scale(sign) \
                if calc.d(u) else nabla_ext(phi).act(u)
            if lhs != rhs:
                return False, (f"graded law failed at (k={k}, l={l}) on phi={fmt(phi)}, "
                               f"w={fmt(u)}")
    return True, "defining law and graded extension on all degree splits"


def _check_nabla_xi_zero(bundle, cfg, rng):
    calc = bundle.calculus
    fmt = _fmt(bundle)
    for i in range(calc.top_degree):
        xi = dual_basis(calc, (i,))
        value = nabla(xi)
        if value:
            return False, (f"nabla of the dual of {calc.form_names[i]} is {fmt(value)}")
    return True, "hom-connection vanishes on the dual basis"


def _check_phi_actions(bundle, cfg, rng):
    calc = bundle.calculus
    fmt = _fmt(bundle)
    table = bundle.expected["phi_actions"]
    for (src, i), want in sorted(table.items()):
        got = dual_basis(calc, src).act(calc.basis_form(i))
        expected = IntegralForm(calc, len(src) - 1, {}) if want is None else \
            dual_basis(calc, want[1]).scale(want[0])
        if got != expected:
            return False, (f"dual[{_wname(calc, src)}] * {calc.form_names[i]} = "
                           f"{fmt(got)}, expected {fmt(expected)}")
    return True, f"{len(table)} action identities"


def _check_psi_table(bundle, cfg, rng):
    calc = bundle.calculus
    fmt = _fmt(bundle)
    table = bundle.expected["top_actions"]
    for (src, word), want in sorted(table.items()):
        u = calc.form({word: bundle.presentation.one()})
        got = dual_basis(calc, src).act(u)
        expected = dual_basis(calc, want[1]).scale(want[0])
        if got != expected:
            return False, (f"dual[{_wname(calc, src)}] * {_wname(calc, word)} = "
                           f"{fmt(got)}, expected {fmt(expected)}")
    return True, f"{len(table)} top-degree action identities"


def _wname(calc, word):
    return "*".join(calc.form_names[i] for i in word)


def _check_nabla1_values(bundle, cfg, rng):
    calc = bundle.calculus
    fmt = _fmt(bundle)
    for word, want in bundle.expected["nabla1"]:
        got = nabla_ext(dual_basis(calc, word))
        expected = IntegralForm(calc, 1, {}) if want is None else \
            dual_basis(calc, want[1]).scale(want[0])
        if got != expected:
            return False, (f"nabla_1(dual[{_wname(calc, word)}]) = {fmt(got)}, "
                           f"expected {fmt(expected)}")
    return True, "first extension matches on the degree-2 dual basis"


def _check_nabla2_zero(bundle, cfg, rng):
    calc = bundle.calculus
    fmt = _fmt(bundle)
    top = bundle.expected["nabla_top_zero"]
    got = nabla_ext(dual_basis(calc, top))
    if got:
        return False, f"top extension is {fmt(got)}, expected 0"
    return True, "top extension vanishes on the top dual generator"


def _check_flatness(bundle, cfg, rng):
    calc = bundle.calculus
    fmt = _fmt(bundle)
    if calc.top_degree < 2:
        return True, "top degree below 2: nothing to check"
    for w in calc.words(2):
        phi = dual_basis(calc, w)
        if curvature(phi):
            return False, f"curvature nonzero on dual[{_wname(calc, w)}]"
        for _ in range(50):
            a = _rand_element(rng, bundle, cfg.max_exp)
            value = curvature(phi.right_action(a))
            if value:
                return False, (f"curvature nonzero on dual[{_wname(calc, w)}]*"
                               f"({fmt(a)}): {fmt(value)}")
    for _ in range(cfg.trials):
        phi = _rand_integral(rng, bundle, 2, cfg.max_exp)
        if nabla(nabla_ext(phi)):
            return False, f"nabla.nabla_1 != 0 on {fmt(phi)}"
        if calc.top_degree >= 3:
            psi = _rand_integral(rng, bundle, 3, cfg.max_exp)
            if nabla_ext(nabla_ext(psi)):
                return False, f"nabla_1.nabla_2 != 0 on {fmt(psi)}"
    return True, "curvature vanishes on spanning sets and random multiples"


def _check_diagram(bundle, cfg, rng):
    calc = bundle.calculus
    duality = bundle.duality
    fmt = _fmt(bundle)
    count = 0
    for a in _monomial_grid(bundle):
        for level in range(calc.top_degree):
            if level == 0:
                samples = [calc.from_element(a)]
            else:
                samples = [calc.form({w: a}) for w in calc.words(level)]
            for x in samples:
                via_d, via_nabla = duality.square_defect(x, level)
                if via_d != via_nabla:
                    return False, (f"square at level {level} fails on {fmt(x)}: "
                                   f"{fmt(via_d)} != {fmt(via_nabla)}")
                count += 1
    for _ in range(cfg.trials):
        a = _rand_homogeneous(rng, bundle, cfg.max_exp)
        via_d, via_nabla = duality.square_defect(calc.from_element(a), 0)
        if via_d != via_nabla:
            return False, f"level-0 square fails on {fmt(a)}"
        level = rng.randint(1, calc.top_degree - 1) if calc.top_degree > 1 else 0
        u = _rand_form(rng, bundle, level, cfg.max_exp)
        if u.is_zero():
            continue
        via_d, via_nabla = duality.square_defect(u, level)
        if via_d != via_nabla:
            return False, f"level-{level} square fails on {fmt(u)}"
        count += 2
    return True, f"all duality squares commute on {count} samples"


def _check_intermediate(bundle, cfg, rng):
    calc = bundle.calculus
    duality = bundle.duality
    field = bundle.field
    fmt = _fmt(bundle)
    rules = bundle.expected["intermediate"]
    for a in _monomial_grid(bundle):
        deg = a.degree()
        image = nabla_ext(duality.apply(a, level=0))
        for word, idx, sign, shift in rules:
            got = image(calc.form({word: bundle.presentation.one()}))
            want = (sign * field.q(4 * deg + shift)) * calc.partial(idx, a)
            if got != want:
                return False, (f"value on {_wname(calc, word)} for a={fmt(a)}: "
                               f"{fmt(got)} != {fmt(want)}")
    return True, "second-extension values match the twisted derivatives"


def _check_surjectivity(bundle, cfg, rng):
    fmt = _fmt(bundle)
    grid = bundle.expected["surjectivity_grid"]
    lm_lo, lm_hi = grid["lm"]
    count = 0
    if "v" in grid:
        v_lo, v_hi = grid["v"]
        for k in range(v_lo, v_hi + 1):
            for l in range(lm_lo, lm_hi + 1):
                for m in range(lm_lo, lm_hi + 1):
                    f, target = surjectivity_witness(bundle, k, l, m)
                    got = nabla(f)
                    if got != target:
                        return False, (f"witness at ({k},{l},{m}) maps to {fmt(got)}, "
                                       f"expected {fmt(target)}")
                    count += 1
    else:
        for l in range(lm_lo, lm_hi + 1):
            for m in range(lm_lo, lm_hi + 1):
                f = _plane_witness(bundle, l, m)
                if f is None:
                    return False, f"no preimage found for target at ({l},{m})"
                target = bundle.presentation.monomial((l, m))
                if nabla(f) != target:
                    return False, f"preimage at ({l},{m}) fails to map to {fmt(target)}"
                count += 1
    return True, f"hom-connection surjective on {count} grid monomials"


def _plane_witness(bundle, l, m, search_bound=None):
    """Brute-force preimage of zs^l z^m under the plane hom-connection:
    scan monomial right-multiples of the two dual generators."""
    calc = bundle.calculus
    pres = bundle.presentation
    target = pres.monomial((l, m))
    bound = search_bound if search_bound is not None else l + m + 2
    for gen_idx in range(2):
        xi = dual_basis(calc, (gen_idx,))
        for lam in range(bound + 1):
            for mu in range(bound + 1):
                f = xi.right_action(pres.monomial((lam, mu)))
                value = nabla(f)
                if len(value.terms) != 1:
                    continue
                (mono, c), = value.terms.items()
                if mono == (l, m):
                    return f.scale(bundle.field.one / c)
    return None


def _check_exactness(bundle, cfg, rng):
    calc = bundle.calculus
    fmt = _fmt(bundle)
    grid = bundle.expected["exactness_grid"]
    v_lo, v_hi = grid["v"]
    lm_lo, lm_hi = grid["lm"]
    count = 0
    for k in range(v_lo, v_hi + 1):
        for l in range(lm_lo, lm_hi + 1):
            for m in range(lm_lo, lm_hi + 1):
                u, target = exactness_witness(bundle, k, l, m)
                du = calc.d(u)
                if du != target:
                    return False, (f"primitive at ({k},{l},{m}) differentiates to "
                                   f"{fmt(du)}, expected {fmt(target)}")
                if calc.d(du):
                    return False, f"d^2 nonzero on the primitive at ({k},{l},{m})"
                count += 1
    return True, f"top-degree primitives verified on {count} grid points"


def _check_skeletal(bundle, cfg, rng):
    fmt = _fmt(bundle)
    expected = bundle.expected["skeletal"]
    table = bundle.duality.skeletal_table(bundle.skeletal_names)
    names = [name for name, _ in bundle.skeletal_names]
    for r, row in enumerate(table):
        for c, got in enumerate(row):
            want = expected[r][c]
            if got is None and want is None:
                continue
            if got is None or want is None or got[1] != want[1] or got[0] != want[0]:
                def show(entry):
                    if entry is None:
                        return "0"
                    s, nm = entry
                    return nm if s == bundle.field.one else f"({fmt(s)})*{nm}"
                return False, (f"entry ({names[r]}, {names[c]}) = {show(got)}, "
                               f"expected {show(want)}")
    return True, "all 49 products match"


def _check_restriction(bundle, cfg, rng):
    group = build_eq2(bundle.field)
    emb = Embedding(bundle, group)
    fmt = _fmt(bundle)
    q = bundle.field.q
    gcalc = group.calculus
    pres = bundle.presentation
    v2 = group.presentation.monomial((2, 0, 0))
    vm2 = group.presentation.monomial((-2, 0, 0))
    emb_dz = emb.form(bundle.calculus.basis_form(0))
    emb_dzs = emb.form(bundle.calculus.basis_form(1))
    if gcalc.basis_form(0) * v2 != emb_dz.scale(q(-2)):
        return False, "wm*v^2 is not q^-2 times the embedded dz"
    if gcalc.basis_form(2) * vm2 != emb_dzs.scale(q(-1)):
        return False, "wp*v^-2 is not q^-1 times the embedded dzs"
    for _ in range(cfg.trials):
        a = _rand_element(rng, bundle, cfg.max_exp)
        b = _rand_element(rng, bundle, cfg.max_exp)
        if emb.element(a * b) != emb.element(a) * emb.element(b):
            return False, f"embedding not multiplicative on a={fmt(a)}, b={fmt(b)}"
        if emb.element(a.star()) != emb.element(a).star():
            return False, f"embedding does not intertwine star on a={fmt(a)}"
        if emb.form(bundle.calculus.d(a)) != gcalc.d(emb.element(a)):
            return False, f"embedding does not intertwine d on a={fmt(a)}"
        u = _rand_form(rng, bundle, 1, cfg.max_exp)
        w = _rand_form(rng, bundle, 1, cfg.max_exp)
        if emb.form(u * w) != emb.form(u) * emb.form(w):
            return False, "embedding not multiplicative on random one-forms"
        # derivative bridges between the two calculi
        if gcalc.partial(0, emb.element(a) * vm2) != \
                emb.element(bundle.calculus.partial(0, a)).scale(q(2)):
            return False, f"holomorphic derivative bridge fails on a={fmt(a)}"
        if gcalc.partial(2, emb.element(a) * v2) != \
                emb.element(bundle.calculus.partial(1, a)).scale(q(1)):
            return False, f"antiholomorphic derivative bridge fails on a={fmt(a)}"
        f = _rand_integral(rng, bundle, 1, cfg.max_exp)
        problems = check_restriction(emb, f)
        if problems:
            return False, f"restriction failed on f={fmt(f)}: {problems[0]}"
    for f in (dual_basis(bundle.calculus, (0,)),
              dual_basis(bundle.calculus, (0,)).right_action(pres.gen("z"))):
        problems = check_restriction(emb, f)
        if problems:
            return False, f"restriction failed on f={fmt(f)}: {problems[0]}"
    return True, "restricted and intrinsic hom-connections agree through the embedding"


def _core_identity_names():
    return [name for name, _, _, _ in _REGISTRY
            if name not in ("numeric-crosscheck",)]


def _check_numeric(bundle, cfg, rng):
    if not bundle.field.symbolic:
        return True, "already specialized: nothing to cross-check"
    values = [Fraction(7, 5)]
    while True:
        cand = Fraction(rng.randint(2, 9), rng.randint(2, 9))
        if cand not in (0, 1) and cand != values[0]:
            values.append(cand)
            break
    sub_cfg = SuiteConfig(preset=bundle.name, seed=cfg.seed,
                          trials=max(10, cfg.trials // 4), max_exp=cfg.max_exp)
    for q0 in values:
        numeric_bundle = build_preset(bundle.name, RationalScalars(q0))
        for result in _run_checks(numeric_bundle, sub_cfg, _core_identity_names()):
            if result.status != "pass":
                return False, f"at q={q0}: {result.line()}"
        problems = _commute_check(bundle, numeric_bundle, sub_cfg)
        if problems:
            return False, f"at q={q0}: {problems}"
    return True, f"all identities re-verified at q={values[0]} and q={values[1]}"


def _commute_check(bundle, numeric_bundle, cfg) -> Optional[str]:
    """Specialization must commute with the engine operations."""
    rng = random.Random(f"qforms:{cfg.seed}:commute")
    spec = numeric_bundle.field.from_symbolic

    def transport(a, target):
        return target.presentation.element({m: spec(c) for m, c in a.terms.items()})

    calc_s, calc_n = bundle.calculus, numeric_bundle.calculus

    def transport_form(u):
        return calc_n.form({w: transport(c, numeric_bundle) for w, c in u.terms.items()})

    for _ in range(cfg.trials):
        a = _rand_element(rng, bundle, cfg.max_exp)
        b = _rand_element(rng, bundle, cfg.max_exp)
        if transport(a * b, numeric_bundle) != \
                transport(a, numeric_bundle) * transport(b, numeric_bundle):
            return "specialization does not commute with multiplication"
        if transport_form(calc_s.d(a)) != calc_n.d(transport(a, numeric_bundle)):
            return "specialization does not commute with d"
        f = _rand_integral(rng, bundle, 1, cfg.max_exp)
        f_n = IntegralForm(calc_n, 1, {w: transport(v, numeric_bundle)
                                       for w, v in f.values.items()})
        if transport(nabla(f), numeric_bundle) != nabla(f_n):
            return "specialization does not commute with the hom-connection"
        if bundle.duality is not None:
            image_s = bundle.duality.apply(a, level=0)
            image_n = numeric_bundle.duality.apply(transport(a, numeric_bundle), level=0)
            moved = IntegralForm(calc_n, image_s.degree,
                                 {w: transport(v, numeric_bundle)
                                  for w, v in image_s.values.items()})
            if moved != image_n:
                return "specialization does not commute with the duality map"
    return None


# ---------------------------------------------------------------------------
# registry and runner
# ---------------------------------------------------------------------------

def _needs_expected(*keys):
    def applies(bundle):
        return all(k in bundle.expected for k in keys)
    return applies


def _always(bundle):
    return True


_REGISTRY: list[tuple[str, str, Callable, Callable]] = [
    ("normal-form", "algebra.relations", _always, _check_normal_form),
    ("star", "algebra.star", lambda b: b.presentation.has_star(), _check_star),
    ("grading", "algebra.grading", _always, _check_grading),
    ("d-squared", "calculus.nilpotent", _always, _check_d_squared),
    ("twisted-leibniz", "calculus.skew-derivations", _always, _check_twisted_leibniz),
    ("skew-constants", "calculus.skew-constants",
     lambda b: b.calculus.hom_constants is not None, _check_skew_constants),
    ("density", "calculus.density",
     lambda b: bool(b.density_witnesses), _check_density),
    ("omega-z-relations", "coords.frames", _needs_expected("omega_z"), _check_omega_z),
    ("rel-z", "coords.bimodule", _needs_expected("omega_z"), _check_rel_z),
    ("wedge-z", "coords.wedge", _needs_expected("omega_z"), _check_wedge_z),
    ("hom-leibniz", "connection.leibniz",
     lambda b: b.calculus.hom_constants is not None, _check_hom_leibniz),
    ("nabla-xi-zero", "connection.dual-basis",
     lambda b: b.calculus.hom_constants is not None, _check_nabla_xi_zero),
    ("phi-omega-table", "duals.degree2-actions",
     _needs_expected("phi_actions"), _check_phi_actions),
    ("psi-table", "duals.top-actions", _needs_expected("top_actions"), _check_psi_table),
    ("nabla1-values", "complex.first-extension",
     _needs_expected("nabla1"), _check_nabla1_values),
    ("nabla2-zero", "complex.top-extension",
     _needs_expected("nabla_top_zero"), _check_nabla2_zero),
    ("flatness", "complex.curvature",
     lambda b: b.calculus.hom_constants is not None, _check_flatness),
    ("diagram", "poincare.squares", lambda b: b.duality is not None, _check_diagram),
    ("intermediate-identities", "poincare.partials",
     _needs_expected("intermediate"), _check_intermediate),
    ("surjectivity", "integral.onto",
     _needs_expected("surjectivity_grid"), _check_surjectivity),
    ("exactness-h3", "derham.top-exactness",
     _needs_expected("exactness_grid"), _check_exactness),
    ("skeletal-table", "skeletal.products",
     lambda b: b.skeletal_names is not None, _check_skeletal),
    ("cq-restriction", "plane.restriction",
     _needs_expected("restriction"), _check_restriction),
    ("numeric-crosscheck", "numeric.specialization",
     lambda b: b.duality is not None, _check_numeric),
]

CHECK_NAMES = [name for name, _, _, _ in _REGISTRY]


def _run_checks(bundle, cfg: SuiteConfig, names) -> list[CheckResult]:
    results = []
    by_name = {name: (anchor, applies, fn) for name, anchor, applies, fn in _REGISTRY}
    for name in names:
        if name not in by_name:
            raise ValueError(f"unknown check {name!r}")
        anchor, applies, fn = by_name[name]
        if not applies(bundle):
            continue
        rng = random.Random(f"qforms:{cfg.seed}:{name}")
        try:
            ok, details = fn(bundle, cfg, rng)
            results.append(CheckResult(name, "pass" if ok else "fail", details, anchor))
        except Exception as exc:  # a crash is a finding, not a suite abort
            results.append(CheckResult(name, "error", f"{type(exc).__name__}: {exc}",
                                       anchor))
    return results


def load_suite_bundle(cfg: SuiteConfig, field=None):
    from .scalars import SYMBOLIC
    field = field if field is not None else SYMBOLIC
    if cfg.file:
        from .config import load_bundle
        return load_bundle(cfg.file, field)
    return build_preset(cfg.preset or "eq2", field)


def run_suite(cfg: SuiteConfig) -> list[CheckResult]:
    """Execute the selected checks; deterministic for a fixed config.

    With ``cfg.numeric`` set, every selected check is additionally re-run
    over exact rationals at the given q, and a commutation check compares
    specialized symbolic results with the directly computed numeric ones.
    """
    names = list(cfg.suite) if cfg.suite else CHECK_NAMES
    for name in names:
        if name not in CHECK_NAMES:
            raise ValueError(f"unknown check {name!r} (known: {', '.join(CHECK_NAMES)})")
    bundle = load_suite_bundle(cfg)
    results = _run_checks(bundle, cfg, names)
    if cfg.numeric is not None:
        field = RationalScalars(cfg.numeric)
        numeric_bundle = load_suite_bundle(cfg, field)
        sub = [n for n in names if n != "numeric-crosscheck"]
        for r in _run_checks(numeric_bundle, cfg, sub):
            results.append(CheckResult(f"{r.name}@q={cfg.numeric}", r.status,
                                       r.details, r.anchor))
        problems = _commute_check(bundle, numeric_bundle, cfg)
        results.append(CheckResult(
            f"specialize-commute@q={cfg.numeric}",
            "fail" if problems else "pass", problems or
            "specialized symbolic results equal direct numeric results",
            "numeric.specialization"))
    return results

import random

import pytest

from qforms.checks import _rand_element, _rand_form
from qforms.scalars import q_power


def test_wedge_reordering(eq2):
    calc = eq2.calculus
    wm, w0, wp = (calc.basis_form(i) for i in range(3))
    assert wp * wm == (wm * wp).scale(-q_power(2))
    assert w0 * wm == (wm * w0).scale(-q_power(4))
    assert wp * w0 == (w0 * wp).scale(-q_power(4))
    assert (w0 * w0).is_zero()
    already = (wm * w0) * wp
    assert list(already.terms) == [(0, 1, 2)]


def test_bimodule_relation(eq2):
    calc = eq2.calculus
    v = eq2.gen("v")
    w0 = calc.basis_form("w0")
    assert w0 * v == (v * w0).scale(q_power(-2))
    n = eq2.abbreviations["n"]
    assert w0 * n == (n * w0).scale(q_power(2))
    wp = calc.basis_form("wp")
    assert wp * n == (n * wp).scale(q_power(1))


def test_differential_on_generators(eq2):
    calc = eq2.calculus
    pres = eq2.presentation
    v = eq2.gen("v")
    assert calc.d(v) == v * calc.basis_form("w0")
    n = eq2.abbreviations["n"]
    expected = (n * calc.basis_form("w0")).scale(-q_power(2)) \
        + v * calc.basis_form("wm")
    assert calc.d(n) == expected
    ns = eq2.abbreviations["ns"]
    vi = eq2.abbreviations["vi"]
    assert calc.d(ns) == ns * calc.basis_form("w0") \
        + (vi * calc.basis_form("wp")).scale(q_power(2))
    assert calc.d(vi) == (vi * calc.basis_form("w0")).scale(-q_power(2))
    assert calc.d(pres.one()).is_zero()


def test_differential_on_basis_forms(eq2):
    calc = eq2.calculus
    jac = q_power(2) * (q_power(2) + 1)
    assert calc.d(calc.basis_form("wp")) == \
        (calc.basis_form("w0") * calc.basis_form("wp")).scale(jac)
    assert calc.d(calc.basis_form("wm")) == \
        (calc.basis_form("wm") * calc.basis_form("w0")).scale(jac)
    assert calc.d(calc.basis_form("w0")).is_zero()


def test_partial_examples(eq2):
    calc = eq2.calculus
    ns = eq2.abbreviations["ns"]
    vi = eq2.abbreviations["vi"]
    assert calc.partial(2, ns) == vi.scale(q_power(2))
    assert calc.partial(0, eq2.gen("z")) == eq2.gen("v") * eq2.gen("v")
    assert calc.partial(1, eq2.presentation.one()).is_zero()


def test_right_coefficient_examples(eq2):
    calc = eq2.calculus
    v = eq2.gen("v")
    u = v * calc.basis_form("wm")
    assert calc.right_coefficients(u) == {(0,): v.scale(q_power(1))}
    u2 = (v * v) * (calc.basis_form("wm") * calc.basis_form("w0"))
    assert calc.right_coefficients(u2) == {(0, 1): (v * v).scale(q_power(6))}


def test_right_coefficient_round_trip(eq2, cq):
    rng = random.Random(21)
    for bundle in (eq2, cq):
        calc = bundle.calculus
        for _ in range(60):
            k = rng.randint(0, calc.top_degree)
            u = _rand_form(rng, bundle, k, 3)
            assert calc.from_right_coefficients(calc.right_coefficients(u)) == u


def test_skew_constants(eq2, cq):
    q = eq2.field.q
    assert [eq2.calculus.skew_constant(i) for i in range(3)] == [q(2), eq2.field.one, q(-2)]
    assert [cq.calculus.skew_constant(i) for i in range(2)] == [q(2), q(-2)]


def test_density(eq2, cq):
    assert eq2.calculus.density_report(eq2.density_witnesses) == []
    assert cq.calculus.density_report(cq.density_witnesses) == []
    report = eq2.calculus.density_report({})
    assert len(report) == 3 and all("no density witnesses" in p for p in report)


def test_star_on_forms(eq2):
    calc = eq2.calculus
    assert calc.star(calc.basis_form("wp")) == calc.basis_form("wm").scale(q_power(-1))
    assert calc.star(calc.basis_form("wm")) == calc.basis_form("wp").scale(q_power(1))
    assert calc.star(calc.basis_form("w0")) == calc.basis_form("w0").scale(-q_power(0))


def test_star_commutes_with_d(eq2, cq):
    rng = random.Random(22)
    for bundle in (eq2, cq):
        calc = bundle.calculus
        for _ in range(60):
            a = _rand_element(rng, bundle, 3)
            assert calc.star(calc.d(a)) == calc.d(a.star())
            u = _rand_form(rng, bundle, 1, 3)
            assert calc.star(calc.star(u)) == u


def test_d_squared_zero(eq2, cq):
    rng = random.Random(23)
    for bundle in (eq2, cq):
        calc = bundle.calculus
        for idx in range(len(bundle.presentation.generators)):
            assert calc.d(calc.d(bundle.presentation.gen(idx))).is_zero()
        for i in range(calc.top_degree):
            assert calc.d(calc.d(calc.basis_form(i))).is_zero()
        for _ in range(100):
            a = _rand_element(rng, bundle, 3)
            assert calc.d(calc.d(a)).is_zero()
            k = rng.randint(1, calc.top_degree - 1) if calc.top_degree > 1 else 1
            u = _rand_form(rng, bundle, k, 3)
            assert calc.d(calc.d(u)).is_zero()


def test_twisted_leibniz(eq2, cq):
    rng = random.Random(24)
    for bundle in (eq2, cq):
        calc = bundle.calculus
        for _ in range(100):
            a = _rand_element(rng, bundle, 3)
            b = _rand_element(rng, bundle, 3)
            for i in range(calc.top_degree):
                assert calc.partial(i, a * b) == \
                    calc.partial(i, a) * calc.twist(i, b) + a * calc.partial(i, b)


def test_both_expansions_of_d_agree(eq2, cq):
    rng = random.Random(25)
    for bundle in (eq2, cq):
        calc = bundle.calculus
        for _ in range(60):
            a = _rand_element(rng, bundle, 3)
            rc = {(i,): calc.twist_inv(i, calc.partial(i, a))
                  for i in range(calc.top_degree)}
            assert calc.from_right_coefficients(rc) == calc.d(a)


def test_graded_leibniz_of_d(eq2):
    rng = random.Random(26)
    calc = eq2.calculus
    for _ in range(60):
        k = rng.randint(0, 2)
        l = rng.randint(0, 3 - k)
        u = _rand_form(rng, eq2, k, 2)
        w = _rand_form(rng, eq2, l, 2)
        sign = eq2.field.one if k % 2 == 0 else -eq2.field.one
        assert calc.d(u * w) == calc.d(u) * w + (u * calc.d(w)).scale(sign)


def test_form_mul_associative(eq2):
    rng = random.Random(27)
    for _ in range(50):
        degrees = [rng.randint(0, 1) for _ in range(3)]
        u, w, x = (_rand_form(rng, eq2, d, 2) for d in degrees)
        assert (u * w) * x == u * (w * x)


def test_word_twist_composition_order_immaterial(eq2):
    calc = eq2.calculus
    rng = random.Random(28)
    for _ in range(40):
        a = _rand_element(rng, eq2, 3)
        left = calc.twist(0, calc.twist(1, a))
        right = calc.twist(1, calc.twist(0, a))
        assert left == right == calc.word_twist((0, 1), a)


def test_mixed_calculi_rejected(eq2, cq):
    with pytest.raises(ValueError):
        eq2.calculus.mul(eq2.basis_form("wm"), cq.basis_form("dz"))


def test_skew_constant_failure_reported(eq2):
    # d hits v with ratio 1 but z with ratio q^4: no consistent constant
    from qforms.forms import BasisFormSpec, Calculus
    pres = eq2.presentation
    v = eq2.gen("v")
    broken = Calculus(
        pres,
        [BasisFormSpec("b", (eq2.field.q(-2), eq2.field.one, eq2.field.one))],
        {},
        [{(0,): v}, {}, {(0,): v * v}],
        [{}])
    with pytest.raises(ValueError, match="skew constant"):
        broken.skew_constant(0)

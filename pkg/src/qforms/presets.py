"""Built-in presentations: the quantum Euclidean group and the quantum plane.

``build_eq2`` constructs the *-algebra with invertible unitary v and
generators zs (= z*), z subject to

    v z = q z v,    v zs = q zs v,    z zs = q^2 zs z,

together with its three-dimensional left-covariant calculus on the basis
wm < w0 < wp, the canonical hom-connection, the duality isomorphisms and the
expected-value tables the verification suite replays.  ``build_cq``
constructs the degree-zero subalgebra generated by zs, z with the calculus
freely generated by dz, dzs.

The quantum plane embeds into the quantum Euclidean group; ``Embedding``
realizes the inclusion on elements and forms (dz maps to d(z) computed in
the big algebra, i.e. v^2 wm, and dzs to q^3 v^-2 wp), and
``check_restriction`` verifies that the two descriptions of the plane's
hom-connection agree through it.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import Optional

from .algebra import AlgebraElement, GeneratorSpec, Presentation
from .duality import Duality
from .forms import BasisFormSpec, Calculus, Form
from .integrals import IntegralForm, nabla
from .scalars import SYMBOLIC


@dataclass
class PresetBundle:
    """Everything the suite needs for one algebra: presentation, calculus,
    duality data, naming, density witnesses and expected-value tables."""

    name: str
    field: object
    presentation: Presentation
    calculus: Calculus
    duality: Optional[Duality] = None
    dual_names: dict = dataclass_field(default_factory=dict)
    skeletal_names: Optional[list] = None
    density_witnesses: dict = dataclass_field(default_factory=dict)
    abbreviations: dict = dataclass_field(default_factory=dict)
    expected: dict = dataclass_field(default_factory=dict)

    def gen(self, name: str) -> AlgebraElement:
        return self.presentation.gen(name)

    def basis_form(self, name) -> Form:
        return self.calculus.basis_form(name)


def build_eq2(field=SYMBOLIC, overrides: Optional[dict] = None) -> PresetBundle:
    """The quantum Euclidean group preset.

    ``overrides`` replaces individual named scalars before construction and
    exists for mutation testing (every value below is load-bearing and the
    suite must notice any change).
    """
    q = field.q
    one = field.one
    s = {
        "c.zs.v": q(-1), "c.z.v": q(-1), "c.z.zs": q(2),
        "twist.wm.v": q(-1), "twist.w0.v": q(-2), "twist.wp.v": q(-1),
        "wedge.w0.wm": -q(4), "wedge.wp.wm": -q(2), "wedge.wp.w0": -q(4),
        "d.v": one, "d.z": one, "d.zs": q(3),
        "dform.wm": q(2) * (q(2) + 1), "dform.wp": q(2) * (q(2) + 1),
        "hom.wm": q(2), "hom.w0": one, "hom.wp": q(-2),
        "star.wm": q(1), "star.w0": -one, "star.wp": q(-1),
        "dual.1.w0": -q(4), "dual.1.wp": q(6),
        "dual.2.wm.wp": -q(4), "dual.2.w0.wp": q(6),
    }
    if overrides:
        s.update(overrides)

    pres = Presentation(
        [GeneratorSpec("v", invertible=True, degree=1, star=(one, 0, -1)),
         GeneratorSpec("zs", degree=0, star=(one, 2, 1)),
         GeneratorSpec("z", degree=0, star=(one, 1, 1))],
        {(1, 0): s["c.zs.v"], (2, 0): s["c.z.v"], (2, 1): s["c.z.zs"]},
        field)
    v = pres.gen("v")
    vi = pres.monomial((-1, 0, 0))

    fixed = one
    basis = [
        BasisFormSpec("wm", (s["twist.wm.v"], fixed, fixed), star=(s["star.wm"], 2)),
        BasisFormSpec("w0", (s["twist.w0.v"], fixed, fixed), star=(s["star.w0"], 1)),
        BasisFormSpec("wp", (s["twist.wp.v"], fixed, fixed), star=(s["star.wp"], 0)),
    ]
    calc = Calculus(
        pres, basis,
        wedge={(1, 0): s["wedge.w0.wm"], (2, 0): s["wedge.wp.wm"],
               (2, 1): s["wedge.wp.w0"]},
        d_generators=[
            {(1,): v.scale(s["d.v"])},                    # d v = v w0
            {(2,): (vi * vi).scale(s["d.zs"])},           # d zs = q^3 v^-2 wp
            {(0,): (v * v).scale(s["d.z"])},              # d z = v^2 wm
        ],
        d_forms=[
            {(0, 1): pres.scalar(s["dform.wm"])},         # d wm = q^2(q^2+1) wm w0
            {},                                           # d w0 = 0
            {(1, 2): pres.scalar(s["dform.wp"])},         # d wp = q^2(q^2+1) w0 wp
        ],
        hom_constants=(s["hom.wm"], s["hom.w0"], s["hom.wp"]))

    duality = Duality(calc, [
        {(): (one, (0, 1, 2))},
        {(0,): (one, (1, 2)), (1,): (s["dual.1.w0"], (0, 2)),
         (2,): (s["dual.1.wp"], (0, 1))},
        {(0, 1): (one, (2,)), (0, 2): (s["dual.2.wm.wp"], (1,)),
         (1, 2): (s["dual.2.w0.wp"], (0,))},
        {(0, 1, 2): (one, ())},
    ])

    n = vi * pres.gen("z")
    ns = pres.gen("zs") * v
    dual_names = {(0,): "xim", (1,): "xi0", (2,): "xip",
                  (0, 1): "php", (0, 2): "ph0", (1, 2): "phm",
                  (0, 1, 2): "ph"}
    skeletal_names = [("ph", (0, 1, 2)), ("phm", (1, 2)), ("ph0", (0, 2)),
                      ("php", (0, 1)), ("xim", (0,)), ("xi0", (1,)),
                      ("xip", (2,))]

    expected = _eq2_expected(field, pres, v, vi, n, ns)
    return PresetBundle(
        name="eq2", field=field, presentation=pres, calculus=calc,
        duality=duality, dual_names=dual_names, skeletal_names=skeletal_names,
        density_witnesses={
            0: [(vi * vi, pres.gen("z"))],
            1: [(vi, v)],
            2: [((v * v).scale(q(-3)), pres.gen("zs"))],
        },
        abbreviations={"vi": vi, "n": n, "ns": ns},
        expected=expected)


def _eq2_expected(field, pres, v, vi, n, ns):
    q = field.q
    one = field.one
    zero = pres.zero()
    jac = q(2) * (q(2) + 1)
    return {
        # rows: element -> (partial along wm, w0, wp)
        "partials": [
            ("v", v, (zero, v, zero)),
            ("n", n, (v, n.scale(-q(2)), zero)),
            ("ns", ns, (zero, ns, vi.scale(q(2)))),
            ("vi", vi, (zero, vi.scale(-q(2)), zero)),
        ],
        "partial_degree_shift": (2, 0, -2),
        "skew_constants": (q(2), one, q(-2)),
        "star_forms": [(0, (q(1), 2)), (1, (-one, 1)), (2, (q(-1), 0))],
        "phi_actions": {
            ((0, 2), 1): None, ((0, 2), 2): (-q(2), (0,)), ((0, 2), 0): (one, (2,)),
            ((0, 1), 1): (-q(4), (0,)), ((0, 1), 2): None, ((0, 1), 0): (one, (1,)),
            ((1, 2), 1): (one, (2,)), ((1, 2), 2): (-q(4), (1,)), ((1, 2), 0): None,
        },
        "top_actions": {
            ((0, 1, 2), (0, 1)): (one, (2,)),
            ((0, 1, 2), (1, 2)): (q(6), (0,)),
            ((0, 1, 2), (0, 2)): (-q(4), (1,)),
        },
        "nabla1": [((0, 2), None), ((0, 1), (jac, (0,))), ((1, 2), (jac, (2,)))],
        "nabla_top_zero": (0, 1, 2),
        "skeletal": _eq2_skeletal(field),
        "omega_z": True,
        "diagram_grid": {"v": (-3, 3), "lm": (0, 3)},
        "intermediate": [((0, 1), 2, one, -2),
                         ((0, 2), 1, -one, 4),
                         ((1, 2), 0, one, 8)],
        "surjectivity_grid": {"v": (-3, 3), "lm": (0, 3)},
        "exactness_grid": {"v": (-2, 2), "lm": (1, 3)},
    }


def _eq2_skeletal(field):
    q = field.q
    one = field.one
    return [
        [(one, "ph"), (one, "phm"), (one, "ph0"), (one, "php"),
         (one, "xim"), (one, "xi0"), (one, "xip")],
        [(one, "phm"), None, (-q(-4), "xip"), (-q(-2), "xi0"),
         (q(-6), "ph"), None, None],
        [(one, "ph0"), (one, "xip"), None, (-q(-4), "xim"),
         None, (-q(-4), "ph"), None],
        [(one, "php"), (one, "xi0"), (one, "xim"), None,
         None, None, (one, "ph")],
        [(one, "xim"), (one, "ph"), None, None, None, None, None],
        [(one, "xi0"), None, (-q(-4), "ph"), None, None, None, None],
        [(one, "xip"), None, None, (q(-6), "ph"), None, None, None],
    ]


def build_cq(field=SYMBOLIC, overrides: Optional[dict] = None) -> PresetBundle:
    """The quantum plane preset: generators zs, z with z zs = q^2 zs z and
    the calculus freely generated by the closed forms dz, dzs."""
    q = field.q
    one = field.one
    s = {
        "c.z.zs": q(2),
        "twist.dz": q(2), "twist.dzs": q(-2),
        "wedge.dzs.dz": -q(-2),
        "hom.dz": q(2), "hom.dzs": q(-2),
        "dual.1.dz": -one, "dual.1.dzs": q(-2),
    }
    if overrides:
        s.update(overrides)

    pres = Presentation(
        [GeneratorSpec("zs", degree=0, star=(one, 1, 1)),
         GeneratorSpec("z", degree=0, star=(one, 0, 1))],
        {(1, 0): s["c.z.zs"]}, field)
    basis = [
        BasisFormSpec("dz", (s["twist.dz"], s["twist.dz"]), star=(one, 1)),
        BasisFormSpec("dzs", (s["twist.dzs"], s["twist.dzs"]), star=(one, 0)),
    ]
    calc = Calculus(
        pres, basis,
        wedge={(1, 0): s["wedge.dzs.dz"]},
        d_generators=[{(1,): pres.one()}, {(0,): pres.one()}],
        d_forms=[{}, {}],
        hom_constants=(s["hom.dz"], s["hom.dzs"]))

    duality = Duality(calc, [
        {(): (one, (0, 1))},
        {(0,): (s["dual.1.dz"], (1,)), (1,): (s["dual.1.dzs"], (0,))},
        {(0, 1): (one, ())},
    ])

    zero = pres.zero()
    expected = {
        "partials": [
            ("z", pres.gen("z"), (pres.one(), zero)),
            ("zs", pres.gen("zs"), (zero, pres.one())),
        ],
        "skew_constants": (q(2), q(-2)),
        "star_forms": [(0, (one, 1)), (1, (one, 0))],
        "phi_actions": {
            ((0, 1), 0): (one, (1,)),        # psi dz = xibar
            ((0, 1), 1): (-q(-2), (0,)),     # psi dzs = -q^-2 xi
        },
        "nabla_top_zero": (0, 1),
        "diagram_grid": {"lm": (0, 4)},
        "surjectivity_grid": {"lm": (0, 4)},
        "restriction": True,
    }
    return PresetBundle(
        name="cq", field=field, presentation=pres, calculus=calc,
        duality=duality,
        dual_names={(0,): "xi", (1,): "xibar", (0, 1): "psi"},
        density_witnesses={0: [(pres.one(), pres.gen("z"))],
                           1: [(pres.one(), pres.gen("zs"))]},
        expected=expected)


def build_preset(name: str, field=SYMBOLIC) -> PresetBundle:
    if name == "eq2":
        return build_eq2(field)
    if name == "cq":
        return build_cq(field)
    raise ValueError(f"unknown preset {name!r} (expected 'eq2' or 'cq')")


class Embedding:
    """Inclusion of the quantum plane into the quantum Euclidean group.

    Elements map by z -> z, zs -> zs (the normal forms coincide because the
    generator order and the relation are shared); basis forms map to the
    differentials of the generator images.
    """

    def __init__(self, plane: PresetBundle, group: PresetBundle):
        if plane.name != "cq" or group.name != "eq2":
            raise ValueError("embedding is defined for the cq and eq2 presets")
        if plane.field.describe() != group.field.describe():
            raise ValueError("presets must share a scalar domain")
        self.plane = plane
        self.group = group
        gcalc = group.calculus
        self._form_images = (gcalc.d(group.gen("z")), gcalc.d(group.gen("zs")))

    def element(self, a: AlgebraElement) -> AlgebraElement:
        return self.group.presentation.element(
            {(0, l, m): c for (l, m), c in a.terms.items()})

    def form(self, u: Form) -> Form:
        gcalc = self.group.calculus
        out = gcalc.zero()
        for word, c in u.terms.items():
            term = gcalc.from_element(self.element(c))
            for letter in word:
                term = term * self._form_images[letter]
            out = out + term
        return out


def check_restriction(emb: Embedding, f: IntegralForm) -> list[str]:
    """Compare the two descriptions of the plane hom-connection on f.

    Through the embedding, f determines auxiliary values

        fhat_minus = q^-2 * f(dz) v^-2,    fhat_plus = q^-1 * f(dzs) v^2,

    on which the group-side constants act as in the ambient hom-connection:

        q^2 partial_minus(fhat_minus) + q^-2 partial_plus(fhat_plus).

    This must reproduce the intrinsic
    nabla(f) = q^2 partial(f(dz)) + q^-2 parbar(f(dzs)) computed on the
    plane (any other power on the partial_plus term breaks the
    hom-connection law, e.g. on the functional xibar . zs).  Returns failure
    descriptions (empty list = agreement).
    """
    failures = []
    field = emb.plane.field
    gpres = emb.group.presentation
    gcalc = emb.group.calculus
    zero = emb.plane.presentation.zero()
    v2 = gpres.monomial((2, 0, 0))
    vm2 = gpres.monomial((-2, 0, 0))

    f_dz = emb.element(f.values.get((0,), zero))
    f_dzs = emb.element(f.values.get((1,), zero))
    fhat_minus = (f_dz * vm2).scale(field.q(-2))
    fhat_plus = (f_dzs * v2).scale(field.q(-1))

    via_group = field.q(2) * gcalc.partial(0, fhat_minus) \
        + field.q(-2) * gcalc.partial(2, fhat_plus)
    via_plane = emb.element(nabla(f))
    if via_group != via_plane:
        failures.append("restricted hom-connection disagrees with the intrinsic one")
    return failures

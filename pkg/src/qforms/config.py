"""JSON presentation files: self-contained, diffable algebra/calculus fixtures.

Schema (all scalars and images are expression-grammar strings)::

    {
      "algebra": {
        "generators": [{"name": .., "invertible": .., "degree": ..,
                        "star": "<scalar * generator^(+-1)>"}, ...],
        "commutation": [{"left": g_j, "right": g_i, "scalar": ..}, ...]
      },
      "calculus": {
        "forms": [{"name": .., "twist": {gen: scalar, ...},
                   "star": "<scalar * form>"}, ...],
        "wedge": [{"left": b_j, "right": b_i, "scalar": ..}, ...],
        "d": {gen_or_form: "<form expression>", ...},
        "hom_constants": {form: scalar, ...}
      }
    }

``left``/``right`` name the reordered pair: left*right = scalar*right*left
with ``left`` later in the declared order.  Star entries are optional (omit
for no star structure); ``hom_constants`` is optional.
"""

from __future__ import annotations

import json

from .algebra import GeneratorSpec, Presentation
from .forms import BasisFormSpec, Calculus
from .grammar import _is_scalar_value, format_value, parse_expr
from .presets import PresetBundle
from .scalars import SYMBOLIC


def _scalar_context(field) -> PresetBundle:
    pres = Presentation([], {}, field)
    calc = Calculus(pres, [], {}, [], [])
    return PresetBundle(name="scalars", field=field, presentation=pres, calculus=calc)


def _parse_scalar(text: str, field):
    value = parse_expr(text, _scalar_context(field))
    if not _is_scalar_value(value):
        raise ValueError(f"expected a scalar expression, got {text!r}")
    return value


def _destructure_generator_star(expr, pres):
    if len(expr.terms) != 1:
        raise ValueError("generator star image must be a scalar multiple of a generator power")
    (mono, coeff), = expr.terms.items()
    support = [(i, e) for i, e in enumerate(mono) if e]
    if len(support) != 1 or support[0][1] not in (1, -1):
        raise ValueError("generator star image must be a signed generator power")
    idx, power = support[0]
    return (coeff, idx, power)


def _destructure_form_star(form):
    if len(form.terms) != 1:
        raise ValueError("form star image must be a scalar multiple of a basis form")
    (word, coeff), = form.terms.items()
    if len(word) != 1:
        raise ValueError("form star image must have degree one")
    unit = (0,) * len(coeff.presentation.generators)
    if set(coeff.terms) != {unit}:
        raise ValueError("form star image coefficient must be a scalar")
    return (coeff.terms[unit], word[0])


def bundle_from_config(cfg: dict, field=SYMBOLIC, name: str = "file") -> PresetBundle:
    """Build a bundle from a parsed JSON document (generic checks only:
    no duality data or expected tables are attached)."""
    alg = cfg["algebra"]
    gen_rows = alg["generators"]
    gen_names = [row["name"] for row in gen_rows]
    if len(set(gen_names)) != len(gen_names):
        raise ValueError("duplicate generator names")

    commutation = {}
    for row in alg.get("commutation", []):
        j = gen_names.index(row["left"])
        i = gen_names.index(row["right"])
        if j <= i:
            raise ValueError(f"pair ({row['left']}, {row['right']}) is not ordered "
                             "later*earlier")
        commutation[(j, i)] = _parse_scalar(row["scalar"], field)

    bare = [GeneratorSpec(row["name"], bool(row.get("invertible", False)),
                          int(row.get("degree", 0))) for row in gen_rows]
    pres_nostar = Presentation(bare, commutation, field)
    tmp = PresetBundle(name=name, field=field, presentation=pres_nostar,
                       calculus=Calculus(pres_nostar, [], {},
                                         [{} for _ in bare], []))

    stars = []
    for row in gen_rows:
        img = row.get("star")
        stars.append(None if img is None
                     else _destructure_generator_star(parse_expr(img, tmp), pres_nostar))
    pres = Presentation(
        [GeneratorSpec(g.name, g.invertible, g.degree, s) for g, s in zip(bare, stars)],
        commutation, field)

    cal = cfg["calculus"]
    form_rows = cal["forms"]
    form_names = [row["name"] for row in form_rows]
    wedge = {}
    for row in cal.get("wedge", []):
        j = form_names.index(row["left"])
        i = form_names.index(row["right"])
        if j <= i:
            raise ValueError(f"wedge pair ({row['left']}, {row['right']}) is not "
                             "ordered later*earlier")
        wedge[(j, i)] = _parse_scalar(row["scalar"], field)

    def _twists(row):
        twist = row["twist"]
        return tuple(_parse_scalar(twist[g], field) for g in gen_names)

    bare_forms = [BasisFormSpec(row["name"], _twists(row)) for row in form_rows]
    calc_nostar = Calculus(pres, bare_forms, wedge,
                           [{} for _ in gen_names], [{} for _ in form_names])
    tmp2 = PresetBundle(name=name, field=field, presentation=pres, calculus=calc_nostar)

    d_exprs = cal.get("d", {})
    d_generators = []
    for g in gen_names:
        expr = d_exprs.get(g)
        d_generators.append({} if expr is None else _form_terms(parse_expr(expr, tmp2), 1))
    d_forms = []
    for f in form_names:
        expr = d_exprs.get(f)
        d_forms.append({} if expr is None else _form_terms(parse_expr(expr, tmp2), 2))

    form_stars = []
    for row in form_rows:
        img = row.get("star")
        form_stars.append(None if img is None
                          else _destructure_form_star(parse_expr(img, tmp2)))

    hom = cal.get("hom_constants")
    hom_constants = None
    if hom is not None:
        hom_constants = tuple(_parse_scalar(hom[f], field) for f in form_names)

    calc = Calculus(
        pres,
        [BasisFormSpec(b.name, b.twist, s) for b, s in zip(bare_forms, form_stars)],
        wedge, d_generators, d_forms, hom_constants)
    return PresetBundle(name=name, field=field, presentation=pres, calculus=calc)


def _form_terms(value, degree: int) -> dict:
    from .algebra import AlgebraElement
    from .forms import Form
    if isinstance(value, AlgebraElement):
        raise ValueError("differential image must be a form, not an algebra element")
    if not isinstance(value, Form):
        if not value:
            return {}
        raise ValueError("differential image must be a form expression")
    for w in value.terms:
        if len(w) != degree:
            raise ValueError(f"differential image must be homogeneous of degree {degree}")
    return dict(value.terms)


def load_bundle(path: str, field=SYMBOLIC) -> PresetBundle:
    with open(path, encoding="utf-8") as fh:
        return bundle_from_config(json.load(fh), field)


def bundle_to_config(bundle: PresetBundle) -> dict:
    """Export presentation and calculus to the JSON schema (round-trippable)."""
    pres = bundle.presentation
    calc = bundle.calculus
    scalars = format_value

    def star_gen(g):
        if g.star is None:
            return None
        coeff, idx, power = g.star
        target = pres.names[idx] + ("" if power == 1 else f"^{power}")
        return target if coeff == bundle.field.one else f"({scalars(coeff)})*{target}"

    def star_form(b):
        if b.star is None:
            return None
        coeff, idx = b.star
        target = calc.form_names[idx]
        return target if coeff == bundle.field.one else f"({scalars(coeff)})*{target}"

    generators = []
    for g in pres.generators:
        row = {"name": g.name, "invertible": g.invertible, "degree": g.degree}
        s = star_gen(g)
        if s is not None:
            row["star"] = s
        generators.append(row)

    commutation = [{"left": pres.names[j], "right": pres.names[i],
                    "scalar": scalars(c)}
                   for (j, i), c in sorted(pres.commutation.items())]

    forms = []
    for b in calc.basis:
        row = {"name": b.name,
               "twist": {gname: scalars(t) for gname, t in zip(pres.names, b.twist)}}
        s = star_form(b)
        if s is not None:
            row["star"] = s
        forms.append(row)

    wedge = [{"left": calc.form_names[j], "right": calc.form_names[i],
              "scalar": scalars(c)}
             for (j, i), c in sorted(calc.wedge.items())]

    d = {}
    for idx, name in enumerate(pres.names):
        image = calc.form({w: c for w, c in calc._d_generators[idx].items()})
        if image:
            d[name] = format_value(image)
    for idx, name in enumerate(calc.form_names):
        image = calc.form({w: c for w, c in calc._d_forms[idx].items()})
        if image:
            d[name] = format_value(image)

    out = {"algebra": {"generators": generators, "commutation": commutation},
           "calculus": {"forms": forms, "wedge": wedge, "d": d}}
    if calc.hom_constants is not None:
        out["calculus"]["hom_constants"] = {
            name: scalars(c) for name, c in zip(calc.form_names, calc.hom_constants)}
    return out

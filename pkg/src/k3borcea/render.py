"""Exact JSON / text / LaTeX rendering helpers (no floats anywhere)."""

import json
from fractions import Fraction

from .algebra import LinForm
from .k3data import LATEX_NAMES, NAMESPACES


def rational_json(q):
    q = Fraction(q)
    if q.denominator == 1:
        return q.numerator
    return {"num": q.numerator, "den": q.denominator}


def linform_json(form):
    form = LinForm.coerce(form)
    return {
        "constant": rational_json(form.constant),
        "terms": {s: rational_json(c) for s, c in form.terms.items()},
    }


def value_json(value):
    if isinstance(value, LinForm):
        return linform_json(value)
    if value is None:
        return None
    return rational_json(value)


def dumps(obj):
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def text(form, d):
    return LinForm.coerce(form).format(symbol_order=NAMESPACES.get(d), mul="")


def latex(form, d):
    """The form in display notation, e.g. ``2+r+m-\\alpha-\\beta``."""
    form = LinForm.coerce(form)
    body = form.format(names=LATEX_NAMES.get(d, {}), symbol_order=NAMESPACES.get(d), mul=" ")
    return body.replace(" + ", "+").replace(" - ", "-")


def latex_relations(forms, d):
    lines = [r"\begin{align*}"]
    lines += [f"&0={latex(f, d)}" + (r",\\" if i < len(forms) - 1 else ".") for i, f in enumerate(forms)]
    lines.append(r"\end{align*}")
    return "\n".join(lines)

"""Topological and holomorphic Lefschetz numbers of alpha_S^j on a K3 surface.

Topological: trace on H^0 + H^2 + H^4 from eigenspace dimensions, against
e(Fix).  Holomorphic: local fixed-point contributions a(P), b(C) against
1 + conj(zeta).  The symbolic comparison yields linear relations among the
invariants.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import CyclotomicNumber, LinForm, parse_linform as P
from .errors import InternalConsistencyError, UsageError
from .k3data import NAMESPACES, check_order, fixed_locus_euler, sym

# dim H^2(S)_{zeta^i} as linear forms, i = 0..d-1
EIGENSPACES = {
    6: (P("r"), P("m"), P("alpha"), P("beta"), P("alpha"), P("m")),
    4: (P("r"), P("m"), P("22 - r - 2*m"), P("m")),
    3: (P("r"), P("m"), P("m")),
    2: (P("r"), P("m")),
}


def _check_power(d, j):
    if not isinstance(j, int) or not 1 <= j < d:
        raise UsageError(f"power must satisfy 1 ≤ j < {d} (got {j!r})")


def _cyclo_linear_sum(d, pairs):
    """sum(form * zeta_d^e) as one LinForm per power-basis coordinate."""
    components = None
    for form, number in pairs:
        coeffs = number.coeffs
        if components is None:
            components = [LinForm(0)] * len(coeffs)
        components = [acc + LinForm.coerce(form) * c for acc, c in zip(components, coeffs)]
    return components


def _finish(form, invariants):
    return form if invariants is None else form.evaluate(invariants.assignment())


def top_lefschetz_eigen(d, j, invariants=None):
    """Trace of (alpha^j)^* on cohomology, from eigenspace dimensions."""
    check_order(d)
    _check_power(d, j)
    pairs = [(LinForm(2), CyclotomicNumber.rational(d, 1))]
    pairs += [(dim, CyclotomicNumber.zeta(d, i * j)) for i, dim in enumerate(EIGENSPACES[d])]
    components = _cyclo_linear_sum(d, pairs)
    if any(components[1:]):
        raise InternalConsistencyError(
            f"trace of alpha^{j} is not rational: irrational part {components[1]}"
        )
    return _finish(components[0], invariants)


def top_lefschetz_fix(d, j, invariants=None, isolated_points=True):
    check_order(d)
    return _finish(fixed_locus_euler(d, j, isolated_points=isolated_points), invariants)


# holomorphic -------------------------------------------------------------


def k3_self_intersection(genus):
    """C^2 = 2g - 2 for a smooth curve on a K3 surface."""
    return 2 * genus - 2


def point_contribution(d, point_type):
    """a(P) = 1 / ((1 - zeta^i)(1 - zeta^j)) for local action diag(zeta^i, zeta^j)."""
    i, j = point_type
    if i % d == 0 or j % d == 0:
        raise UsageError(f"point type {point_type} has eigenvalue 1: fixed locus is degenerate")
    if (i + j) % d != 1 % d:
        raise UsageError(
            f"point type {point_type} is not compatible with a purely non-symplectic order-{d} action"
        )
    one = CyclotomicNumber.rational(d, 1)
    return 1 / ((one - CyclotomicNumber.zeta(d, i)) * (one - CyclotomicNumber.zeta(d, j)))


def curve_contribution(d, genus, self_intersection=None):
    """b(C) with normal eigenvalue zeta_d."""
    if self_intersection is None:
        self_intersection = k3_self_intersection(genus)
    z = CyclotomicNumber.zeta(d)
    one = CyclotomicNumber.rational(d, 1)
    return (1 - Fraction(genus)) / (one - z) - z * Fraction(self_intersection) / (one - z) ** 2


def hol_lefschetz_local(d, points=(), curves=()):
    """Sum of a(P) over isolated points and b(C) over fixed curves.

    ``points`` are type tags (i, j); ``curves`` are (genus, C^2) pairs.
    """
    total = CyclotomicNumber.rational(d, 0)
    for point in points:
        total = total + point_contribution(d, tuple(point))
    for genus, self_int in curves:
        total = total + curve_contribution(d, genus, self_int)
    return total


def hol_expected(d):
    """1 + zeta^(d-1): trace on H^{0,0} plus the conjugate character on H^{0,2}."""
    check_order(d)
    return 1 + CyclotomicNumber.zeta(d, d - 1)


# Generic fixed-locus shape of alpha: rational curves plus one curve D of
# genus gD, and isolated points by type.
_HOL_SHAPE = {
    6: {"rational_curves": P("l - 1"), "points": {(3, 4): P("p34"), (2, 5): P("p25")}},
    4: {"rational_curves": P("k - 1"), "points": {(2, 3): P("n1 + n2")}},
}


def holomorphic_identity(d):
    """Components (power basis) of local sum minus expected value, as LinForms."""
    if d not in _HOL_SHAPE:
        raise UsageError(f"holomorphic relation is catalogued for orders 4 and 6, not {d}")
    shape = _HOL_SHAPE[d]
    rational = curve_contribution(d, 0)
    # b(C) is affine in the genus: b(g) = b(0) + g * (b(1) - b(0))
    slope = curve_contribution(d, 1) - rational
    pairs = [
        (shape["rational_curves"], rational),
        (LinForm(1), rational),
        (sym("gD"), slope),
        (LinForm(-1), hol_expected(d)),
    ]
    pairs += [(count, point_contribution(d, t)) for t, count in shape["points"].items()]
    return _cyclo_linear_sum(d, pairs)


@dataclass(frozen=True)
class LefschetzRelation:
    name: str
    kind: str
    power: int
    form: LinForm

    def to_json(self):
        from .render import linform_json

        return {"name": self.name, "kind": self.kind, "power": self.power, "form": linform_json(self.form)}


def normalize(form, d):
    return form.primitive(NAMESPACES[d])


def derive_lefschetz_relations(d, isolated_points=False):
    """Relations forced by the Lefschetz fixed-point formulas, normalised.

    Topological: one per power class j dividing d; holomorphic: the distinct
    rational components of the local identity.  ``isolated_points`` chooses
    whether the isolated points of alpha^2 enter e(Fix(alpha^2)) at order 6;
    the catalogued relation omits them.
    """
    check_order(d)
    out = []
    for j in range(1, d):
        if d % j:
            continue
        form = top_lefschetz_eigen(d, j) - top_lefschetz_fix(d, j, isolated_points=isolated_points)
        out.append(LefschetzRelation(f"top(alpha^{j})", "topological", j, normalize(form, d)))
    if d in _HOL_SHAPE:
        seen = []
        for comp in holomorphic_identity(d):
            if not comp:
                continue
            form = normalize(comp, d)
            if form not in seen:
                seen.append(form)
        for i, form in enumerate(seen):
            name = "hol(alpha)" if len(seen) == 1 else f"hol(alpha)[{i}]"
            out.append(LefschetzRelation(name, "holomorphic", 1, form))
    return out

"""Invariants of K3 surfaces with a purely non-symplectic automorphism.

One frozen dataclass per automorphism order, plus the Euler characteristics
of fixed loci (as linear forms in those invariants) and of the fixed loci of
the companion elliptic-curve automorphism.
"""

import dataclasses
import json
from fractions import Fraction
from math import gcd
from typing import ClassVar, Optional

from .algebra import LinForm
from .errors import ParseError, UsageError, ValidationError

ORDERS = (2, 3, 4, 6)

# Symbol namespaces per order; the tuple order is the canonical symbol order
# used for rendering and for normalising relations.
NAMESPACES = {
    6: ("r", "m", "alpha", "beta", "l", "k", "N", "p25", "p34", "npts", "nprime",
        "a", "b", "gD", "gG", "gF1", "gF2", "gqG", "gqF1", "gqF2", "w"),
    4: ("r", "m", "N", "k", "b", "a", "gD", "gqD", "gFix4", "n1", "n2"),
    3: ("r", "m", "h", "k", "gC"),
    2: ("r", "m", "N", "Nprime"),
}

# How each symbol is typeset in LaTeX output.
LATEX_NAMES = {
    6: {
        "alpha": r"\alpha", "beta": r"\beta", "l": r"\ell", "p25": "p_{(2,5)}",
        "p34": "p_{(3,4)}", "npts": "n", "nprime": "n'", "gD": "g(D)", "gG": "g(G)",
        "gF1": "g(F_1)", "gF2": "g(F_2)", "gqG": r"g\left(G/\alpha_{S_6}\right)",
        "gqF1": r"g\left(F_1/\alpha_{S_6}\right)", "gqF2": r"g\left(F_2/\alpha_{S_6}\right)",
    },
    4: {"gD": "g(D)", "gqD": r"g\left(D/\alpha_{S_4}\right)", "gFix4": "g(G)",
        "n1": "n_1", "n2": "n_2"},
    3: {"gC": "g(C)"},
    2: {"Nprime": "N'"},
}


def check_order(d):
    if d not in ORDERS:
        raise UsageError(f"order must be one of 2,3,4,6 (got {d})")
    return d


def sym(name):
    return LinForm.symbol(name)


class InvariantSet:
    """Shared behaviour of the per-order invariant records."""

    ORDER: ClassVar[int]

    def __post_init__(self):
        for f in self.symbols():
            value = getattr(self, f)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValidationError(f"{f} must be an integer (got {value!r})")
            if value < 0:
                raise ValidationError(f"{f} must be ≥ 0 (got {value})")

    @property
    def order(self):
        return self.ORDER

    @classmethod
    def symbols(cls):
        return NAMESPACES[cls.ORDER]

    def assignment(self):
        return {s: Fraction(getattr(self, s)) for s in self.symbols()}

    def values(self):
        return {s: getattr(self, s) for s in self.symbols()}

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def to_document(self):
        doc = {"order": self.ORDER, "invariants": self.values()}
        if self.name is not None:
            doc["name"] = self.name
        return doc


@dataclasses.dataclass(frozen=True)
class InvariantSet6(InvariantSet):
    ORDER: ClassVar[int] = 6
    r: int
    m: int
    alpha: int
    beta: int
    l: int  # noqa: E741
    k: int
    N: int
    p25: int
    p34: int
    npts: int
    nprime: int
    a: int
    b: int
    gD: int
    gG: int
    gF1: int
    gF2: int
    gqG: int
    gqF1: int
    gqF2: int
    w: int
    name: Optional[str] = None


@dataclasses.dataclass(frozen=True)
class InvariantSet4(InvariantSet):
    ORDER: ClassVar[int] = 4
    r: int
    m: int
    N: int
    k: int
    b: int
    a: int
    gD: int
    gqD: int
    gFix4: int
    n1: int
    n2: int
    name: Optional[str] = None


@dataclasses.dataclass(frozen=True)
class InvariantSet3(InvariantSet):
    ORDER: ClassVar[int] = 3
    r: int
    m: int
    h: int
    k: int
    gC: int
    name: Optional[str] = None


@dataclasses.dataclass(frozen=True)
class InvariantSet2(InvariantSet):
    ORDER: ClassVar[int] = 2
    r: int
    m: int
    N: int
    Nprime: int
    name: Optional[str] = None


INVARIANT_CLASSES = {cls.ORDER: cls for cls in (InvariantSet6, InvariantSet4, InvariantSet3, InvariantSet2)}


def make_invariants(d, values, name=None):
    """Build the order-``d`` record from a symbol -> value mapping."""
    cls = INVARIANT_CLASSES[check_order(d)]
    names = cls.symbols()
    unknown = sorted(set(values) - set(names))
    if unknown:
        raise ValidationError(f"unknown invariant(s) for order {d}: {', '.join(unknown)}")
    missing = [s for s in names if s not in values]
    if missing:
        raise ValidationError(f"missing invariant(s) for order {d}: {', '.join(missing)}")
    converted = {}
    for s in names:
        v = values[s]
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise ValidationError(f"{s} must be an integer (got {v})")
            v = v.numerator
        converted[s] = v
    return cls(**converted, name=name)


def parse_invariants(document):
    """Parse an invariant JSON document (text) into an InvariantSet."""
    try:
        doc = json.loads(document)
    except (json.JSONDecodeError, TypeError) as exc:
        raise ParseError(f"malformed invariant document: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("invariant document must be a JSON object")
    extra = sorted(set(doc) - {"order", "name", "invariants"})
    if extra:
        raise ValidationError(f"unknown top-level key(s): {', '.join(extra)}")
    if "order" not in doc:
        raise ValidationError("missing key: order")
    order = doc["order"]
    if isinstance(order, bool) or order not in ORDERS:
        raise ValidationError(f"order must be one of 2,3,4,6 (got {order!r})")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ValidationError("name must be a string")
    values = doc.get("invariants")
    if not isinstance(values, dict):
        raise ValidationError("invariants must be a JSON object")
    return make_invariants(order, values, name=name)


def serialize_invariants(invariants):
    return json.dumps(invariants.to_document(), sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Fixed loci
# ---------------------------------------------------------------------------

K3_EULER = 24

# e(Fix(alpha_E^j)) for an elliptic curve with an order-d automorphism that
# does not preserve the 1-form; keyed by (d, gcd(j, d)).
_ELLIPTIC_FIXED = {
    (2, 1): 4,
    (3, 1): 3,
    (4, 1): 2, (4, 2): 4,
    (6, 1): 1, (6, 2): 3, (6, 3): 4,
}


def _power_class(d, j):
    check_order(d)
    if not isinstance(j, int) or not 0 <= j < d:
        raise UsageError(f"power must satisfy 0 ≤ j < {d} (got {j!r})")
    return gcd(j, d)


def elliptic_fixed_count(d, j):
    c = _power_class(d, j)
    return 0 if c == d else _ELLIPTIC_FIXED[(d, c)]


def fixed_locus_euler(d, j, isolated_points=True):
    """e(Fix(alpha_S^j)) as a linear form over the order-d namespace.

    ``isolated_points=False`` drops the isolated points of alpha^2 at order 6
    (the bookkeeping used for the topological Lefschetz relation of alpha^2).
    """
    c = _power_class(d, j)
    if c == d:
        return LinForm(K3_EULER)
    if d == 6:
        if c == 1:
            return 2 * sym("l") - 2 * sym("gD") + sym("p25") + sym("p34")
        if c == 2:
            form = 2 * sym("k") - 2 * sym("gG")
            return form + sym("npts") if isolated_points else form
        return 2 * sym("N") - 2 * sym("gF1") - 2 * sym("gF2")
    if d == 4:
        if c == 1:
            return sym("n1") + sym("n2") + 2 * sym("k") - 2 * sym("gD")
        return 2 * sym("N") - 2 * sym("gD")
    if d == 3:
        return sym("h") + 2 * sym("k") - 2 * sym("gC")
    return 2 * sym("N") - 2 * sym("Nprime")

"""Hodge generating polynomials of Y_{d,n} and the diamonds read off them.

The Hodge number h^{p,q}(Y_{d,n}) is the coefficient of X^p Y^q in an
explicit polynomial whose monomials carry exponents in (1/d)Z.  Terms at
fractional bidegree survive the expansion but are never Hodge numbers.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import FracPoly, LinForm
from .errors import InconsistentInvariantsError, InternalConsistencyError, UsageError
from .k3data import check_order, sym

__all__ = [
    "HodgeDiamond",
    "ShapeReport",
    "build_hodge_poly",
    "hodge_diamond",
    "hodge_numbers",
    "multiplier",
    "verify_cy_shape",
]


class _Vars:
    """Monomial building blocks at exponent scale ``d``."""

    def __init__(self, d):
        self.one = FracPoly.constant(d)
        self.X = FracPoly.monomial(d, d, 0)
        self.Y = FracPoly.monomial(d, 0, d)
        self.XY = self.X * self.Y
        self.XpY = self.X + self.Y
        # t = (XY)^(1/d)
        self.t = FracPoly.monomial(d, 1, 1)

    def root(self, k):
        return self.t**k


def multiplier(d):
    """The factor raised to the power n-1 in the untwisted sector."""
    v = _Vars(check_order(d))
    t = v.root
    if d == 6:
        return v.one + v.XY + t(1) + 2 * t(2) + 2 * t(3) + 2 * t(4) + t(5)
    if d == 4:
        # printed with (XY)^(3/4) twice; the middle term is (XY)^(2/4)
        return v.one + v.XY + 2 * t(1) + 3 * t(2) + 2 * t(3)
    if d == 3:
        return v.one + v.XY + 3 * t(1) + 3 * t(2)
    return v.one + v.XY + 4 * t(1)


def _poly6(n):
    v = _Vars(6)
    XY, XpY, t = v.XY, v.XpY, v.root
    r, m, alpha, beta, l, k, N = (sym(s) for s in ("r", "m", "alpha", "beta", "l", "k", "N"))
    p25, p34, nprime, a, b = (sym(s) for s in ("p25", "p34", "nprime", "a", "b"))
    gD, gG, gF1, gF2 = (sym(s) for s in ("gD", "gG", "gF1", "gF2"))
    gqG, gqF = sym("gqG"), sym("gqF1") + sym("gqF2")

    untwisted = (
        XY**2 + r * XY + 1
        + t(1) * (l + p25 * XY + p34 * XY + gD * XpY + l * XY)
        + t(2) * ((k - b) + nprime * XY + p25 * XY + gqG * XpY + (k - b) * XY)
        + t(3) * ((N - 2 * a) + gqF * XpY + (N - 2 * a) * XY)
        + t(4) * ((k - b) + nprime + p25 + gqG * XpY + (k - b) * XY)
        + t(5) * (l + p25 + p34 + gD * XpY + l * XY)
    )
    half_genus = Fraction(1, 2) * (gF1 + gF2 - gqF)
    sector3 = (alpha * XY + t(3) * (a + half_genus * XpY + a * XY)) * t(3) ** (n - 1)
    sector2 = (
        beta * XY
        + t(2) * (b + nprime * XY + (gG - gqG) * XpY + b * XY)
        + t(4) * (b + nprime + (gG - gqG) * XpY + b * XY)
    ) * (t(2) + t(4)) ** (n - 1)
    return (
        untwisted * multiplier(6) ** (n - 1)
        + (v.X**2 + (m - 1) * XY) * v.X ** (n - 1)
        + 2 * sector3
        + sector2
        + (v.Y**2 + (m - 1) * XY) * v.Y ** (n - 1)
    )


def _poly4(n):
    v = _Vars(4)
    XY, XpY, t = v.XY, v.XpY, v.root
    r, m, N, k, b, a = (sym(s) for s in ("r", "m", "N", "k", "b", "a"))
    gD, gqD, gG, n12 = sym("gD"), sym("gqD"), sym("gFix4"), sym("n1") + sym("n2")

    untwisted = (
        XY**2 + r * XY + 1
        + (k + n12 * XY + gG * XpY + k * XY) * t(1)
        + ((N - a) + gqD * XpY + (N - a) * XY) * t(2)
        + (k + n12 + gG * XpY + k * XY) * t(3)
    )
    sector2 = ((22 - r - 2 * m) * XY + (a + (gD - gqD) * XpY + a * XY) * t(2)) * t(2) ** (n - 1)
    return (
        untwisted * multiplier(4) ** (n - 1)
        + (v.X**2 + (m - 1) * XY) * v.X ** (n - 1)
        + sector2
        + (v.Y**2 + (m - 1) * XY) * v.Y ** (n - 1)
    )


def _poly3(n):
    v = _Vars(3)
    XY, XpY, t = v.XY, v.XpY, v.root
    r, m, h, k, gC = (sym(s) for s in ("r", "m", "h", "k", "gC"))
    untwisted = (
        XY**2 + r * XY + 1
        + (k + h * XY + gC * XpY + k * XY) * t(1)
        + (k + h + gC * XpY + k * XY) * t(2)
    )
    return (
        untwisted * multiplier(3) ** (n - 1)
        + (v.X**2 + (m - 1) * XY) * v.X ** (n - 1)
        + (v.Y**2 + (m - 1) * XY) * v.Y ** (n - 1)
    )


def _poly2(n):
    v = _Vars(2)
    XY, XpY, t = v.XY, v.XpY, v.root
    r, m, N, Np = (sym(s) for s in ("r", "m", "N", "Nprime"))
    # the curve term is N*XY; an N*(XY)^2 term would put 4N into h^{3,3} at n = 2
    untwisted = XY**2 + r * XY + 1 + (N + Np * XpY + N * XY) * t(1)
    return (
        untwisted * multiplier(2) ** (n - 1)
        + (v.X**2 + v.Y**2 + (m - 2) * XY) * XpY ** (n - 1)
    )


_BUILDERS = {6: _poly6, 4: _poly4, 3: _poly3, 2: _poly2}


def _check_level(n):
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise UsageError(f"level n must be an integer ≥ 1 (got {n!r})")


@lru_cache(maxsize=None)
def _symbolic_poly(d, n):
    return _BUILDERS[d](n)


def build_hodge_poly(d, n, invariants=None):
    """Fully expanded generating polynomial with exponent scale d.

    Coefficients are LinForms over the order-d namespace unless
    ``invariants`` is given, in which case they are evaluated.
    """
    check_order(d)
    _check_level(n)
    poly = _symbolic_poly(d, n)
    if invariants is None:
        return poly
    _check_matching_order(d, invariants)
    return poly.evaluate(invariants.assignment())


def _check_matching_order(d, invariants):
    if invariants.order != d:
        raise UsageError(f"invariant set has order {invariants.order}, expected {d}")


@lru_cache(maxsize=None)
def hodge_numbers(d, n):
    """Symbolic grid h[p][q] (LinForms) for Y_{d,n}, 0 ≤ p, q ≤ n+1."""
    poly = build_hodge_poly(d, n)
    dim = n + 1
    grid = [[LinForm(0) for _ in range(dim + 1)] for _ in range(dim + 1)]
    for (p, q), c in poly.integer_part().items():
        if p > dim or q > dim:
            raise InternalConsistencyError(
                f"integer monomial X^{p}Y^{q} outside the diamond of dimension {dim}"
            )
        grid[p][q] = LinForm.coerce(c)
    return tuple(tuple(row) for row in grid)


@dataclass(frozen=True)
class HodgeDiamond:
    dim: int
    h: tuple

    def __post_init__(self):
        size = self.dim + 1
        if len(self.h) != size or any(len(row) != size for row in self.h):
            raise UsageError(f"Hodge grid must be {size}x{size}")

    @classmethod
    def from_grid(cls, grid):
        grid = tuple(tuple(int(x) for x in row) for row in grid)
        return cls(len(grid) - 1, grid)

    def euler(self):
        return sum((-1) ** (p + q) * x for p, row in enumerate(self.h) for q, x in enumerate(row))

    def to_json(self):
        return {"dim": self.dim, "h": [list(row) for row in self.h]}

    def __str__(self):
        # rows of constant p+q, top row h^{dim,dim}
        dim = self.dim
        rows = []
        for s in range(2 * dim, -1, -1):
            entries = [str(self.h[p][s - p]) for p in range(dim, -1, -1) if 0 <= s - p <= dim]
            rows.append(entries)
        width = max(len(x) for row in rows for x in row)
        lines = []
        for row in rows:
            cells = "   ".join(x.center(width) for x in row)
            pad = (width + 3) * (dim + 1 - len(row)) // 2
            lines.append(" " * pad + cells)
        return "\n".join(line.rstrip() for line in lines)


def hodge_diamond(d, n, invariants):
    """Numeric diamond of Y_{d,n}; fails on negative or fractional entries."""
    check_order(d)
    _check_level(n)
    _check_matching_order(d, invariants)
    values = invariants.assignment()
    grid = []
    for p, row in enumerate(hodge_numbers(d, n)):
        out = []
        for q, form in enumerate(row):
            x = form.evaluate(values)
            if x.denominator != 1:
                raise InconsistentInvariantsError(
                    f"h^{{{p},{q}}} = {x} is not an integer", position=(p, q)
                )
            if x < 0:
                raise InconsistentInvariantsError(
                    f"h^{{{p},{q}}} = {x} is negative", position=(p, q)
                )
            out.append(int(x))
        grid.append(out)
    return HodgeDiamond.from_grid(grid)


@dataclass(frozen=True)
class ShapeReport:
    checks: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(not v for v in self.checks.values())

    def failures(self):
        return {k: v for k, v in self.checks.items() if v}

    def to_json(self):
        return {
            "passed": self.passed,
            "checks": {k: [list(x) for x in v] for k, v in self.checks.items()},
        }


SHAPE_MESSAGES = {
    "non_negative": "h^{p,q} must be non-negative",
    "h00": "h^{0,0} must equal 1",
    "hodge_symmetry": "h^{p,q} must equal h^{q,p}",
    "serre_duality": "h^{p,q} must equal h^{dim-p,dim-q}",
    "hp0_vanishing": "h^{p,0} must vanish for 0<p<dim",
    "hdim0": "h^{dim,0} must equal 1",
}


def verify_cy_shape(diamond):
    """Check the Calabi-Yau shape of a diamond; violations carry (p, q)."""
    h, dim = diamond.h, diamond.dim
    cells = [(p, q) for p in range(dim + 1) for q in range(dim + 1)]
    checks = {
        "non_negative": [(p, q) for p, q in cells if h[p][q] < 0],
        "h00": [] if h[0][0] == 1 else [(0, 0)],
        "hodge_symmetry": [(p, q) for p, q in cells if p < q and h[p][q] != h[q][p]],
        "serre_duality": [
            (p, q) for p, q in cells if (p, q) < (dim - p, dim - q) and h[p][q] != h[dim - p][dim - q]
        ],
        "hp0_vanishing": [(p, 0) for p in range(1, dim) if h[p][0] != 0],
        "hdim0": [] if h[dim][0] == 1 else [(dim, 0)],
    }
    return ShapeReport(checks)

import cmath
import random

import pytest

from k3borcea.algebra import CyclotomicNumber as C, parse_linform as P
from k3borcea.errors import UsageError
from k3borcea.k3data import NAMESPACES, ORDERS
from k3borcea.lefschetz import (
    EIGENSPACES,
    curve_contribution,
    derive_lefschetz_relations,
    hol_expected,
    hol_lefschetz_local,
    k3_self_intersection,
    normalize,
    point_contribution,
    top_lefschetz_eigen,
    top_lefschetz_fix,
)
from k3borcea.relations import random_consistent_set


def prim(text, d):
    return normalize(P(text), d)


def test_top_eigen_examples():
    assert top_lefschetz_eigen(6, 1) == P("2 + r + m - alpha - beta")
    assert top_lefschetz_eigen(6, 3) == P("2 + r + 2*alpha - beta - 2*m")
    assert top_lefschetz_eigen(4, 1) == P("2*r + 2*m - 20")


def test_top_fix_examples():
    assert top_lefschetz_fix(6, 1) == P("2*l - 2*gD + p34 + p25")
    assert top_lefschetz_fix(4, 2) == P("2*N - 2*gD")


def _numeric_trace(d, j, dims):
    """Oracle: sum of dim * exp(2 pi i k j / d) in floating point."""
    total = 2
    for k, dim in enumerate(dims):
        total += dim * cmath.exp(2j * cmath.pi * k * j / d)
    return total


@pytest.mark.parametrize("d", ORDERS)
def test_trace_is_rational_and_matches_float(d):
    rng = random.Random(d)
    names = NAMESPACES[d]
    for _ in range(20):
        point = {s: rng.randint(0, 9) for s in names}
        dims = [form.evaluate(point) for form in EIGENSPACES[d]]
        for j in range(1, d):
            exact = top_lefschetz_eigen(d, j).evaluate(point)
            assert abs(exact - _numeric_trace(d, j, [float(x) for x in dims])) < 1e-9


def test_local_terms():
    z = C.zeta(6)
    assert point_contribution(6, (3, 4)) == 1 / C(6, [2, 2])
    assert hol_lefschetz_local(6, curves=[(0, -2)]) == (1 + z) / (1 - z) ** 2
    assert hol_lefschetz_local(6) == 0
    assert k3_self_intersection(0) == -2
    assert curve_contribution(6, 0) == curve_contribution(6, 0, -2)
    with pytest.raises(UsageError):
        point_contribution(6, (0, 1))
    with pytest.raises(UsageError):
        point_contribution(6, (2, 2))


def test_expected_value():
    assert hol_expected(6) == 1 + C.zeta(6, 5)
    assert hol_expected(4) == 1 + C.zeta(4, 3)
    assert abs(hol_expected(6).to_complex() - complex(1.5, -0.8660254037844386)) < 1e-9


def test_point_term_matches_float():
    for d, (i, j) in ((6, (2, 5)), (6, (3, 4)), (4, (2, 3))):
        u = cmath.exp(2j * cmath.pi / d)
        expected = 1 / ((1 - u**i) * (1 - u**j))
        assert abs(point_contribution(d, (i, j)).to_complex() - expected) < 1e-9


def test_derived_relations_order6():
    rels = {r.name: r.form for r in derive_lefschetz_relations(6)}
    assert rels["top(alpha^1)"] == prim("2 + r + m - alpha - beta - 2*l + 2*gD - p34 - p25", 6)
    assert rels["top(alpha^2)"] == prim("-alpha + beta + r + 2 - m - 2*k + 2*gG", 6)
    assert rels["top(alpha^3)"] == prim("2 + r + 2*alpha - beta - 2*m - 2*N + 2*gF1 + 2*gF2", 6)
    assert rels["hol(alpha)"] == prim("3 + 3*l - 3*gD - p34/2 - p25", 6)
    assert rels["hol(alpha)"] == prim("6 + 6*l - 6*gD - p34 - 2*p25", 6)


def test_derived_relations_order4():
    rels = {r.name: r.form for r in derive_lefschetz_relations(4)}
    assert rels["top(alpha^1)"] == prim("-20 + 2*r + 2*m - n1 - n2 - 2*k + 2*gD", 4)
    assert rels["top(alpha^2)"] == prim("N - gD - 12 + 2*m", 4)
    assert rels["hol(alpha)"] == prim("4 + 2*k - 2*gD - n1 - n2", 4)


@pytest.mark.parametrize("d", ORDERS)
def test_routes_agree_on_consistent_sets(d):
    rng = random.Random(7)
    for _ in range(10):
        inv = random_consistent_set(d, rng)
        for j in range(1, d):
            assert top_lefschetz_eigen(d, j, inv) == top_lefschetz_fix(d, j, inv, isolated_points=False)

import json
from math import gcd

import pytest
from hypothesis import given, strategies as st

from k3borcea.algebra import parse_linform as P
from k3borcea.errors import ParseError, UsageError, ValidationError
from k3borcea.k3data import (
    INVARIANT_CLASSES,
    NAMESPACES,
    ORDERS,
    elliptic_fixed_count,
    fixed_locus_euler,
    make_invariants,
    parse_invariants,
    serialize_invariants,
)


def doc(order, **values):
    return json.dumps({"order": order, "invariants": values})


def test_parse_order2():
    inv = parse_invariants(doc(2, r=10, m=12, N=1, Nprime=1))
    assert (inv.order, inv.r, inv.m, inv.N, inv.Nprime) == (2, 10, 12, 1, 1)


def test_negative_value_rejected():
    with pytest.raises(ValidationError, match="r must be ≥ 0"):
        parse_invariants(doc(2, r=-1, m=12, N=1, Nprime=1))


def test_bad_order_rejected():
    with pytest.raises(ValidationError, match="order must be one of 2,3,4,6"):
        parse_invariants(doc(5, r=1))


def test_unknown_and_missing_keys():
    with pytest.raises(ValidationError, match="unknown invariant"):
        parse_invariants(doc(2, r=10, m=12, N=1, Nprime=1, nprime=0))
    with pytest.raises(ValidationError, match="missing invariant.*N, Nprime"):
        parse_invariants(doc(2, r=10, m=12))


def test_malformed_documents():
    with pytest.raises(ParseError):
        parse_invariants("{not json")
    with pytest.raises(ParseError):
        parse_invariants("[1, 2]")
    with pytest.raises(ValidationError):
        parse_invariants(json.dumps({"order": 2, "invariants": {}, "extra": 1}))
    with pytest.raises(ValidationError):
        parse_invariants(doc(2, r=1.5, m=12, N=1, Nprime=1))
    with pytest.raises(ValidationError):
        parse_invariants(doc(2, r=True, m=12, N=1, Nprime=1))


@pytest.mark.parametrize("d", ORDERS)
@given(data=st.data())
def test_round_trip(d, data):
    names = NAMESPACES[d]
    values = {s: data.draw(st.integers(0, 40)) for s in names}
    name = data.draw(st.one_of(st.none(), st.text(max_size=10)))
    inv = make_invariants(d, values, name=name)
    text = serialize_invariants(inv)
    back = parse_invariants(text)
    assert back == inv
    assert serialize_invariants(back) == text


def test_namespaces_match_classes():
    for d, cls in INVARIANT_CLASSES.items():
        assert cls.symbols() == NAMESPACES[d]


def test_fixed_locus_examples():
    assert fixed_locus_euler(6, 3) == P("2*N - 2*gF1 - 2*gF2")
    assert fixed_locus_euler(6, 0) == P("24")
    assert fixed_locus_euler(4, 1) == P("n1 + n2 + 2*k - 2*gD")
    assert fixed_locus_euler(6, 2) == P("2*k - 2*gG + npts")
    assert fixed_locus_euler(6, 2, isolated_points=False) == P("2*k - 2*gG")
    assert fixed_locus_euler(6, 1) == P("2*l - 2*gD + p34 + p25")
    assert fixed_locus_euler(2, 1) == P("2*N - 2*Nprime")


@pytest.mark.parametrize("d", ORDERS)
def test_fixed_locus_depends_on_gcd(d):
    for j in range(1, d):
        assert fixed_locus_euler(d, j) == fixed_locus_euler(d, gcd(j, d))
    with pytest.raises(UsageError):
        fixed_locus_euler(d, d)


def _torus_fixed_points(d, j):
    """Count fixed points of z -> u^j z on C / (Z + Z tau) by brute force on
    the lattice: 1 - u^j has norm |1 - u^j|^2, which is the number of fixed
    points of a torus endomorphism given by multiplication by 1 - u^j."""
    import cmath

    u = cmath.exp(2j * cmath.pi / d)
    return round(abs(1 - u**j) ** 2)


def test_elliptic_counts():
    expected = {(2, 1): 4, (6, 1): 1, (6, 2): 3, (6, 3): 4, (4, 1): 2, (4, 2): 4, (3, 1): 3, (3, 2): 3}
    for (d, j), count in expected.items():
        assert elliptic_fixed_count(d, j) == count
        # independent oracle: degree of the isogeny 1 - u^j
        assert _torus_fixed_points(d, j) == count
    for d in ORDERS:
        assert elliptic_fixed_count(d, 0) == 0
        for j in range(1, d):
            assert elliptic_fixed_count(d, j) == elliptic_fixed_count(d, gcd(j, d))

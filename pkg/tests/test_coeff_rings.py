import itertools

import pytest
from hypothesis import given, settings, strategies as st

from bredon_quadrics.bigraded_core import BiDegree, FgAbGroup
from bredon_quadrics.coeff_rings import (
    AElem, BElem, a_group, a_mul, b_degree, b_group, b_monomials_in_window, b_mul, b_order,
    b_to_a, theta_derivations, verify_coefficient_ring,
)

P = BElem.parse
WINDOW = b_monomials_in_window(range(-6, 7), range(-10, 11))


def test_relations():
    assert b_mul(P("a"), P("t")) == P("2")
    assert b_mul(P("a"), P("a")) == P("2*a*t^-1")
    assert b_mul(P("th"), P("e")).terms == ()
    assert b_mul(P("th"), P("t")).terms == ()
    assert b_mul(P("a"), P("e")).terms == ()


def test_projection_examples():
    assert b_to_a(P("t^-1*a")) == AElem.parse("2*t^-2")
    assert b_to_a(P("e^2*t^3")) == AElem.parse("e^2*t^3")
    assert b_to_a(P("th")).terms == ()


def test_group_examples():
    assert b_group((1, 1)).group == FgAbGroup(0, (2,))
    assert b_group((1, 1)).basis == ("e",)
    assert b_group((0, 2)).group == FgAbGroup(1)
    assert b_group((3, -1)).group == FgAbGroup(0)
    assert b_group((0, -3)).group == FgAbGroup(0, (2,))   # theta
    assert a_group((1, -1)) == FgAbGroup(0, (2,))
    assert a_group((0, -2)) == FgAbGroup(1)
    assert a_group((0, 1)) == FgAbGroup(0)


def test_degrees_and_orders():
    assert b_degree(("A", 0)) == BiDegree(0, -2)
    assert b_degree(("T", 0, 0)) == BiDegree(0, -3)
    assert b_degree(("P", 1, 1)) == BiDegree(1, 3)
    assert b_order(("P", 0, 4)) == 0 and b_order(("P", 1, 0)) == 2
    assert b_order(("T", 2, 1)) == 2 and b_order(("A", 3)) == 0


def test_parse_rejects_bad_input():
    with pytest.raises(ValueError):
        P("t^-1")          # not in the point ring
    with pytest.raises(ValueError):
        P("q")
    with pytest.raises(ValueError):
        P("e*a")


def test_theta_conventions_are_derived():
    claims = {d["claim"]: d["holds"] for d in theta_derivations()}
    assert claims == {"2*theta = 0": True, "theta^2 = 0": True}


def test_full_sweep():
    res = verify_coefficient_ring()
    assert res["ok"] and all(res["relations"].values())


# -- window checks

def test_no_classes_when_pq_negative():
    for key in WINDOW:
        d = b_degree(key)
        assert d.p * d.q >= 0
    for p, q in itertools.product(range(-6, 7), range(-10, 11)):
        if p * q < 0:
            assert b_group((p, q)).group.is_zero


def test_projection_is_multiplicative_on_window():
    small = [k for k in WINDOW if abs(b_degree(k).p) <= 3 and abs(b_degree(k).q) <= 6]
    for x, y in itertools.product(small, repeat=2):
        bx, by = BElem.mono(x), BElem.mono(y)
        assert b_to_a(b_mul(bx, by)) == a_mul(b_to_a(bx), b_to_a(by))


def test_tau_invertible_and_eps_torsion():
    t, tinv, e = AElem.mono(0, 1), AElem.mono(0, -1), AElem.mono(1, 0)
    assert a_mul(t, tinv) == AElem.parse("1")
    for a, b in itertools.product(range(4), range(-3, 4)):
        x = a_mul(e, AElem.mono(a, b))
        assert a_mul(AElem.parse("2"), x).terms == ()


# -- properties

keys = st.sampled_from(WINDOW)
elems = st.lists(st.tuples(keys, st.integers(-3, 3)), max_size=3).map(
    lambda ts: BElem.from_dict(dict(ts)))


@settings(max_examples=200, deadline=None)
@given(keys, keys, keys)
def test_b_mul_associative_commutative_additive(x, y, z):
    X, Y, Z = BElem.mono(x), BElem.mono(y), BElem.mono(z)
    assert b_mul(X, Y) == b_mul(Y, X)
    assert b_mul(b_mul(X, Y), Z) == b_mul(X, b_mul(Y, Z))
    for d in b_mul(X, Y).degrees():
        assert d == b_degree(x) + b_degree(y)


@settings(max_examples=200, deadline=None)
@given(elems, elems, elems)
def test_b_mul_distributes(x, y, z):
    assert b_mul(x, y + z) == b_mul(x, y) + b_mul(x, z)


@settings(max_examples=200, deadline=None)
@given(elems)
def test_b_parse_round_trip(x):
    assert P(str(x)) == x


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(-4, 4), st.integers(-3, 3)),
                max_size=4))
def test_a_parse_round_trip(ts):
    x = AElem.from_dict({(a, b): c for a, b, c in ts})
    assert AElem.parse(str(x)) == x

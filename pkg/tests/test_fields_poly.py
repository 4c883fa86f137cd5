from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dgkoszul import PrimeField, RationalField, PolyRing, GREVLEX, LEX, order_compare
from dgkoszul.fields import FieldError
from dgkoszul.poly import RingMismatchError

F = PrimeField()
QQ = RationalField()


def test_default_prime():
    assert F.p == 32003


def test_prime_validation():
    with pytest.raises(FieldError):
        PrimeField(32001)  # 3 * 10667


scalars_p = st.integers(min_value=0, max_value=F.p - 1)
scalars_q = st.fractions(max_denominator=20)


@settings(max_examples=100, deadline=None)
@given(scalars_p, scalars_p, scalars_p)
def test_field_axioms_prime(a, b, c):
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    if a != 0:
        assert F.mul(a, F.inv(a)) == 1


@settings(max_examples=100, deadline=None)
@given(scalars_q, scalars_q, scalars_q)
def test_field_axioms_rationals(a, b, c):
    assert QQ.add(QQ.add(a, b), c) == QQ.add(a, QQ.add(b, c))
    assert QQ.mul(a, QQ.add(b, c)) == QQ.add(QQ.mul(a, b), QQ.mul(a, c))
    if a != 0:
        assert QQ.mul(a, QQ.inv(a)) == Fraction(1)


# ---- monomial orders ----

def _grevlex_textbook(a, b):
    """Independent comparator: higher total degree wins; on ties the
    monomial with the smaller exponent in the last differing variable is
    larger (the textbook grevlex definition)."""
    if sum(a) != sum(b):
        return 1 if sum(a) > sum(b) else -1
    for i in reversed(range(len(a))):
        if a[i] != b[i]:
            return 1 if a[i] < b[i] else -1
    return 0


@settings(max_examples=200, deadline=None)
@given(
    st.tuples(*[st.integers(0, 6)] * 3),
    st.tuples(*[st.integers(0, 6)] * 3),
)
def test_grevlex_matches_textbook_definition(a, b):
    assert order_compare(a, b, GREVLEX) == _grevlex_textbook(a, b)


def test_grevlex_y2_beats_xz():
    # y^2 vs x*z in k[x,y,z]
    assert order_compare((0, 2, 0), (1, 0, 1), GREVLEX) == 1


def test_lex_x_beats_high_power_of_y():
    assert order_compare((1, 0, 0), (0, 100, 0), LEX) == 1


def test_order_reflexive():
    assert order_compare((1, 2, 3), (1, 2, 3), GREVLEX) == 0


@settings(max_examples=200, deadline=None)
@given(
    st.tuples(*[st.integers(0, 5)] * 3),
    st.tuples(*[st.integers(0, 5)] * 3),
    st.tuples(*[st.integers(0, 5)] * 3),
)
@pytest.mark.parametrize("order", [GREVLEX, LEX])
def test_orders_are_multiplicative(order, a, b, c):
    before = order_compare(a, b, order)
    ac = tuple(x + y for x, y in zip(a, c))
    bc = tuple(x + y for x, y in zip(b, c))
    assert order_compare(ac, bc, order) == before


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        order_compare((1, 0), (1, 0, 0), GREVLEX)


# ---- polynomial arithmetic ----

def test_ring_context_mismatch():
    r1 = PolyRing(("x", "y"), F)
    r2 = PolyRing(("x", "z"), F)
    with pytest.raises(RingMismatchError):
        r1.var(0) + r2.var(0)


def test_product_of_sum_and_difference():
    r = PolyRing(("x", "y"), F)
    x, y = r.var(0), r.var(1)
    assert (x + y) * (x - y) == x * x - y * y


def test_multiplication_by_zero_absorbs():
    r = PolyRing(("x", "y"), F)
    p = r.var(0) * r.var(1) + r.const(7)
    assert (p * r.zero).is_zero()


def test_small_characteristic_wraps():
    f5 = PrimeField(5)
    r = PolyRing(("x",), f5)
    x = r.var(0)
    assert x.scale(3) * x.scale(2) == x * x  # 6 = 1 mod 5


def test_homogeneous_degree():
    r = PolyRing(("x", "y"), F)
    x, y = r.var(0), r.var(1)
    assert (x * y).homogeneous_degree() == 2
    assert (x + x * y).homogeneous_degree() is None
    assert r.zero.homogeneous_degree() is None

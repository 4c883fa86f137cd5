from __future__ import annotations

import pytest

from dgkoszul import PrimeField, PolyRing, parse_poly, quotient_ring_from_strings

FIELD = PrimeField()


def ring(*variables, ideal=(), field=FIELD):
    return quotient_ring_from_strings(variables, list(ideal), field)


def poly(text, Q):
    return parse_poly(text, Q.poly_ring)


@pytest.fixture
def field():
    return FIELD

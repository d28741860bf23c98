from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given

from orbivertex.cyclo import Cyclo, I, cyclo, cyclotomic_poly, root_of_unity, totient

from conftest import cyclos


def test_basic_roots():
    assert cyclo(4, 2) == -1
    assert cyclo(1, 0) == 1
    assert cyclo(8, 4) == -1
    assert cyclo(3, 3) == 1


def test_field_examples():
    assert (1 + I) * (1 - I) == 2
    assert cyclo(3, 1).inverse() == cyclo(3, 2)
    assert cyclo(6, 1) + cyclo(6, 5) == 1


def test_sixth_root_minimal_polynomial():
    z = cyclo(6, 1)
    assert z * z - z + 1 == 0


@pytest.mark.parametrize("n", range(1, 25))
def test_inverse_pairs_and_root_sums(n):
    total = Cyclo.from_rational(0, n)
    for k in range(n):
        assert cyclo(n, k) * cyclo(n, n - k) == 1
        total = total + cyclo(n, k)
    if n >= 2:
        assert total == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 9, 12, 15])
def test_cyclotomic_degree(n):
    assert len(cyclotomic_poly(n)) - 1 == totient(n)


@given(cyclos())
def test_lift_and_reduce_roundtrip(x):
    lifted = x.lift(x.n * 6)
    assert lifted == x
    assert lifted.reduce_conductor() == x.reduce_conductor()
    assert lifted.reduce_conductor().n <= x.n


@given(cyclos(), cyclos(), cyclos())
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    if x:
        assert x * x.inverse() == 1


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        Cyclo.from_rational(0, 4).inverse()


def test_rational_equality_across_conductors():
    assert Cyclo.from_rational(Fraction(1, 3), 12) == Fraction(1, 3)
    assert cyclo(12, 6) == cyclo(2, 1)


def test_root_of_unity_and_text():
    assert root_of_unity(Fraction(1, 4)) == I
    assert (I * Fraction(-1, 12)).to_text() == "-i/12"
    assert (1 + I * Fraction(3, 4)).to_text() == "1+3i/4"
    assert "ζ3" in cyclo(3, 1).to_text()


@given(cyclos())
def test_json_roundtrip(x):
    obj = json.loads(json.dumps(x.to_json()))
    assert Cyclo.from_json(obj) == x

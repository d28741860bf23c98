from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orbivertex.hurwitz import (
    ResourceLimitError,
    brute_force_hurwitz,
    hurwitz_number,
    hurwitz_number_r,
    phi,
    phi_compose_check,
    phi_init_check,
    phi_parity_check,
)
from orbivertex.partitions import partitions, z_factor
from orbivertex.series import MultiSeries, TruncationSpec, exp_series

from conftest import partition_strategy


def test_phi_examples():
    assert phi((1,), (1,), 6) == 1
    spec = TruncationSpec.of(hbar=6)
    h = MultiSeries.var("hbar", spec)
    assert phi((2,), (2,), 6) == (exp_series(h) + exp_series(-h)) * Fraction(1, 4)
    assert phi((2,), (1, 1), 3).constant_term() == 0


def test_phi_order_four_coefficients():
    f = phi((2,), (2,), 4)
    assert [f.coeff(hbar=k) for k in range(5)] == [Fraction(1, 2), 0, Fraction(1, 4), 0, Fraction(1, 48)]


def test_phi_size_mismatch():
    with pytest.raises(ValueError):
        phi((2,), (1,), 3)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_compose(d):
    for nu in partitions(d):
        for mu in partitions(d):
            assert phi_compose_check(nu, mu, 4)


@given(st.integers(1, 4).flatmap(lambda d: st.tuples(st.sampled_from(partitions(d)), st.sampled_from(partitions(d)))))
def test_symmetry_parity_init(pair):
    nu, mu = pair
    assert phi(nu, mu, 5) == phi(mu, nu, 5)
    assert phi_parity_check(nu, mu, 5)
    assert phi_init_check(nu, mu)


def test_hurwitz_examples():
    assert hurwitz_number(0, (2,), (2,)) == Fraction(1, 2)
    assert hurwitz_number(2, (2,), (1, 1)) == Fraction(1, 2)
    for r in range(1, 5):
        assert hurwitz_number_r(r, (1,), (1,)) == 0


def test_brute_force_examples():
    assert brute_force_hurwitz(2, (2,), (2,)) == Fraction(1, 2)
    assert brute_force_hurwitz(1, (2,), (1, 1)) == Fraction(1, 2)


@given(partition_strategy(5, min_size=1))
def test_brute_force_r0_is_inverse_z(nu):
    assert brute_force_hurwitz(0, nu, nu) == Fraction(1, z_factor(nu))


@pytest.mark.parametrize("d", [1, 2, 3, 4])
@pytest.mark.parametrize("r", [0, 1, 2, 3])
def test_burnside_vs_brute_force(d, r):
    for nu in partitions(d):
        for mu in partitions(d):
            assert brute_force_hurwitz(r, nu, mu) == hurwitz_number_r(r, nu, mu)


def test_negative_branch_count_rejected():
    with pytest.raises(ValueError):
        hurwitz_number(5, (1,), (1,))


def test_brute_force_budget():
    with pytest.raises(ResourceLimitError):
        brute_force_hurwitz(2, (7,), (7,))
    with pytest.raises(ResourceLimitError):
        brute_force_hurwitz(5, (2,), (2,))

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from orbivertex.characters import char_table, central_transposition, central_transposition_ratio, chi
from orbivertex.partitions import conjugate, dimension, kappa, partitions, z_factor

from conftest import partition_strategy


def test_examples():
    assert all(chi((4,), mu) == 1 for mu in partitions(4))
    assert chi((1, 1), (2,)) == -1
    assert chi((2, 1), (1, 1, 1)) == 2
    assert chi((), ()) == 1


def test_size_mismatch():
    with pytest.raises(ValueError):
        chi((2,), (1,))


@pytest.mark.parametrize("d", range(1, 9))
def test_orthogonality(d):
    t = char_table(d)
    ps = t.parts
    for lam in ps:
        for rho in ps:
            assert sum(Fraction(t(lam, mu) * t(rho, mu), z_factor(mu)) for mu in ps) == (lam == rho)
            assert sum(t(eta, lam) * t(eta, rho) for eta in ps) == (z_factor(lam) if lam == rho else 0)
    assert sum(t(lam, (1,) * d) ** 2 for lam in ps) == factorial(d)


same_size_pair = st.integers(1, 8).flatmap(
    lambda d: st.tuples(st.sampled_from(partitions(d)), st.sampled_from(partitions(d)))
)


@given(same_size_pair)
def test_conjugation_sign_rule(pair):
    lam, mu = pair
    sign = (-1) ** (mu.size - len(mu))
    assert chi(conjugate(lam), mu) == sign * chi(lam, mu)


@given(partition_strategy(8, min_size=1))
def test_dimension_matches_hook_length(lam):
    assert chi(lam, (1,) * lam.size) == dimension(lam)


def test_central_transposition_examples():
    assert central_transposition((2,)) == 1
    assert central_transposition((1, 1)) == -1
    assert central_transposition((3, 1)) == 2
    assert central_transposition_ratio((3, 1)) == 2


@given(partition_strategy(8, min_size=2))
def test_central_character_two_ways(eta):
    assert central_transposition(eta) == central_transposition_ratio(eta) == Fraction(kappa(eta), 2)
    d = eta.size
    assert comb(d, 2) * chi(eta, (2,) + (1,) * (d - 2)) == Fraction(kappa(eta), 2) * chi(eta, (1,) * d)


def test_table_is_cached_and_serializable():
    assert char_table(5) is char_table(5)
    obj = char_table(3).to_json()
    assert obj["partitions"] == ["(3)", "(2,1)", "(1,1,1)"]
    assert obj["values"][1] == [-1, 0, 2]

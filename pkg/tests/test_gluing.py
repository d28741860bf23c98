from __future__ import annotations

from fractions import Fraction

import pytest

from orbivertex.gluing import (
    FootballParams,
    conifold_log,
    conifold_log_expanded,
    conifold_log_of_sum,
    football_alphabets,
    football_direct_product,
    football_product,
    football_sum,
    unrefined_conifold_product,
    unrefined_limit,
)
from orbivertex.series import MultiSeries, TruncationSpec, exp_series, geom_inverse, log_series
from orbivertex.symfunc import cauchy_product, monomial, twisted_rays

HALF = Fraction(1, 2)


def mono(spec, coef=1, **e):
    return MultiSeries.monomial(spec, e, coef)


def inv_1m(spec, **e):
    return geom_inverse(1 - mono(spec, **e))


def test_football_q1_examples():
    params = FootballParams(1, 1, 2, 6)
    spec = TruncationSpec.of(t=6, q=6)
    z = football_sum(params)
    assert z.coefficient("Q", 0) == 1
    expected = -mono(spec, t=HALF, q=HALF) * inv_1m(spec, t=1) * inv_1m(spec, q=1)
    assert z.coefficient("Q", 1) == expected
    z21 = football_sum(FootballParams(2, 1, 1, 6))
    twist = mono(spec, q_1=HALF) + mono(spec, q_1=-HALF)
    assert z21.coefficient("Q", 1) == expected * twist
    assert football_product(FootballParams(2, 1, 1, 6)).coefficient("Q", 1) == expected * twist


def test_q_order_zero():
    params = FootballParams(2, 2, 0, 4)
    assert football_sum(params) == 1
    assert football_product(params) == 1


def test_params_validation():
    with pytest.raises(ValueError):
        FootballParams(0, 1)
    with pytest.raises(ValueError):
        FootballParams(1, 1, -1)


@pytest.mark.parametrize("ab", [(1, 1), (2, 1), (1, 2)])
def test_sum_equals_product(ab):
    params = FootballParams(*ab, 2, 4)
    z = football_sum(params)
    assert z == football_product(params)
    assert z == football_direct_product(params)


def test_threads_are_deterministic():
    one = football_sum(FootballParams(2, 1, 3, 4, threads=1))
    many = football_sum(FootballParams(2, 1, 3, 4, threads=4))
    assert one == many
    assert one.to_json() == many.to_json()


def test_swap_symmetry():
    z_ab = football_sum(FootballParams(2, 1, 2, 4))
    z_ba = football_sum(FootballParams(1, 2, 2, 4))
    swap = {"t": "q", "q": "t", "q_1": "s_1", "s_1": "q_1"}
    assert z_ab.rename(swap) == z_ba


def test_prefactor_per_point_negative_control():
    # dropping the fractional twist prefactor from the points breaks sum = product at a = 2
    params = FootballParams(2, 1, 2, 4)
    _, B = football_alphabets(2, 1)
    A_bare = twisted_rays(2, "t", "q", monomial(t=HALF))
    assert cauchy_product(A_bare, B, params.trunc) != football_sum(params)
    assert football_product(params) == football_sum(params)


def test_conifold_log_examples():
    spec = TruncationSpec.of(t=6, q=6)
    f = conifold_log(2, 6)
    one = -mono(spec, t=HALF, q=HALF) * inv_1m(spec, t=1) * inv_1m(spec, q=1)
    two = -mono(spec, HALF, t=1, q=1) * inv_1m(spec, t=2) * inv_1m(spec, q=2)
    assert f.coefficient("Q", 1) == one
    assert f.coefficient("Q", 2) == two
    assert f == conifold_log_expanded(2, 6)
    with pytest.raises(ValueError):
        conifold_log(0, 4)


def test_conifold_exp_log_roundtrip():
    closed = conifold_log(3, 6)
    params = FootballParams(1, 1, 3, 6)
    assert exp_series(closed) == football_product(params)
    assert conifold_log_of_sum(3, 6) == closed


def test_single_bps_state():
    # log Z is the Adams sum of its Q^1 coefficient: [Q^d] = (1/d) f(t^d, q^d)
    logz = log_series(football_sum(FootballParams(1, 1, 3, 6)))
    first = logz.coefficient("Q", 1)
    spec = TruncationSpec.of(t=6, q=6)
    for d in (2, 3):
        adams = MultiSeries.from_terms(spec, [({v: e * d for v, e in exps.items()}, c) for exps, c in first.items()])
        assert logz.coefficient("Q", d) == adams * Fraction(1, d)


def test_unrefined_examples():
    s = TruncationSpec()
    assert unrefined_limit(MultiSeries.const(1, s)) == 1
    assert unrefined_limit(mono(s, t=HALF, q=HALF)) == mono(s, t=1)
    z = unrefined_limit(football_sum(FootballParams(1, 1, 2, 6)))
    spec = TruncationSpec.of(t=6)
    assert z.coefficient("Q", 1) == -mono(spec, t=1) * inv_1m(spec, t=1) ** 2


def test_unrefined_conifold():
    z = football_sum(FootballParams(1, 1, 3, 6))
    assert unrefined_limit(z) == unrefined_conifold_product(3, 6)


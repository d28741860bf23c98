from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, strategies as st

from orbivertex.partitions import Partition, partitions
from orbivertex.series import MultiSeries, TruncationSpec, geom_inverse
from orbivertex.symfunc import (
    FiniteAlphabet,
    GeometricRay,
    ShiftedRay,
    cauchy_product,
    complete_h,
    dual_cauchy_sum,
    hook_principal,
    jacobi_trudi,
    monomial,
    power_sum,
    schur,
    skew_schur,
    t_rho,
    twisted_rays,
)

from conftest import partition_strategy

T8 = TruncationSpec.of(t=8)
T_TILDE = GeometricRay("t")
HALF = Fraction(1, 2)


def mono(spec, **e):
    return MultiSeries.monomial(spec, e)


def inv_1m(spec, **e):
    return geom_inverse(1 - mono(spec, **e))


def test_power_sum_examples():
    assert power_sum(T_TILDE, 1, T8) == inv_1m(T8, t=1)
    assert power_sum(t_rho(), 2, T8) == mono(T8, t=1) * inv_1m(T8, t=2)
    spec = TruncationSpec.of(t=6, q=6)
    expected = mono(spec, t=HALF, q=-1) + mono(spec, t=Fraction(3, 2)) * inv_1m(spec, t=1)
    assert power_sum(ShiftedRay(Partition((1,))), 1, spec) == expected


@pytest.mark.parametrize("alphabet", [T_TILDE, t_rho(), ShiftedRay(Partition((2, 1)), "t", "x")])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_power_sum_matches_finite_truncation(alphabet, k):
    M = 7
    spec = TruncationSpec.of(t=M - 1)
    if isinstance(alphabet, ShiftedRay):
        nu = tuple(alphabet.nu) + (0,) * M
        pts = [{"t": i - HALF, "x": -nu[i - 1]} for i in range(1, M + 1)]
    else:
        pre = dict(alphabet.prefactor)
        pts = [{"t": pre.get("t", 0) + i} for i in range(M)]
    finite = FiniteAlphabet.of(*pts)
    assert power_sum(alphabet, k, spec) == power_sum(finite, k, spec)


def test_schur_examples():
    assert schur((1,), t_rho(), T8) == mono(T8, t=HALF) * inv_1m(T8, t=1)
    assert schur((2,), T_TILDE, T8) == inv_1m(T8, t=1) * inv_1m(T8, t=2)
    assert schur((), T_TILDE, T8) == 1


def test_hook_principal_examples():
    assert hook_principal((1,), T8) == inv_1m(T8, t=1)
    assert hook_principal((1, 1), T8) == mono(T8, t=1) * inv_1m(T8, t=1) * inv_1m(T8, t=2)
    expected = mono(T8, t=1) * inv_1m(T8, t=1) * inv_1m(T8, t=1) * inv_1m(T8, t=3)
    assert hook_principal((2, 1), T8) == expected


def test_skew_examples():
    assert skew_schur((2,), (1,), T_TILDE, T8) == inv_1m(T8, t=1)
    assert skew_schur((3, 1), (3, 1), T_TILDE, T8) == 1
    assert skew_schur((1,), (2,), T_TILDE, T8) == 0
    assert skew_schur((2, 1), (1, 1, 1), T_TILDE, T8) == 0


@given(partition_strategy(6))
def test_schur_triangle(lam):
    spec = TruncationSpec.of(t=10)
    a = schur(lam, T_TILDE, spec)
    assert a == jacobi_trudi(lam, T_TILDE, spec)
    assert a == hook_principal(lam, spec)


@given(partition_strategy(5))
def test_schur_matches_finite_alphabet(lam):
    M = 6
    spec = TruncationSpec.of(t=M)
    finite = FiniteAlphabet.of(*[{"t": i} for i in range(M + 1)])
    assert schur(lam, T_TILDE, spec) == schur(lam, finite, spec)


@given(partition_strategy(5), st.fractions(min_value=0, max_value=2, max_denominator=2))
def test_homogeneity(lam, e):
    spec = TruncationSpec.of(t=8)
    scaled = T_TILDE.scaled(monomial(t=e, x=1))
    base = schur(lam, T_TILDE, spec)
    assert schur(lam, scaled, spec) == base.shift({"t": e * lam.size, "x": lam.size})


def test_t_rho_is_shifted_principal():
    spec = TruncationSpec.of(t=9)
    for lam in partitions(4):
        assert schur(lam, t_rho(), spec) == hook_principal(lam, spec).shift({"t": 2})


@given(partition_strategy(4), partition_strategy(3))
def test_skew_against_shifted_ray(lam, nu):
    spec = TruncationSpec.of(t=5, q=5)
    A = ShiftedRay(nu, "t", "q")
    assert skew_schur(lam, (), A, spec) == schur(lam, A, spec)
    assert skew_schur(lam, lam, A, spec) == 1


@pytest.mark.parametrize("k", range(7))
def test_newton_roundtrip_three_letters(k):
    spec = TruncationSpec()
    A = FiniteAlphabet.of({"x": 1}, {"y": 1}, {"z": 1})
    direct = MultiSeries.zero(spec)
    for combo in combinations_with_replacement("xyz", k):
        direct = direct + MultiSeries.monomial(spec, {v: combo.count(v) for v in "xyz"})
    if k == 0:
        direct = MultiSeries.const(1, spec)
    assert complete_h(A, k, spec) == direct


def test_cauchy_examples():
    spec = TruncationSpec.of(Q=1, t=6, q=6)
    got = cauchy_product(t_rho("t"), t_rho("q"), spec)
    lead = mono(spec, Q=1, t=HALF, q=HALF) * inv_1m(spec, t=1) * inv_1m(spec, q=1)
    assert got == 1 - lead
    spec0 = TruncationSpec.of(Q=0, t=6, q=6)
    assert cauchy_product(t_rho("t"), t_rho("q"), spec0) == 1
    spec3 = TruncationSpec.of(Q=3)
    u, v = FiniteAlphabet.of({"u": 1}), FiniteAlphabet.of({"v": 1})
    assert cauchy_product(u, v, spec3) == 1 - MultiSeries.monomial(spec3, {"Q": 1, "u": 1, "v": 1})


@pytest.mark.parametrize("A", [GeometricRay("t"), t_rho("t")])
@pytest.mark.parametrize("B", [GeometricRay("q"), t_rho("q")])
def test_dual_cauchy(A, B):
    spec = TruncationSpec.of(Q=4, t=5, q=5)
    assert cauchy_product(A, B, spec) == dual_cauchy_sum(A, B, spec)


def test_twisted_rays_points():
    spec = TruncationSpec.of(t=0)
    # at t-order 0 only the ray heads 1, q_2, q_1 q_2 survive
    p1 = power_sum(twisted_rays(3), 1, spec)
    expected = 1 + MultiSeries.monomial(spec, {"q_2": 1}) + MultiSeries.monomial(spec, {"q_1": 1, "q_2": 1})
    assert p1 == expected

"""Exact end-to-end identity checks, one per acceptance criterion.

Each check returns a CheckResult; a failing identity is reported with the
first offending case.  Used by ``orbivertex selfcheck`` and the acceptance
tests.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .characters import char_table
from .gluing import (
    FootballParams,
    conifold_log,
    conifold_log_expanded,
    football_direct_product,
    football_product,
    football_sum,
    unrefined_conifold_product,
    unrefined_limit,
)
from .hurwitz import (
    brute_force_hurwitz,
    hurwitz_number,
    hurwitz_number_r,
    phi_compose_check,
    phi_init_check,
    phi_parity_check,
)
from .partitions import conjugate, dimension, partitions, partitions_upto, z_factor
from .series import MultiSeries, TruncationSpec, exp_series, log_series
from .symfunc import GeometricRay, cauchy_product, dual_cauchy_sum, hook_principal, jacobi_trudi, schur, t_rho
from .vertex import (
    ikv_from_smooth_vertex,
    ikv_one_leg,
    ikv_vertex,
    r_series,
    r_series_closed,
    r_series_from_closed,
    vertex_in_hbar,
)


@dataclass
class CheckResult:
    number: int
    name: str
    budget: float
    passed: bool = True
    cases: int = 0
    seconds: float = 0.0
    failure: str = ""
    notes: list = field(default_factory=list)

    def fail(self, msg: str):
        if self.passed:
            self.passed = False
            self.failure = msg

    def line(self, timing: bool = True) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f": {self.failure}" if self.failure else ""
        if self.passed and self.seconds > self.budget:
            extra = f": over budget ({self.seconds:.2f}s > {self.budget:g}s)"
        stats = f"{self.cases} cases, {self.seconds:.2f}s / {self.budget:g}s" if timing else f"{self.cases} cases"
        return f"[{status}] criterion {self.number:2d} {self.name} ({stats}){extra}"

    @property
    def ok(self) -> bool:
        return self.passed and self.seconds <= self.budget


def _timed(number: int, name: str, budget: float):
    def deco(fn):
        def run(**kw) -> CheckResult:
            res = CheckResult(number, name, budget)
            start = time.perf_counter()
            fn(res, **kw)
            res.seconds = time.perf_counter() - start
            return res

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return deco


@_timed(1, "character integrity", 10)
def check_characters(res: CheckResult, d_max: int = 8):
    """Orthogonality, sum of squared dimensions, MN vs hook dimensions, conjugation sign."""
    for d in range(1, d_max + 1):
        table = char_table(d)
        ps = table.parts
        for lam in ps:
            for rho in ps:
                row = sum(Fraction(table(lam, mu) * table(rho, mu), z_factor(mu)) for mu in ps)
                if row != (1 if lam == rho else 0):
                    res.fail(f"row orthogonality d={d} {lam},{rho}")
                col = sum(table(eta, lam) * table(eta, rho) for eta in ps)
                if col != (z_factor(lam) if lam == rho else 0):
                    res.fail(f"column orthogonality d={d} {lam},{rho}")
                sign = (-1) ** ((d - len(rho)) % 2)
                if table(conjugate(lam), rho) != sign * table(lam, rho):
                    res.fail(f"conjugation sign d={d} {lam},{rho}")
                res.cases += 3
        ident = (1,) * d
        if sum(table(lam, ident) ** 2 for lam in ps) != factorial(d):
            res.fail(f"sum of squared dimensions d={d}")
        for lam in ps:
            if table(lam, ident) != dimension(lam):
                res.fail(f"MN dimension vs hook length for {lam}")
        res.cases += 1 + len(ps)


@_timed(2, "Phi structure (init, composition, parity)", 30)
def check_phi(res: CheckResult, d_max: int = 5, order: int = 6):
    for d in range(1, d_max + 1):
        for nu in partitions(d):
            for mu in partitions(d):
                if not phi_init_check(nu, mu):
                    res.fail(f"Phi({nu},{mu})(0)")
                if not phi_compose_check(nu, mu, order):
                    res.fail(f"composition for {nu},{mu}")
                if not phi_parity_check(nu, mu, order):
                    res.fail(f"parity for {nu},{mu}")
                res.cases += 3


@_timed(3, "Burnside formula vs permutation count", 60)
def check_burnside(res: CheckResult, d_max: int = 5, r_max: int = 4):
    if hurwitz_number(0, (2,), (2,)) != Fraction(1, 2) or brute_force_hurwitz(2, (2,), (2,)) != Fraction(1, 2):
        res.fail("worked value H = 1/2 at d=2, r=2, nu=mu=(2)")
    res.cases += 1
    for d in range(1, d_max + 1):
        for nu in partitions(d):
            for mu in partitions(d):
                for r in range(r_max + 1):
                    if brute_force_hurwitz(r, nu, mu) != hurwitz_number_r(r, nu, mu):
                        res.fail(f"H mismatch r={r} nu={nu} mu={mu}")
                    res.cases += 1


@_timed(4, "R-series framing identity", 60)
def check_r_equation(res: CheckResult, a_values=(1, 2, 3), d_max: int = 4, taus=(1, 2), order: int = 6):
    for a in a_values:
        for mu in partitions_upto(d_max):
            if not mu:
                continue
            for tau in taus:
                if r_series(a, mu, tau, order) != r_series_from_closed(a, mu, tau, order):
                    res.fail(f"a={a} mu={mu} tau={tau}")
                res.cases += 1


@_timed(5, "vertex vs R-series at t = e^{i hbar}", 30)
def check_vertex_coherence(res: CheckResult, a_values=(1, 2, 3), d_max: int = 4, order: int = 6):
    for a in a_values:
        for mu in partitions_upto(d_max):
            if not mu:
                continue
            if vertex_in_hbar(a, mu, order) != r_series_closed(a, mu, order):
                res.fail(f"a={a} mu={mu}")
            res.cases += 1


@_timed(6, "Schur triangle and dual Cauchy", 30)
def check_schur(res: CheckResult, d_max: int = 6, order: int = 12, q_order: int = 4, cauchy_order: int = 6):
    trunc = TruncationSpec.of(t=order)
    ray = GeometricRay("t")
    for lam in partitions_upto(d_max):
        a = schur(lam, ray, trunc)
        if not (a == jacobi_trudi(lam, ray, trunc) == hook_principal(lam, trunc)):
            res.fail(f"Schur triangle at {lam}")
        res.cases += 1
    spec = TruncationSpec.of(Q=q_order, t=cauchy_order, q=cauchy_order)
    alphabets_t = {"T": GeometricRay("t"), "t^-rho": t_rho("t")}
    alphabets_q = {"Q~": GeometricRay("q"), "q^-rho": t_rho("q")}
    for na, A in alphabets_t.items():
        for nb, B in alphabets_q.items():
            if cauchy_product(A, B, spec) != dual_cauchy_sum(A, B, spec):
                res.fail(f"dual Cauchy for {na}, {nb}")
            res.cases += 1


@_timed(7, "IKV one-leg forms", 30)
def check_ikv(res: CheckResult, d_max: int = 4, order: int = 10):
    for p in partitions_upto(d_max):
        if ikv_vertex(p, (), (), order) != ikv_one_leg("lam", p, order):
            res.fail(f"C_(lam,0,0) lam={p}")
        if ikv_vertex((), p, (), order) != ikv_one_leg("mu", p, order):
            res.fail(f"C_(0,mu,0) mu={p}")
        if ikv_vertex((), (), p, order) != ikv_one_leg("nu", p, order):
            res.fail(f"C_(0,0,nu) nu={p}")
        if ikv_from_smooth_vertex(p, order) != ikv_one_leg("lam", p, order):
            res.fail(f"C_(lam,0,0) vs smooth refined vertex, lam={p}")
        res.cases += 4


@_timed(8, "resolved conifold", 60)
def check_conifold(res: CheckResult, q_order: int = 4, order: int = 8):
    params = FootballParams(1, 1, q_order, order)
    z_sum = football_sum(params)
    z_prod = football_product(params)
    closed = conifold_log(q_order, order)
    if z_sum != z_prod:
        res.fail("glued sum != product")
    if exp_series(closed) != z_sum:
        res.fail("exp(closed log) != glued sum")
    if log_series(z_sum) != closed:
        res.fail("log(glued sum) != closed log")
    if closed != conifold_log_expanded(q_order, order):
        res.fail("closed log != expanded closed log")
    trunc = params.trunc
    t = MultiSeries.monomial(trunc, {"t": Fraction(1, 2)}) - MultiSeries.monomial(trunc, {"t": Fraction(-1, 2)})
    q = MultiSeries.monomial(trunc, {"q": Fraction(1, 2)}) - MultiSeries.monomial(trunc, {"q": Fraction(-1, 2)})
    first = -(t * q).inverse()
    if log_series(z_sum).coefficient("Q", 1) != first.coefficient("Q", 0):
        res.fail("[Q^1] log Z != -1/((t^1/2 - t^-1/2)(q^1/2 - q^-1/2))")
    res.cases += 5


@_timed(9, "local football sum vs product", 120)
def check_football(res: CheckResult, pairs=((2, 1), (2, 2), (3, 1)), q_order: int = 3, order: int = 6, threads: int = 1):
    for a, b in pairs:
        params = FootballParams(a, b, q_order, order, threads)
        z_sum = football_sum(params)
        if z_sum != football_product(params):
            res.fail(f"sum != product at (a,b)=({a},{b})")
        if z_sum != football_direct_product(params):
            res.fail(f"sum != multiplied-out product at (a,b)=({a},{b})")
        res.cases += 2


@_timed(10, "unrefined limit", 10)
def check_unrefined(res: CheckResult, q_order: int = 3, order: int = 6):
    z = football_sum(FootballParams(1, 1, q_order, order))
    if unrefined_limit(z) != unrefined_conifold_product(q_order, order):
        res.fail("q := t in the conifold Z != prod (1 - Q t^n)^n")
    res.cases += 1


ALL_CHECKS = (
    check_characters,
    check_phi,
    check_burnside,
    check_r_equation,
    check_vertex_coherence,
    check_schur,
    check_ikv,
    check_conifold,
    check_football,
    check_unrefined,
)


def run_all(threads: int = 1, stop_on_failure: bool = False) -> list[CheckResult]:
    out = []
    for check in ALL_CHECKS:
        res = check(threads=threads) if check is check_football else check()
        out.append(res)
        if stop_on_failure and not res.ok:
            break
    return out

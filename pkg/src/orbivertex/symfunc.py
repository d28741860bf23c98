"""Schur and skew Schur functions at structured infinite alphabets.

Every alphabet is described symbolically and only enters through its power
sums, which have exact closed forms (geometric tails).  Straight Schur
functions use the character expansion s_lam = sum_mu chi_lam(mu) p_mu / z_mu;
skew shapes use Jacobi-Trudi with h_k from Newton's identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .characters import char_table
from .cyclo import I
from .partitions import Partition, conjugate, hooks, n_stat, partitions, z_factor
from .series import MultiSeries, TruncationSpec, exp_series, geom_inverse

Monomial = tuple  # sorted ((var, Fraction exponent), ...)


def monomial(exps: dict | None = None, **kw) -> Monomial:
    """Canonical hashable form of a monomial given as {var: exponent}."""
    exps = dict(exps or {}, **kw)
    return tuple(sorted((v, Fraction(e)) for v, e in exps.items() if e))


def _mono_power(m: Monomial, k) -> dict:
    return {v: e * k for v, e in m}


class Alphabet:
    """Base class: subclasses provide power_sum(k, trunc)."""

    def power_sum(self, k: int, trunc: TruncationSpec) -> MultiSeries:
        raise NotImplementedError

    def __add__(self, other: Alphabet) -> AlphabetUnion:
        return AlphabetUnion((self, other))


@dataclass(frozen=True)
class GeometricRay(Alphabet):
    """The points coef * prefactor * ratio^i for i >= 0."""

    ratio: str
    prefactor: Monomial = ()
    coef: object = 1

    def power_sum(self, k, trunc):
        lead = MultiSeries.monomial(trunc, _mono_power(self.prefactor, k), self.coef**k)
        return lead * geom_inverse(1 - MultiSeries.monomial(trunc, {self.ratio: k}))

    def scaled(self, m: Monomial, coef=1) -> GeometricRay:
        pre = dict(self.prefactor)
        for v, e in m:
            pre[v] = pre.get(v, 0) + e
        return GeometricRay(self.ratio, monomial(pre), self.coef * coef)


@dataclass(frozen=True)
class PhaseRay(Alphabet):
    """The points prefactor * exp(sqrt(-1) * j * var) for j >= 0.

    Its power sums 1/(1 - exp(sqrt(-1) k var)) are Laurent series with a
    simple pole, so results carry reduced precision (see MultiSeries.prec).
    """

    var: str = "hbar"
    prefactor: Monomial = ()

    def power_sum(self, k, trunc):
        lead = MultiSeries.monomial(trunc, _mono_power(self.prefactor, k))
        h = MultiSeries.var(self.var, trunc)
        return lead * geom_inverse(1 - exp_series(h * (I * k)))


@dataclass(frozen=True)
class ShiftedRay(Alphabet):
    """The points half^(i - 1/2) * twist^(-nu_i) for i >= 1 (nu padded by zeros)."""

    nu: Partition
    half: str = "t"
    twist: str = "q"

    def power_sum(self, k, trunc):
        total = MultiSeries.zero(trunc)
        for i, p in enumerate(self.nu, start=1):
            total = total + MultiSeries.monomial(trunc, {self.half: k * (i - Fraction(1, 2)), self.twist: -k * p})
        tail = GeometricRay(self.half, monomial({self.half: len(self.nu) + Fraction(1, 2)}))
        return total + tail.power_sum(k, trunc)


@dataclass(frozen=True)
class FiniteAlphabet(Alphabet):
    """Finitely many points (coefficient, monomial)."""

    points: tuple = ()

    @classmethod
    def of(cls, *points) -> FiniteAlphabet:
        """points: monomial dicts, or (coef, monomial dict) pairs."""
        out = []
        for p in points:
            if isinstance(p, dict):
                out.append((1, monomial(p)))
            else:
                out.append((p[0], monomial(p[1])))
        return cls(tuple(out))

    def power_sum(self, k, trunc):
        total = MultiSeries.zero(trunc)
        for c, m in self.points:
            total = total + MultiSeries.monomial(trunc, _mono_power(m, k), c**k)
        return total


@dataclass(frozen=True)
class AlphabetUnion(Alphabet):
    parts: tuple = ()

    def power_sum(self, k, trunc):
        total = MultiSeries.zero(trunc)
        for part in self.parts:
            total = total + power_sum(part, k, trunc)
        return total


def t_rho(var: str = "t") -> GeometricRay:
    """var^(-rho) = (var^(1/2), var^(3/2), ...)."""
    return GeometricRay(var, monomial({var: Fraction(1, 2)}))


def twisted_rays(a: int, ratio: str = "t", twist: str = "q", prefactor: Monomial = ()) -> AlphabetUnion:
    """(R, R q_{a-1}, R q_{a-2} q_{a-1}, ..., R q_1...q_{a-1}) with R = prefactor*(1, r, r^2, ...)."""
    rays = []
    for k in range(a, 0, -1):
        shift = {f"{twist}_{j}": 1 for j in range(k, a)}
        rays.append(GeometricRay(ratio, prefactor).scaled(monomial(shift)))
    return AlphabetUnion(tuple(rays))


@lru_cache(maxsize=4096)
def power_sum(alphabet: Alphabet, k: int, trunc: TruncationSpec) -> MultiSeries:
    if k < 1:
        raise ValueError("power sums are indexed by k >= 1")
    return alphabet.power_sum(k, trunc)


@lru_cache(maxsize=4096)
def power_sum_product(alphabet: Alphabet, mu: Partition, trunc: TruncationSpec) -> MultiSeries:
    """p_mu = prod_i p_{mu_i}."""
    if not mu:
        return MultiSeries.const(1, trunc)
    head = power_sum(alphabet, mu[0], trunc)
    if len(mu) == 1:
        return head
    return head * power_sum_product(alphabet, Partition(mu[1:]), trunc)


def schur(lam, alphabet: Alphabet, trunc: TruncationSpec) -> MultiSeries:
    """s_lam(alphabet) by the character expansion."""
    lam = Partition(lam)
    d = lam.size
    if d == 0:
        return MultiSeries.const(1, trunc)
    table = char_table(d)
    total = MultiSeries.zero(trunc)
    for mu in partitions(d):
        c = Fraction(table(lam, mu), z_factor(mu))
        if c:
            total = total + power_sum_product(alphabet, mu, trunc) * c
    return total


def hook_principal(lam, trunc: TruncationSpec, var: str = "t") -> MultiSeries:
    """s_lam(1, t, t^2, ...) = t^n(lam) / prod_cells (1 - t^hook)."""
    lam = Partition(lam)
    out = MultiSeries.monomial(trunc, {var: n_stat(lam)})
    for h in hooks(lam):
        out = out * geom_inverse(1 - MultiSeries.monomial(trunc, {var: h}))
    return out


@lru_cache(maxsize=1024)
def complete_h(alphabet: Alphabet, k: int, trunc: TruncationSpec) -> MultiSeries:
    """h_k from power sums by Newton: k h_k = sum_{i=1}^k p_i h_{k-i}."""
    if k < 0:
        return MultiSeries.zero(trunc)
    if k == 0:
        return MultiSeries.const(1, trunc)
    acc = MultiSeries.zero(trunc)
    for i in range(1, k + 1):
        acc = acc + power_sum(alphabet, i, trunc) * complete_h(alphabet, k - i, trunc)
    return acc * Fraction(1, k)


def skew_schur(lam, eta, alphabet: Alphabet, trunc: TruncationSpec) -> MultiSeries:
    """s_{lam/eta} = det(h_{lam_i - eta_j - i + j}) by cofactor expansion."""
    lam, eta = Partition(lam), Partition(eta)
    n = len(lam)
    if n == 0:
        return MultiSeries.const(1 if not eta else 0, trunc)
    eta_pad = tuple(eta) + (0,) * max(0, n - len(eta))
    if len(eta_pad) > n:
        # a nonzero part of eta below the last row of lam: not contained
        return MultiSeries.zero(trunc)

    def entry(i, j):
        return complete_h(alphabet, lam[i] - eta_pad[j] - i + j, trunc)

    memo: dict = {}

    def minor(row, cols):
        if row == n:
            return MultiSeries.const(1, trunc)
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = MultiSeries.zero(trunc)
        for pos, j in enumerate(cols):
            e = entry(row, j)
            if not e:
                continue
            term = e * minor(row + 1, cols[:pos] + cols[pos + 1:])
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


def jacobi_trudi(lam, alphabet: Alphabet, trunc: TruncationSpec) -> MultiSeries:
    return skew_schur(lam, (), alphabet, trunc)


def cauchy_product(A: Alphabet, B: Alphabet, trunc: TruncationSpec, var: str = "Q") -> MultiSeries:
    """prod_{x in A, y in B} (1 - var*x*y) = exp(-sum_d var^d p_d(A) p_d(B) / d).

    The number of d-terms is set by the order of var in trunc.
    """
    top = trunc.order_of(var)
    if top is None:
        raise ValueError(f"{var} must be graded in the truncation spec")
    exponent = MultiSeries.zero(trunc)
    for d in range(1, int(top) + 1):
        term = power_sum(A, d, trunc) * power_sum(B, d, trunc)
        exponent = exponent - term.shift({var: d}) * Fraction(1, d)
    return exp_series(exponent)


def dual_cauchy_sum(A: Alphabet, B: Alphabet, trunc: TruncationSpec, var: str = "Q") -> MultiSeries:
    """sum_nu (-var)^|nu| s_nu(A) s_nu'(B), the Schur side of the dual Cauchy identity."""
    total = MultiSeries.zero(trunc)
    for d in range(int(trunc.order_of(var)) + 1):
        for nu in partitions(d):
            term = schur(nu, A, trunc) * schur(conjugate(nu), B, trunc)
            total = total + term.shift({var: d}, (-1) ** d)
    return total

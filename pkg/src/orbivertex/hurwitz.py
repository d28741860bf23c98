"""The character series Phi_{nu,mu}(hbar) and double Hurwitz numbers."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import factorial

from .characters import char_table
from .partitions import Partition, kappa, partitions, z_factor
from .series import MultiSeries, TruncationSpec, exp_series, substitute


class ResourceLimitError(RuntimeError):
    """Raised when a brute-force enumeration would exceed its budget."""


BRUTE_FORCE_MAX_DEGREE = 6
BRUTE_FORCE_MAX_STEPS = 4


def _check_sizes(nu: Partition, mu: Partition):
    if nu.size != mu.size:
        raise ValueError(f"size mismatch: |{nu}| != |{mu}|")


def phi(nu, mu, order, var: str = "hbar", trunc: TruncationSpec | None = None) -> MultiSeries:
    """Phi_{nu,mu}(hbar) = sum_eta chi_eta(nu) chi_eta(mu) / (z_nu z_mu) * exp(kappa_eta hbar / 2)."""
    nu, mu = Partition(nu), Partition(mu)
    _check_sizes(nu, mu)
    if nu.size == 0:
        raise ValueError("Phi needs |nu| = |mu| >= 1")
    trunc = trunc or TruncationSpec.of(**{var: order})
    h = MultiSeries.var(var, trunc)
    table = char_table(nu.size)
    z = z_factor(nu) * z_factor(mu)
    total = MultiSeries.zero(trunc)
    for eta in table.parts:
        c = Fraction(table(eta, nu) * table(eta, mu), z)
        if c:
            total = total + exp_series(h * Fraction(kappa(eta), 2)) * c
    return total


def phi_at(nu, mu, arg: MultiSeries) -> MultiSeries:
    """Phi_{nu,mu} evaluated at a series argument (e.g. sqrt(-1)*tau*hbar)."""
    order = max(o for _, o in arg.trunc.bounds) if arg.trunc.bounds else 0
    return substitute(phi(nu, mu, order, var="_h"), "_h", arg)


def phi_compose_check(nu, mu, order) -> bool:
    """Phi(h1 + h2) == sum_sigma Phi(h1) z_sigma Phi(h2), graded jointly in (h1, h2)."""
    nu, mu = Partition(nu), Partition(mu)
    _check_sizes(nu, mu)
    trunc = TruncationSpec.of((("h1", "h2"), order))
    both = MultiSeries.var("h1", trunc) + MultiSeries.var("h2", trunc)
    lhs = phi(nu, mu, order, var="h", trunc=TruncationSpec.of(h=order))
    lhs = substitute(lhs, "h", both)
    rhs = MultiSeries.zero(trunc)
    for sigma in partitions(nu.size):
        left = phi(nu, sigma, order, var="h1", trunc=trunc)
        right = phi(sigma, mu, order, var="h2", trunc=trunc)
        rhs = rhs + left * right * z_factor(sigma)
    return lhs == rhs


def phi_parity_check(nu, mu, order) -> bool:
    """Phi(-hbar) == (-1)^(l(mu) + l(nu)) Phi(hbar)."""
    nu, mu = Partition(nu), Partition(mu)
    f = phi(nu, mu, order)
    flipped = substitute(f, "hbar", -MultiSeries.var("hbar", f.trunc))
    return flipped == f * (-1) ** (len(nu) + len(mu))


def phi_init_check(nu, mu) -> bool:
    """Phi(0) == delta_{nu,mu} / z_nu."""
    nu, mu = Partition(nu), Partition(mu)
    expected = Fraction(1, z_factor(nu)) if nu == mu else 0
    return phi(nu, mu, 0).constant_term() == expected


def _branch_count(chi_euler: int, nu: Partition, mu: Partition) -> int:
    r = -chi_euler + len(nu) + len(mu)
    if r < 0:
        raise ValueError(f"r = -chi + l(nu) + l(mu) = {r} must be nonnegative")
    return r


def hurwitz_number(chi_euler: int, nu, mu) -> Fraction:
    """H_{chi,nu,mu} = r! [hbar^r] Phi_{nu,mu}(hbar) with r = -chi + l(nu) + l(mu)."""
    nu, mu = Partition(nu), Partition(mu)
    r = _branch_count(chi_euler, nu, mu)
    c = phi(nu, mu, r).coeff(hbar=r)
    return Fraction(c) * factorial(r)


def hurwitz_number_r(r: int, nu, mu) -> Fraction:
    nu, mu = Partition(nu), Partition(mu)
    return hurwitz_number(-r + len(nu) + len(mu), nu, mu)


def _cycle_type(perm: tuple[int, ...]) -> Partition:
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        if not seen[i]:
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                n += 1
            lengths.append(n)
    return Partition(sorted(lengths, reverse=True))


def _class_members(nu: Partition) -> list[tuple[int, ...]]:
    d = nu.size
    out = []
    for p in permutations(range(d)):
        if _cycle_type(p) == nu:
            out.append(p)
    return out


def brute_force_hurwitz(r: int, nu, mu) -> Fraction:
    """(1/d!) #{(alpha, t_1..t_r): alpha of type nu, t_i transpositions, t_r...t_1 alpha of type mu}.

    Counts permutations directly, without characters: a distribution over
    S_d is pushed through r transposition steps.  Paths that can no longer
    reach the target class (too few steps left to fix the cycle count) are
    pruned.
    """
    nu, mu = Partition(nu), Partition(mu)
    _check_sizes(nu, mu)
    d = nu.size
    if d > BRUTE_FORCE_MAX_DEGREE or r > BRUTE_FORCE_MAX_STEPS:
        raise ResourceLimitError(
            f"brute force budget is d <= {BRUTE_FORCE_MAX_DEGREE}, r <= {BRUTE_FORCE_MAX_STEPS}; got d={d}, r={r}"
        )
    target_cycles = len(mu)
    transpositions = list(combinations(range(d), 2))
    state: dict[tuple[int, ...], int] = {p: 1 for p in _class_members(nu)}
    for step in range(r):
        left = r - step - 1
        nxt: dict[tuple[int, ...], int] = {}
        for perm, count in state.items():
            for i, j in transpositions:
                p = list(perm)
                # compose on the left: (i j) o perm
                p = tuple(j if x == i else i if x == j else x for x in p)
                if abs(len(_cycle_type(p)) - target_cycles) > left:
                    continue
                nxt[p] = nxt.get(p, 0) + count
        state = nxt
    total = sum(c for p, c in state.items() if _cycle_type(p) == mu)
    return Fraction(total, factorial(d))

"""One-leg orbifold refined vertex, the R-series and the IKV refined vertex.

Native coordinates are t (graded, half-integer exponents) and the exact
variables q_1..q_{a-1} (exponents in (1/a)Z).  The vertex at the opposite
fixed point uses q and s_1..s_{b-1}.  The hbar-side objects use t = e^{i hbar}
with the branch q_0^{1/2} = i e^{i hbar/2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .characters import char_table
from .cyclo import I, root_of_unity
from .hurwitz import phi_at
from .partitions import Partition, conjugate, norm2, partitions, subpartitions, z_factor
from .series import (
    MultiSeries,
    SeriesDomainError,
    TruncationSpec,
    at_full_precision,
    exp_series,
    geom_inverse,
    substitute_exp,
)
from .symfunc import (
    AlphabetUnion,
    PhaseRay,
    ShiftedRay,
    hook_principal,
    monomial,
    schur,
    skew_schur,
    t_rho,
    twisted_rays,
)


@dataclass(frozen=True)
class VertexParams:
    """Orbifold order a, leg profile mu and the graded order in the leg variable.

    The framing tau = eps_1 and the Calabi-Yau relation w = -eps_2 are
    already built into the formulas, so outputs depend on t alone.
    """

    a: int
    mu: Partition
    order: Fraction

    def __post_init__(self):
        if self.a < 1:
            raise ValueError("orbifold order a must be >= 1")
        object.__setattr__(self, "mu", Partition(self.mu))
        object.__setattr__(self, "order", Fraction(self.order))
        if not self.mu:
            raise ValueError("the vertex needs a nonempty partition mu")


def twist_names(a: int, twist: str = "q") -> list[str]:
    return [f"{twist}_{k}" for k in range(1, a)]


def twist_prefactor(a: int, twist: str = "q") -> dict:
    """Exponents of q_1^{-1/a} ... q_{a-1}^{-(a-1)/a}."""
    return {f"{twist}_{k}": Fraction(-k, a) for k in range(1, a)}


def _character_sum(a: int, mu: Partition, alphabet, trunc) -> MultiSeries:
    """sum_{|nu|=|mu|} s_{nu'}(alphabet) chi_nu(mu) / z_mu."""
    table = char_table(mu.size)
    total = MultiSeries.zero(trunc)
    for nu in partitions(mu.size):
        c = Fraction(table(nu, mu), z_factor(mu))
        if c:
            total = total + schur(conjugate(nu), alphabet, trunc) * c
    return total


def _one_leg(a: int, mu, order, ratio: str, twist: str) -> MultiSeries:
    params = VertexParams(a, mu, order)
    mu, d = params.mu, params.mu.size
    trunc = TruncationSpec.of(**{ratio: params.order})
    body = _character_sum(a, mu, twisted_rays(a, ratio, twist), trunc)
    pref = {ratio: Fraction(d, 2)}
    pref.update({v: e * d for v, e in twist_prefactor(a, twist).items()})
    return body.shift(pref, I**d)


def refined_vertex(a: int, mu, order) -> MultiSeries:
    """i^|mu| (t^{1/2} q_1^{-1/a} ... q_{a-1}^{-(a-1)/a})^|mu| sum_nu s_{nu'}(t_tilde) chi_nu(mu)/z_mu.

    t_tilde is the union of the rays T, T q_{a-1}, ..., T q_1...q_{a-1}
    with T = (1, t, t^2, ...).
    """
    return _one_leg(a, mu, order, "t", "q")


def vertex_at_infinity(b: int, mu, order) -> MultiSeries:
    """The mirror vertex in q and s_1..s_{b-1}."""
    return _one_leg(b, mu, order, "q", "s")


def smooth_vertex(mu, order, var: str = "t") -> MultiSeries:
    """i^|mu| sum_nu s_{nu'}(var^{-rho}) chi_nu(mu)/z_mu, the a = 1 form without prefactor."""
    mu = Partition(mu)
    trunc = TruncationSpec.of(**{var: order})
    return _character_sum(1, mu, t_rho(var), trunc) * I**mu.size


# hbar side ------------------------------------------------------------------


def minus_q_alphabet(a: int) -> AlphabetUnion:
    """-q_bullet = (-Q, -Q q_{a-1}, ..., -Q q_1...q_{a-1}) with -Q = (1, -q_0, q_0^2, ...) and -q_0 = e^{i hbar}."""
    rays = []
    for k in range(a, 0, -1):
        rays.append(PhaseRay("hbar", monomial({f"q_{j}": 1 for j in range(k, a)})))
    return AlphabetUnion(tuple(rays))


def _hbar_prefactor(a: int, d: int, trunc) -> MultiSeries:
    """(q_0^{1/2} q_1^{-1/a} ... )^d with q_0^{1/2} = i e^{i hbar/2}."""
    h = MultiSeries.var("hbar", trunc)
    pref = {v: e * d for v, e in twist_prefactor(a).items()}
    return exp_series(h * (I * Fraction(d, 2))).shift(pref, I**d)


def _tau_arg(tau: int, trunc) -> MultiSeries:
    return MultiSeries.var("hbar", trunc) * (I * tau)


def r_series(a: int, mu, tau: int, order) -> MultiSeries:
    """R_mu(hbar; tau) = sum_nu pref^|nu| sum_xi s_{xi'}(-q_bullet) chi_xi(nu) Phi_{nu,mu}(i hbar tau)."""
    mu = Partition(mu)
    d = mu.size
    if not mu:
        raise ValueError("the R-series needs a nonempty partition mu")
    alphabet = minus_q_alphabet(a)
    table = char_table(d)

    def build(trunc):
        arg = _tau_arg(tau, trunc)
        pref = _hbar_prefactor(a, d, trunc)
        total = MultiSeries.zero(trunc)
        for nu in partitions(d):
            inner = MultiSeries.zero(trunc)
            for xi in partitions(d):
                c = table(xi, nu)
                if c:
                    inner = inner + schur(conjugate(xi), alphabet, trunc) * c
            total = total + inner * phi_at(nu, mu, arg)
        return pref * total

    return at_full_precision(build, TruncationSpec.of(hbar=order))


def r_series_closed(a: int, mu, order) -> MultiSeries:
    """R_mu(hbar; 0) = pref^|mu| sum_nu s_{nu'}(-q_bullet) chi_nu(mu)/z_mu."""
    return _r_series_closed(a, Partition(mu), Fraction(order))


@lru_cache(maxsize=256)
def _r_series_closed(a: int, mu: Partition, order: Fraction) -> MultiSeries:
    d = mu.size

    def build(trunc):
        return _hbar_prefactor(a, d, trunc) * _character_sum(a, mu, minus_q_alphabet(a), trunc)

    return at_full_precision(build, TruncationSpec.of(hbar=order))


def r_series_from_closed(a: int, mu, tau: int, order) -> MultiSeries:
    """sum_nu R_nu(hbar; 0) z_nu Phi_{nu,mu}(i hbar tau)."""
    mu = Partition(mu)
    trunc = TruncationSpec.of(hbar=order)
    arg = _tau_arg(tau, trunc)
    total = MultiSeries.zero(trunc)
    for nu in partitions(mu.size):
        total = total + r_series_closed(a, nu, order) * phi_at(nu, mu, arg) * z_factor(nu)
    return total


def _denominator_exponents(d: int) -> dict[int, int]:
    # prod_k (1 - t^k)^{floor(d/k)} clears the poles of every p_lambda with |lambda| = d
    return {k: d // k for k in range(1, d + 1)}


def vertex_in_hbar(a: int, mu, order) -> MultiSeries:
    """refined_vertex re-expanded at t = e^{i hbar}, reading t^{1/2} as e^{i hbar/2}.

    The t-series is a rational function.  Its numerator N = D * V is a
    polynomial of t-degree at most deg D + |mu|/2, so it is computed exactly
    from a finite t-expansion and then evaluated at t = e^{i hbar}, as is D.
    """
    mu = Partition(mu)
    d = mu.size
    den_exps = _denominator_exponents(d)
    deg = sum(k * m for k, m in den_exps.items()) + Fraction(d, 2)
    t_spec = TruncationSpec.of(t=deg)
    t = MultiSeries.var("t", t_spec)
    den_t = MultiSeries.const(1, t_spec)
    for k, m in den_exps.items():
        den_t = den_t * (1 - t**k) ** m
    num_t = (den_t * refined_vertex(a, mu, deg)).require_full("vertex numerator")

    def build(trunc):
        h = MultiSeries.var("hbar", trunc) * I
        num = substitute_exp(num_t.retrunc(TruncationSpec(), assume_exact=True), "t", h)
        den = substitute_exp(den_t.retrunc(TruncationSpec(), assume_exact=True), "t", h)
        return num * geom_inverse(den)

    # D(e^{i hbar}) vanishes to order m = number of factors; start with that margin
    m = sum(den_exps.values())
    margins = tuple(2 * m + k for k in (0, 2, 4, 8, 16))
    return at_full_precision(build, TruncationSpec.of(hbar=order), margins)


# x coordinates ----------------------------------------------------------------


def x_linear_form(a: int, l: int, trunc: TruncationSpec) -> MultiSeries:
    """-sum_i (w_a^{-2il}/a)(w_a^i - w_a^{-i}) x_i with w_a = e^{pi i/a}."""
    if not 1 <= l <= a - 1:
        raise SeriesDomainError(f"l must lie in [1, {a - 1}], got {l}")
    total = MultiSeries.zero(trunc)
    for i in range(1, a):
        c = root_of_unity(Fraction(-2 * i * l, 2 * a)) * (root_of_unity(Fraction(i, 2 * a)) - root_of_unity(Fraction(-i, 2 * a)))
        total = total + MultiSeries.var(f"x_{i}", trunc) * (-c / a)
    return total


def x_spec(a: int, x_order) -> TruncationSpec:
    names = tuple(f"x_{i}" for i in range(1, a))
    return TruncationSpec.of((names, x_order)) if names else TruncationSpec()


def x_to_q(a: int, l: int, x_order) -> MultiSeries:
    """q_l = xi_a^{-1} exp(linear form in x) as a series in x_1..x_{a-1}."""
    trunc = x_spec(a, x_order)
    return exp_series(x_linear_form(a, l, trunc)) * root_of_unity(Fraction(-1, a))


def vertex_in_x(a: int, mu, t_order, x_order) -> MultiSeries:
    """refined_vertex with every q_l replaced by its x-series (branch q_l^r = xi_a^{-r} e^{r L_l})."""
    v = refined_vertex(a, mu, t_order)
    trunc = TruncationSpec(x_spec(a, x_order).bounds + TruncationSpec.of(t=t_order).bounds)
    for l in range(1, a):
        v = substitute_exp(v, f"q_{l}", x_linear_form(a, l, trunc), Fraction(-1, a))
    return v.retrunc(trunc) if a == 1 else v


# IKV refined vertex -------------------------------------------------------------


def ikv_spec(order) -> TruncationSpec:
    return TruncationSpec.of(t=order, q=order)


def z_tilde(nu, trunc: TruncationSpec) -> MultiSeries:
    """prod over cells (i,j) of nu of 1/(1 - q^{nu_i - j} t^{nu'_j - i + 1})."""
    nu = Partition(nu)
    nuc = conjugate(nu)
    out = MultiSeries.const(1, trunc)
    for i, j in nu.cells():
        cell = MultiSeries.monomial(trunc, {"q": nu[i - 1] - j, "t": nuc[j - 1] - i + 1})
        out = out * geom_inverse(1 - cell)
    return out


def ikv_vertex(lam, mu, nu, order) -> MultiSeries:
    """C_{lam mu nu}(t, q) by the skew Schur sum over eta in lam' and mu."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    lamc = conjugate(lam)
    A = ShiftedRay(nu, "t", "q")
    B = ShiftedRay(conjugate(nu), "q", "t")
    etas = [eta for eta in subpartitions(lamc) if mu.contains(eta)]

    def build(trunc):
        total = MultiSeries.zero(trunc)
        for eta in etas:
            k = Fraction(eta.size + lam.size - mu.size, 2)
            term = skew_schur(lamc, eta, A, trunc) * skew_schur(mu, eta, B, trunc)
            total = total + term.shift({"q": k, "t": -k})
        pref = {"q": Fraction(norm2(mu) + norm2(nu), 2), "t": Fraction(-norm2(conjugate(mu)), 2)}
        return (z_tilde(nu, trunc) * total).shift(pref)

    return at_full_precision(build, ikv_spec(order))


def ikv_one_leg(leg: str, part, order) -> MultiSeries:
    """Closed 1-leg forms, with Schur values from the hook formula.

    leg "lam": (q/t)^{|lam|/2} s_{lam'}(t^{-rho});
    leg "mu":  q^{|mu|^2/2} t^{-|mu'|^2/2} (q/t)^{-|mu|/2} s_mu(q^{-rho});
    leg "nu":  q^{|nu|^2/2} Z_nu(t, q).  (|.|^2 is the sum of squared parts.)
    """
    part = Partition(part)
    d = part.size
    half = Fraction(d, 2)

    def build(trunc):
        if leg == "lam":
            # s_{lam'}(t^{-rho}) = t^{|lam|/2} s_{lam'}(1, t, ...), and the t-powers cancel
            return hook_principal(conjugate(part), trunc, "t").shift({"q": half})
        if leg == "mu":
            # s_mu(q^{-rho}) = q^{|mu|/2} s_mu(1, q, ...) cancels the q-part of (q/t)^{-|mu|/2}
            pref = {"q": Fraction(norm2(part), 2), "t": Fraction(-norm2(conjugate(part)), 2) + half}
            return hook_principal(part, trunc, "q").shift(pref)
        if leg == "nu":
            return z_tilde(part, trunc).shift({"q": Fraction(norm2(part), 2)})
        raise ValueError(f"leg must be lam, mu or nu, not {leg!r}")

    return at_full_precision(build, ikv_spec(order))


def ikv_from_smooth_vertex(lam, order) -> MultiSeries:
    """(q/t)^{|lam|/2} i^{-|lam|} sum_mu chi_lam(mu) refined_vertex(1, mu): C_{lam,0,0} via characters."""
    lam = Partition(lam)
    d = lam.size
    if d == 0:
        return MultiSeries.const(1, ikv_spec(order))
    table = char_table(d)
    half = Fraction(d, 2)

    def build(trunc):
        total = MultiSeries.zero(TruncationSpec.of(t=trunc.order_of("t")))
        for mu in partitions(d):
            total = total + refined_vertex(1, mu, trunc.order_of("t")) * table(lam, mu)
        total = total * I ** (4 - d % 4)
        return total.retrunc(trunc).shift({"q": half, "t": -half})

    return at_full_precision(build, ikv_spec(order))

"""Gluing two one-leg vertices: the local football and the resolved conifold."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .partitions import Partition, partitions, z_factor
from .series import MultiSeries, TruncationSpec, geom_inverse, log_series
from .symfunc import cauchy_product, monomial, twisted_rays
from .vertex import refined_vertex, twist_prefactor, vertex_at_infinity


@dataclass(frozen=True)
class FootballParams:
    """Root orders a, b at the two fixed points, Q-degree and t/q order."""

    a: int = 1
    b: int = 1
    q_order: int = 3
    order: Fraction = Fraction(6)
    threads: int = 1

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("root orders a, b must be >= 1")
        if self.q_order < 0:
            raise ValueError("Q order must be nonnegative")
        object.__setattr__(self, "order", Fraction(self.order))

    @property
    def trunc(self) -> TruncationSpec:
        return TruncationSpec.of(Q=self.q_order, t=self.order, q=self.order)


def _glue_term(params: FootballParams, mu: Partition) -> MultiSeries:
    trunc = params.trunc
    left = refined_vertex(params.a, mu, params.order).retrunc(trunc)
    right = vertex_at_infinity(params.b, mu, params.order).retrunc(trunc)
    sign = -1 if (mu.size - len(mu)) % 2 else 1
    return (left * right).shift({"Q": mu.size}, sign * z_factor(mu))


def football_sum(params: FootballParams) -> MultiSeries:
    """1 + sum_{mu} V_a(mu) (-1)^{l(mu)-|mu|} Q^|mu| z_mu V_b(mu), with the vertex at infinity in (q, s_l)."""
    mus = [mu for d in range(1, params.q_order + 1) for mu in partitions(d)]
    if params.threads > 1:
        with ThreadPoolExecutor(params.threads) as pool:
            terms = list(pool.map(lambda mu: _glue_term(params, mu), mus))
    else:
        terms = [_glue_term(params, mu) for mu in mus]
    total = MultiSeries.const(1, params.trunc)
    for term in terms:  # fixed summation order
        total = total + term
    return total


def football_alphabets(a: int, b: int):
    """The two alphabets whose Cauchy product is the football partition function.

    Each point carries the full fractional prefactor, t^{1/2} q_1^{-1/a} ...
    (resp. q^{1/2} s_1^{-1/b} ...), so a factor of the product is
    1 - Q t^{i+1/2} q^{j+1/2} qhat_k shat_l q_1^{-1/a} ... s_{b-1}^{-(b-1)/b}.
    """
    pa = dict(twist_prefactor(a, "q"), t=Fraction(1, 2))
    pb = dict(twist_prefactor(b, "s"), q=Fraction(1, 2))
    return twisted_rays(a, "t", "q", monomial(pa)), twisted_rays(b, "q", "s", monomial(pb))


def football_product(params: FootballParams) -> MultiSeries:
    A, B = football_alphabets(params.a, params.b)
    return cauchy_product(A, B, params.trunc, "Q")


def football_direct_product(params: FootballParams) -> MultiSeries:
    """The double product multiplied out factor by factor (only factors below the orders matter)."""
    trunc = params.trunc
    base = {v: e for v, e in twist_prefactor(params.a, "q").items()}
    base.update(twist_prefactor(params.b, "s"))
    out = MultiSeries.const(1, trunc)
    half = Fraction(1, 2)
    i = 0
    while i + half <= params.order:
        j = 0
        while j + half <= params.order:
            for k in range(1, params.a + 1):
                for l in range(1, params.b + 1):
                    exps = dict(base, Q=1, t=i + half, q=j + half)
                    for m in range(k, params.a):
                        exps[f"q_{m}"] = exps.get(f"q_{m}", 0) + 1
                    for m in range(l, params.b):
                        exps[f"s_{m}"] = exps.get(f"s_{m}", 0) + 1
                    out = out * (1 - MultiSeries.monomial(trunc, exps))
            j += 1
        i += 1
    return out


def conifold_log(q_order: int, order) -> MultiSeries:
    """-sum_d Q^d / (d (t^{d/2} - t^{-d/2}) (q^{d/2} - q^{-d/2})), reciprocals expanded as series."""
    if q_order < 1:
        raise ValueError("Q order must be >= 1")
    trunc = TruncationSpec.of(Q=q_order, t=order, q=order)
    total = MultiSeries.zero(trunc)
    for d in range(1, q_order + 1):
        h = Fraction(d, 2)
        ft = MultiSeries.monomial(trunc, {"t": h}) - MultiSeries.monomial(trunc, {"t": -h})
        fq = MultiSeries.monomial(trunc, {"q": h}) - MultiSeries.monomial(trunc, {"q": -h})
        term = geom_inverse(ft) * geom_inverse(fq)
        total = total - term.shift({"Q": d}, Fraction(1, d))
    return total.require_full("conifold log")


def conifold_log_expanded(q_order: int, order) -> MultiSeries:
    """Same sum with (t^{d/2} - t^{-d/2})^{-1} = -t^{d/2}/(1 - t^d) used termwise."""
    trunc = TruncationSpec.of(Q=q_order, t=order, q=order)
    total = MultiSeries.zero(trunc)
    for d in range(1, q_order + 1):
        h = Fraction(d, 2)
        ft = MultiSeries.monomial(trunc, {"t": h}) * geom_inverse(1 - MultiSeries.monomial(trunc, {"t": d}))
        fq = MultiSeries.monomial(trunc, {"q": h}) * geom_inverse(1 - MultiSeries.monomial(trunc, {"q": d}))
        total = total - (ft * fq).shift({"Q": d}, Fraction(1, d))
    return total


def conifold_log_of_sum(q_order: int, order) -> MultiSeries:
    return log_series(football_sum(FootballParams(1, 1, q_order, order)))


def _known_and_low(f: MultiSeries, var: str):
    """(order to which f is known in var, lowest exponent of var); None order means exact."""
    exps = f.exponents(var) or [Fraction(0)]
    for names, p in f.precision.items():
        if var in names:
            if len(names) > 1:
                raise ValueError(f"{var} must be graded on its own for the unrefined limit")
            return p, exps[0]
    return None, exps[0]


def unrefined_limit(f: MultiSeries) -> MultiSeries:
    """Set q := t (eps_1 = -eps_2).

    A coefficient of t^n is complete when every split n = a + b with a, b
    above the lowest t- and q-exponents lies inside the known range, which
    gives the t-order min(P_t + v_q, P_q + v_t).
    """
    pt, vt = _known_and_low(f, "t")
    pq, vq = _known_and_low(f, "q")
    bounds = [o for o in (pt + vq if pt is not None else None, pq + vt if pq is not None else None) if o is not None]
    trunc = f.trunc.without("q").without("t")
    if bounds:
        trunc = TruncationSpec(trunc.bounds + TruncationSpec.of(t=min(bounds)).bounds)
    items = []
    for exps, c in f.items():
        e = dict(exps)
        qe = e.pop("q", 0)
        e["t"] = e.get("t", 0) + qe
        items.append((e, c))
    return MultiSeries.from_terms(trunc, items)


def unrefined_conifold_product(q_order: int, order) -> MultiSeries:
    """prod_{n >= 1} (1 - Q t^n)^n, the q = t form of prod_{i,j} (1 - Q t^{i+j+1})."""
    trunc = TruncationSpec.of(Q=q_order, t=order)
    out = MultiSeries.const(1, trunc)
    n = 1
    while n <= order:
        out = out * (1 - MultiSeries.monomial(trunc, {"Q": 1, "t": n})) ** n
        n += 1
    return out

"""Irreducible characters of S_d by the Murnaghan-Nakayama rule."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .partitions import Partition, kappa, partitions


def _beta(lam: tuple[int, ...], n: int) -> tuple[int, ...]:
    # beta numbers of lam padded to n parts
    parts = list(lam) + [0] * (n - len(lam))
    return tuple(p + n - 1 - i for i, p in enumerate(parts))


def _from_beta(beta: tuple[int, ...]) -> tuple[int, ...]:
    n = len(beta)
    b = sorted(beta, reverse=True)
    return tuple(p for p in (b[i] - (n - 1 - i) for i in range(n)) if p > 0)


@lru_cache(maxsize=None)
def _mn(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    # mu sorted decreasing; strip the longest part first
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    n = len(lam)
    beta = _beta(lam, n)
    occupied = set(beta)
    total = 0
    for b in beta:
        nb = b - k
        if nb < 0 or nb in occupied:
            continue
        height = sum(1 for c in beta if nb < c < b)
        new = tuple(sorted((c if c != b else nb for c in beta), reverse=True))
        total += (-1) ** height * _mn(_from_beta(new), rest)
    return total


def chi(lam, mu) -> int:
    """chi_lam evaluated on the class of cycle type mu."""
    lam = Partition(lam)
    mu = Partition(mu)
    if lam.size != mu.size:
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    return _mn(tuple(lam), tuple(mu))


@dataclass(frozen=True)
class CharTable:
    d: int
    parts: tuple[Partition, ...]
    values: tuple[tuple[int, ...], ...]  # values[i][j] = chi_{parts[i]}(parts[j])

    def __call__(self, lam, mu) -> int:
        return self.values[self.index[Partition(lam)]][self.index[Partition(mu)]]

    @property
    def index(self) -> dict:
        return _index(self.parts)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "partitions": [str(p) for p in self.parts],
            "values": [list(row) for row in self.values],
        }


@lru_cache(maxsize=None)
def _index(parts):
    return {p: i for i, p in enumerate(parts)}


_tables: dict[int, CharTable] = {}
_lock = threading.Lock()


def char_table(d: int) -> CharTable:
    """Memoized character table of S_d, rows and columns in partitions(d) order."""
    table = _tables.get(d)
    if table is not None:
        return table
    with _lock:
        table = _tables.get(d)
        if table is None:
            ps = partitions(d)
            vals = tuple(tuple(_mn(tuple(l), tuple(m)) for m in ps) for l in ps)
            table = CharTable(d, ps, vals)
            _tables[d] = table
    return table


def central_transposition(eta) -> Fraction:
    """Eigenvalue of the transposition class sum on the irreducible eta (= kappa/2)."""
    eta = Partition(eta)
    if eta.size < 2:
        raise ValueError("need |eta| >= 2")
    return Fraction(kappa(eta), 2)


def central_transposition_ratio(eta) -> Fraction:
    """Same eigenvalue via C(d,2) chi(2,1^{d-2}) / chi(1^d)."""
    eta = Partition(eta)
    d = eta.size
    t = Partition((2,) + (1,) * (d - 2))
    return Fraction(comb(d, 2) * chi(eta, t), chi(eta, (1,) * d))

"""Integer partitions and the statistics the vertex formulas need."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; the empty tuple is allowed."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> Partition:
        return conjugate(self)

    def cells(self):
        """(i, j) with 1-based row i and column j."""
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield i, j

    def contains(self, other: Partition) -> bool:
        """Diagram containment other <= self."""
        return len(other) <= len(self) and all(o <= s for o, s in zip(other, self))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"


EMPTY = Partition()


def conjugate(mu) -> Partition:
    mu = tuple(mu)
    if not mu:
        return EMPTY
    return Partition(sum(1 for p in mu if p > j) for j in range(mu[0]))


def z_factor(mu) -> int:
    """Centralizer order prod_j j^{m_j} m_j! of a permutation of cycle type mu."""
    return prod(j**m * factorial(m) for j, m in Counter(mu).items())


def kappa(mu) -> int:
    return sum(mu) + sum(p * p - 2 * i * p for i, p in enumerate(mu, start=1))


def norm2(mu) -> int:
    """Sum of squared parts."""
    return sum(p * p for p in mu)


def n_stat(mu) -> int:
    """n(mu) = sum (i-1) mu_i."""
    return sum(i * p for i, p in enumerate(mu))


def hooks(mu) -> list[int]:
    mu = Partition(mu)
    mc = conjugate(mu)
    return [mu[i - 1] - j + mc[j - 1] - i + 1 for i, j in mu.cells()]


def dimension(mu) -> int:
    """Number of standard tableaux, by the hook length formula."""
    return factorial(sum(mu)) // prod(hooks(mu))


@lru_cache(maxsize=None)
def _partitions(d: int, cap: int) -> tuple[Partition, ...]:
    if d == 0:
        return (EMPTY,)
    out = []
    for first in range(min(d, cap), 0, -1):
        for rest in _partitions(d - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


def partitions(d: int) -> tuple[Partition, ...]:
    """All partitions of d in reverse-lexicographic order: (d), (d-1,1), ..."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    return _partitions(d, d)


def partitions_upto(n: int):
    for d in range(n + 1):
        yield from partitions(d)


def subpartitions(lam) -> list[Partition]:
    """All eta with eta contained in lam (including empty and lam itself)."""
    lam = tuple(lam)
    out = []

    def rec(i, cap, acc):
        out.append(Partition(acc))
        if i == len(lam):
            return
        for p in range(1, min(cap, lam[i]) + 1):
            rec(i + 1, p, acc + [p])

    rec(0, lam[0] if lam else 0, [])
    return out


def parse_partition(text: str) -> Partition:
    """Accepts "3+1", "3,1", "(3,1)", "" or "0"."""
    s = text.strip().strip("()[]").replace(" ", "")
    if s in ("", "0"):
        return EMPTY
    sep = "+" if "+" in s else ","
    parts = sorted((int(p) for p in s.split(sep) if p), reverse=True)
    return Partition(parts)


@dataclass(frozen=True)
class TwistVector:
    """Multiset of nontrivial Z_a monodromies 1 <= g <= a-1.

    Only used to index x-monomials x_{g_1} ... x_{g_n}.
    """

    a: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if any(not 1 <= g <= self.a - 1 for g in self.entries):
            raise ValueError(f"twist entries must lie in [1, {self.a - 1}]")

    @classmethod
    def from_exponents(cls, a: int, exps) -> TwistVector:
        """exps[i] is the power of x_{i+1}."""
        return cls(a, tuple(i + 1 for i, k in enumerate(exps) for _ in range(int(k))))

    def compatible(self, d: int) -> bool:
        """Monodromy constraint sum(gamma) = d mod a."""
        return (sum(self.entries) - d) % self.a == 0

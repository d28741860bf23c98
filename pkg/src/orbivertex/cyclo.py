"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(phi(N)-1) modulo the
N-th cyclotomic polynomial, as integer numerators over one positive common
denominator.  Values from different fields are lifted to the field of the
lcm conductor before combining.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
import cmath

Rational = Fraction


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _poly_divexact(p, list(cyclotomic_poly(d)))
    return tuple(p)


def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds the power-basis coordinates of zeta_n^j, 0 <= j < n."""
    phi_poly = cyclotomic_poly(n)
    deg = len(phi_poly) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        lead = cur[-1]
        cur = [0] + cur[:-1]
        if lead:
            for i in range(deg):
                cur[i] -= lead * phi_poly[i]
    return tuple(rows)


@lru_cache(maxsize=None)
def _units(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, n + 1) if gcd(k, n) == 1)


class Cyclo:
    """An element of Q(zeta_N).

    >>> z4 = cyclo(4, 1)
    >>> (1 + z4) * (1 - z4) == 2
    True
    """

    __slots__ = ("n", "num", "den")

    def __init__(self, n: int, num, den: int = 1):
        if n < 1:
            raise ValueError("conductor must be positive")
        num = tuple(int(c) for c in num)
        if len(num) != totient(n):
            raise ValueError(f"expected {totient(n)} coordinates for conductor {n}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        self.n = n
        self.num = num
        self.den = den

    # construction ---------------------------------------------------------

    @classmethod
    def from_rational(cls, r, n: int = 1) -> Cyclo:
        r = Fraction(r)
        num = [0] * totient(n)
        num[0] = r.numerator
        return cls(n, num, r.denominator)

    @classmethod
    def from_coords(cls, n: int, coords) -> Cyclo:
        fr = [Fraction(c) for c in coords]
        den = 1
        for f in fr:
            den = lcm(den, f.denominator)
        return cls(n, [int(f * den) for f in fr], den)

    # inspection -----------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self.n

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(c * z**j for j, c in enumerate(self.num)) / self.den

    def __bool__(self) -> bool:
        return any(self.num)

    # field embedding ------------------------------------------------------

    def lift(self, m: int) -> Cyclo:
        """Same value viewed in Q(zeta_m); requires conductor | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"conductor {self.n} does not divide {m}")
        step = m // self.n
        table = _reduction_table(m)
        out = [0] * totient(m)
        for j, c in enumerate(self.num):
            if c:
                row = table[(j * step) % m]
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return Cyclo(m, out, self.den)

    def galois(self, k: int) -> Cyclo:
        """Apply the automorphism zeta -> zeta^k (k coprime to the conductor)."""
        if gcd(k, self.n) != 1:
            raise ValueError("k must be coprime to the conductor")
        table = _reduction_table(self.n)
        out = [0] * len(self.num)
        for j, c in enumerate(self.num):
            if c:
                row = table[(j * k) % self.n]
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return Cyclo(self.n, out, self.den)

    def reduce_conductor(self) -> Cyclo:
        """Rewrite in the smallest cyclotomic field that contains the value."""
        n = self.n
        if self.is_rational():
            return Cyclo.from_rational(self.rational())
        for m in range(1, n):
            if n % m:
                continue
            fixing = [k for k in _units(n) if k % m == 1 % m]
            if all(self.galois(k) == self for k in fixing):
                return _descend(self, m)
        return self

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(x) -> Cyclo:
        if isinstance(x, Cyclo):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclo.from_rational(x)
        return NotImplemented

    def _common(self, other: Cyclo) -> tuple[Cyclo, Cyclo]:
        if self.n == other.n:
            return self, other
        m = lcm(self.n, other.n)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._common(other)
        if a.den == b.den:
            return Cyclo(a.n, [x + y for x, y in zip(a.num, b.num)], a.den)
        return Cyclo(a.n, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self) -> Cyclo:
        return Cyclo(self.n, [-c for c in self.num], self.den)

    def __pos__(self) -> Cyclo:
        return self

    def __sub__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return Cyclo(self.n, [c * other for c in self.num], self.den)
        if isinstance(other, Fraction):
            return Cyclo(self.n, [c * other.numerator for c in self.num], self.den * other.denominator)
        if not isinstance(other, Cyclo):
            return NotImplemented
        a, b = self._common(other)
        n = a.n
        if n == 1:
            return Cyclo(1, (a.num[0] * b.num[0],), a.den * b.den)
        conv = [0] * (2 * len(a.num) - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        conv[i + j] += x * y
        deg = len(a.num)
        out = conv[:deg]
        if len(conv) > deg:
            table = _reduction_table(n)
            for j in range(deg, len(conv)):
                c = conv[j]
                if c:
                    for i, r in enumerate(table[j % n]):
                        if r:
                            out[i] += c * r
        return Cyclo(n, out, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> Cyclo:
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return Cyclo.from_rational(1 / self.rational(), self.n)
        prod = Cyclo.from_rational(1, self.n)
        for k in _units(self.n):
            if k % self.n != 1 % self.n:
                prod = prod * self.galois(k)
        norm = (self * prod).rational()
        return prod * (1 / norm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int) -> Cyclo:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclo.from_rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, Cyclo):
            return NotImplemented
        a, b = self._common(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.rational())
        r = self.reduce_conductor()
        return hash((r.n, r.num, r.den))

    # rendering ------------------------------------------------------------

    def __repr__(self) -> str:
        return f"Cyclo({self.n}, {list(map(str, self.coords))})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        r = self.reduce_conductor()
        if r.n == 1:
            return str(r.rational())
        if r.n == 4:
            re, im = r.coords
            if re == 0:
                return _imag_text(im)
            sign = "+" if im > 0 else "-"
            return f"{re}{sign}{_imag_text(abs(im))}"
        parts = []
        for j, c in enumerate(r.coords):
            if not c:
                continue
            mono = "" if j == 0 else (f"ζ{r.n}" if j == 1 else f"ζ{r.n}^{j}")
            if mono and c == 1:
                s = mono
            elif mono and c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}" if mono else str(c)
            parts.append(s)
        return "+".join(parts).replace("+-", "-")

    def to_json(self) -> dict:
        return {"conductor": self.n, "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, obj: dict) -> Cyclo:
        return cls.from_coords(int(obj["conductor"]), [Fraction(c) for c in obj["coords"]])


def _imag_text(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    num, den = im.numerator, im.denominator
    head = {1: "i", -1: "-i"}.get(num, f"{num}i")
    return head if den == 1 else f"{head}/{den}"


def _descend(x: Cyclo, m: int) -> Cyclo:
    """Coordinates of x in Q(zeta_m), given that x lies in that subfield."""
    n = x.n
    k = totient(m)
    cols = []
    for j in range(k):
        e = [0] * k
        e[j] = 1
        cols.append(Cyclo(m, e).lift(n).coords)
    rows = len(x.num)
    # augmented system: sum_j y_j * cols[j] = x.coords
    mat = [[cols[j][i] for j in range(k)] + [x.coords[i]] for i in range(rows)]
    piv_row = 0
    pivots = []
    for c in range(k):
        p = next((r for r in range(piv_row, rows) if mat[r][c] != 0), None)
        if p is None:
            continue
        mat[piv_row], mat[p] = mat[p], mat[piv_row]
        pv = mat[piv_row][c]
        mat[piv_row] = [v / pv for v in mat[piv_row]]
        for r in range(rows):
            if r != piv_row and mat[r][c] != 0:
                f = mat[r][c]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[piv_row])]
        pivots.append(c)
        piv_row += 1
    y = [Fraction(0)] * k
    for r, c in enumerate(pivots):
        y[c] = mat[r][k]
    return Cyclo.from_coords(m, y)


def cyclo(n: int, k: int = 1) -> Cyclo:
    """zeta_n ** k as an exact element of Q(zeta_n)."""
    if n < 1:
        raise ValueError("conductor must be positive")
    return Cyclo(n, _reduction_table(n)[k % n])


def root_of_unity(frac) -> Cyclo:
    """exp(2*pi*i*frac) for rational frac."""
    frac = Fraction(frac)
    return cyclo(frac.denominator, frac.numerator)


I = cyclo(4, 1)


def simplify(c):
    """Demote rational field elements to int/Fraction; used for series coefficients."""
    if isinstance(c, Cyclo):
        if c.is_rational():
            c = Fraction(c.num[0], c.den)
        else:
            return c
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def coef_to_json(c) -> dict:
    if isinstance(c, Cyclo):
        return c.to_json()
    return {"conductor": 1, "coords": [str(Fraction(c))]}


def coef_to_text(c) -> str:
    if isinstance(c, Cyclo):
        return c.to_text()
    return str(Fraction(c))


def coef_from_json(obj: dict):
    return simplify(Cyclo.from_json(obj))

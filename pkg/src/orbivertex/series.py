"""Sparse truncated multivariate series with exact rational exponents.

A series lives in a :class:`TruncationSpec`.  Variables listed in one of the
spec's groups are *graded*: a term is kept only while its total degree in
every group stays within that group's order.  All other variables are
*ungraded* and carry exact exponents, so a series must only ever hold
finitely many exponents of them.

Exponents are stored internally as integers over the fixed denominator
``SCALE``; any rational exponent whose denominator divides ``SCALE`` is
representable exactly.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from operator import add, sub

from .cyclo import Cyclo, coef_from_json, coef_to_json, coef_to_text, root_of_unity, simplify

SCALE = 720720  # lcm(1..16)


class SeriesDomainError(ValueError):
    """An operation was applied outside its domain (e.g. exp of a nonzero constant)."""


class TruncationMismatch(ValueError):
    """Two series with different truncation specs were combined."""


def _scaled(e) -> int:
    e = Fraction(e)
    if SCALE % e.denominator:
        raise ValueError(f"exponent {e} is off the supported lattice (denominator must divide {SCALE})")
    return e.numerator * (SCALE // e.denominator)


def _unscaled(k: int) -> Fraction:
    return Fraction(k, SCALE)


_VAR_RE = re.compile(r"^([qsxy])_(\d+)$")
_RANK = {"Q": 0, "t": 1, "q": 2, "hbar": 3}
_FAMILY = {"q": 4, "s": 5, "x": 6, "y": 7}


def var_key(name: str):
    if name in _RANK:
        return (_RANK[name], 0, name)
    m = _VAR_RE.match(name)
    if m:
        return (_FAMILY[m.group(1)], int(m.group(2)), name)
    return (8, 0, name)


def _sorted_vars(names) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=var_key))


@dataclass(frozen=True)
class TruncationSpec:
    """Groups of graded variables, each with a maximal total degree."""

    bounds: tuple[tuple[tuple[str, ...], Fraction], ...] = ()

    def __post_init__(self):
        norm = []
        seen: set[str] = set()
        for names, order in self.bounds:
            if isinstance(names, str):
                names = (names,)
            names = _sorted_vars(names)
            if seen & set(names):
                raise ValueError("a variable may belong to only one truncation group")
            seen |= set(names)
            order = Fraction(order)
            if order < 0:
                raise ValueError("truncation order must be nonnegative")
            norm.append((names, order))
        norm.sort(key=lambda g: [var_key(v) for v in g[0]])
        object.__setattr__(self, "bounds", tuple(norm))

    @classmethod
    def of(cls, *groups, **single) -> TruncationSpec:
        """``TruncationSpec.of((("t", "q"), 6), Q=3)``"""
        return cls(tuple(groups) + tuple(((k,), v) for k, v in single.items()))

    @property
    def graded(self) -> frozenset[str]:
        return frozenset(v for names, _ in self.bounds for v in names)

    def order_of(self, var: str):
        for names, order in self.bounds:
            if var in names:
                return order
        return None

    def with_order(self, var_or_group, order) -> TruncationSpec:
        """Copy with the group containing var_or_group set to order."""
        key = var_or_group if isinstance(var_or_group, str) else var_or_group[0]
        return TruncationSpec(tuple((n, order if key in n else o) for n, o in self.bounds))

    def shifted(self, delta) -> TruncationSpec:
        """Copy with every group order raised by delta."""
        return TruncationSpec(tuple((n, o + delta) for n, o in self.bounds))

    def renamed(self, mapping: dict) -> TruncationSpec:
        return TruncationSpec(tuple((tuple(mapping.get(v, v) for v in n), o) for n, o in self.bounds))

    def without(self, var: str) -> TruncationSpec:
        groups = []
        for n, o in self.bounds:
            n = tuple(v for v in n if v != var)
            if n:
                groups.append((n, o))
        return TruncationSpec(tuple(groups))

    def label(self):
        if len(self.bounds) == 1:
            return str(self.bounds[0][1])
        return {"+".join(n): str(o) for n, o in self.bounds}


EXACT = TruncationSpec()


class PrecisionLoss(ArithmeticError):
    """A result is not known to the full order of its truncation spec."""


INF = 1 << 62


@lru_cache(maxsize=4096)
def _full(trunc: TruncationSpec) -> tuple[int, ...]:
    return tuple(_scaled(o) for _, o in trunc.bounds)


@lru_cache(maxsize=8192)
def _layout(vars: tuple[str, ...], trunc: TruncationSpec, prec: tuple[int, ...]):
    pos = {v: i for i, v in enumerate(vars)}
    groups = []
    for (names, _), bound in zip(trunc.bounds, prec):
        groups.append((tuple(pos[v] for v in names if v in pos), bound))
    graded_idx = tuple(sorted(i for idx, _ in groups for i in idx))
    return tuple(groups), graded_idx


@lru_cache(maxsize=4096)
def _remap(src: tuple[str, ...], dst: tuple[str, ...]):
    pos = {v: i for i, v in enumerate(src)}
    return tuple(pos.get(v, -1) for v in dst)


def _embed(terms: dict, src, dst) -> dict:
    if src == dst:
        return terms
    idx = _remap(src, dst)
    return {tuple(m[i] if i >= 0 else 0 for i in idx): c for m, c in terms.items()}


def _vals(terms: dict, groups) -> tuple[int, ...]:
    if not terms:
        return tuple(INF for _ in groups)
    return tuple(min(sum(m[i] for i in idx) for m in terms) for idx, _ in groups)


def _filter(terms: dict, groups) -> dict:
    return {m: c for m, c in terms.items() if _fits(m, groups)}


class MultiSeries:
    """Immutable truncated series; coefficients are int, Fraction or Cyclo.

    Besides its spec, a series records per group the precision up to which
    its terms are known (``prec``).  It equals the spec order unless an
    operation lost precision, e.g. dividing by a series with leading term of
    positive degree, or multiplying by one with negative degrees.
    """

    __slots__ = ("trunc", "vars", "terms", "prec")

    def __init__(self, trunc: TruncationSpec, vars: tuple[str, ...], terms: dict, prec=None):
        # trusted constructor: terms already fit prec and carry no zeros
        self.trunc = trunc
        self.vars = vars
        self.terms = terms
        self.prec = _full(trunc) if prec is None else prec

    # construction ---------------------------------------------------------

    @classmethod
    def from_terms(cls, trunc: TruncationSpec, items) -> MultiSeries:
        """items: iterable of (exponent dict, coefficient); terms beyond trunc are dropped."""
        items = list(items)
        names = set(trunc.graded)
        for exps, _ in items:
            names.update(exps)
        vars = _sorted_vars(names)
        groups, _ = _layout(vars, trunc, _full(trunc))
        terms: dict = {}
        for exps, c in items:
            m = tuple(_scaled(exps.get(v, 0)) for v in vars)
            if _fits(m, groups):
                terms[m] = terms.get(m, 0) + c
        return cls(trunc, vars, _clean(terms))._compact()

    @classmethod
    def zero(cls, trunc: TruncationSpec) -> MultiSeries:
        return cls(trunc, (), {})

    @classmethod
    def const(cls, c, trunc: TruncationSpec) -> MultiSeries:
        c = simplify(c)
        return cls(trunc, (), {(): c} if c else {})

    @classmethod
    def monomial(cls, trunc: TruncationSpec, exps: dict | None = None, coef=1) -> MultiSeries:
        return cls.from_terms(trunc, [(exps or {}, coef)])

    @classmethod
    def var(cls, name: str, trunc: TruncationSpec) -> MultiSeries:
        return cls.monomial(trunc, {name: 1})

    # inspection -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _groups(self):
        return _layout(self.vars, self.trunc, self.prec)

    @property
    def precision(self) -> dict:
        return {names: _unscaled(p) for (names, _), p in zip(self.trunc.bounds, self.prec)}

    def is_full(self) -> bool:
        return self.prec == _full(self.trunc)

    def require_full(self, what: str = "series") -> MultiSeries:
        if not self.is_full():
            lost = {"+".join(n): str(p) for n, p in self.precision.items()}
            raise PrecisionLoss(f"{what} only known to {lost}, spec asks for {self.trunc.label()}")
        return self

    def items(self):
        """Yield (exponent dict with Fraction values, coefficient)."""
        for m, c in self.terms.items():
            yield {v: _unscaled(e) for v, e in zip(self.vars, m) if e}, c

    def coeff(self, exps: dict | None = None, **kw):
        exps = dict(exps or {}, **kw)
        if any(v not in self.vars for v, e in exps.items() if e):
            return 0
        m = tuple(_scaled(exps.get(v, 0)) for v in self.vars)
        return self.terms.get(m, 0)

    def coefficient(self, var: str, e) -> MultiSeries:
        """The series multiplying var**e, with var removed from the spec."""
        e = _scaled(e)
        trunc = self.trunc.without(var)
        prec = []
        for (names, _), p in zip(self.trunc.bounds, self.prec):
            if names == (var,):
                continue
            prec.append(p - e if var in names else p)
        prec = tuple(min(p, f) for p, f in zip(prec, _full(trunc)))
        if var not in self.vars:
            terms = self.terms if e == 0 else {}
            return MultiSeries(trunc, self.vars, _filter(terms, _layout(self.vars, trunc, prec)[0]), prec)
        i = self.vars.index(var)
        vars = self.vars[:i] + self.vars[i + 1:]
        terms = {m[:i] + m[i + 1:]: c for m, c in self.terms.items() if m[i] == e}
        return MultiSeries(trunc, vars, _filter(terms, _layout(vars, trunc, prec)[0]), prec)._compact()

    def exponents(self, var: str) -> list[Fraction]:
        if var not in self.vars:
            return [Fraction(0)] if self.terms else []
        i = self.vars.index(var)
        return sorted({_unscaled(m[i]) for m in self.terms})

    def valuation(self, group=None) -> Fraction | None:
        """Minimal total degree over the terms, in one group or over all graded variables."""
        if not self.terms:
            return None
        groups, graded = self._groups()
        if group is None:
            idx = graded
        else:
            key = group if isinstance(group, str) else group[0]
            idx = next((g[0] for g, (n, _) in zip(groups, self.trunc.bounds) if key in n), ())
        return _unscaled(min(sum(m[i] for i in idx) for m in self.terms))

    def constant_term(self):
        return self.terms.get(tuple(0 for _ in self.vars), 0)

    # structural -----------------------------------------------------------

    def _compact(self) -> MultiSeries:
        used = [i for i in range(len(self.vars)) if any(m[i] for m in self.terms)]
        if len(used) == len(self.vars):
            return self
        vars = tuple(self.vars[i] for i in used)
        terms = {tuple(m[i] for i in used): c for m, c in self.terms.items()}
        return MultiSeries(self.trunc, vars, terms, self.prec)

    def _align(self, other: MultiSeries):
        if self.trunc != other.trunc:
            raise TruncationMismatch(f"incompatible truncation specs: {self.trunc} vs {other.trunc}")
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        vars = _sorted_vars(self.vars + other.vars)
        return vars, _embed(self.terms, self.vars, vars), _embed(other.terms, other.vars, vars)

    def retrunc(self, trunc: TruncationSpec, assume_exact: bool = False) -> MultiSeries:
        """Re-home into another spec, dropping terms that violate it.

        The precision carries over when each new group meets the series'
        variables exactly as one old group did (or not at all).  Otherwise a
        ValueError is raised, unless ``assume_exact`` asserts that the series
        is exact (e.g. a polynomial) in the affected variables.
        """
        own = set(self.vars)
        prec = []
        for (names, order), full in zip(trunc.bounds, _full(trunc)):
            eff = set(names) & own
            olds = [(set(n) & own, p) for (n, _), p in zip(self.trunc.bounds, self.prec) if set(n) & eff]
            if not eff or assume_exact:
                prec.append(full)
            elif len(olds) == 1 and olds[0][0] == eff:
                prec.append(min(full, olds[0][1]))
            else:
                raise ValueError(f"cannot transfer precision into group {names}; pass assume_exact=True if the series is exact there")
        if not assume_exact:
            new_graded = trunc.graded
            for (names, _), p, f in zip(self.trunc.bounds, self.prec, _full(self.trunc)):
                if set(names) & own and not set(names) & new_graded and p < INF and not names == ():
                    raise ValueError(f"variables {names} would become ungraded; pass assume_exact=True if the series is a polynomial in them")
        prec = tuple(prec)
        vars = _sorted_vars(self.vars + tuple(trunc.graded))
        groups, _ = _layout(vars, trunc, prec)
        terms = _filter(_embed(self.terms, self.vars, vars), groups)
        return MultiSeries(trunc, vars, terms, prec)._compact()

    def truncate(self, order_or_spec) -> MultiSeries:
        """Lower the order of every group (or switch to a spec with the same groups)."""
        if isinstance(order_or_spec, TruncationSpec):
            spec = order_or_spec
            if [n for n, _ in spec.bounds] != [n for n, _ in self.trunc.bounds]:
                raise ValueError("truncate keeps the grouping; use retrunc to regroup")
        else:
            spec = TruncationSpec(tuple((n, order_or_spec) for n, _ in self.trunc.bounds))
        prec = tuple(min(p, f) for p, f in zip(self.prec, _full(spec)))
        groups, _ = _layout(self.vars, spec, prec)
        return MultiSeries(spec, self.vars, _filter(self.terms, groups), prec)

    def rename(self, mapping: dict) -> MultiSeries:
        """Rename variables simultaneously; the spec is renamed alike."""
        new = [mapping.get(v, v) for v in self.vars]
        if len(set(new)) != len(new):
            raise ValueError("renaming would merge variables; use substitute")
        trunc = self.trunc.renamed(mapping)
        old_prec = {tuple(sorted((mapping.get(v, v) for v in n), key=var_key)): p
                    for (n, _), p in zip(self.trunc.bounds, self.prec)}
        prec = tuple(old_prec[n] for n, _ in trunc.bounds)
        vars = _sorted_vars(new)
        perm = _remap(tuple(new), vars)
        terms = {tuple(m[i] for i in perm): c for m, c in self.terms.items()}
        return MultiSeries(trunc, vars, terms, prec)

    def map_coeffs(self, fn) -> MultiSeries:
        return MultiSeries(self.trunc, self.vars, _clean({m: fn(c) for m, c in self.terms.items()}), self.prec)

    def shift(self, exps: dict, coef=1) -> MultiSeries:
        """Multiply by the exact monomial coef * prod v**e."""
        vars = _sorted_vars(self.vars + tuple(exps))
        d = tuple(_scaled(exps.get(v, 0)) for v in vars)
        groups_full, _ = _layout(vars, self.trunc, _full(self.trunc))
        prec = tuple(min(f, p + sum(d[i] for i in idx)) for (idx, f), p in zip(groups_full, self.prec))
        groups, _ = _layout(vars, self.trunc, prec)
        terms = {}
        for m, c in _embed(self.terms, self.vars, vars).items():
            mm = tuple(map(add, m, d))
            if _fits(mm, groups):
                terms[mm] = c
        out = MultiSeries(self.trunc, vars, terms, prec)
        return out.scale(coef)._compact() if coef != 1 else out._compact()

    # ring operations ------------------------------------------------------

    def _coerce(self, other) -> MultiSeries:
        if isinstance(other, MultiSeries):
            return other
        if isinstance(other, (int, Fraction, Cyclo)):
            return MultiSeries.const(other, self.trunc)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        vars, a, b = self._align(other)
        if self.prec != other.prec:
            prec = tuple(map(min, self.prec, other.prec))
            groups, _ = _layout(vars, self.trunc, prec)
            a, b = _filter(a, groups), _filter(b, groups)
        else:
            prec = self.prec
        out = dict(a)
        for m, c in b.items():
            out[m] = out.get(m, 0) + c
        return MultiSeries(self.trunc, vars, _clean(out), prec)

    __radd__ = __add__

    def __neg__(self) -> MultiSeries:
        return MultiSeries(self.trunc, self.vars, {m: -c for m, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> MultiSeries:
        if isinstance(c, float):
            raise TypeError("series coefficients must be exact, got a float")
        c = simplify(c)
        if not c:
            return MultiSeries(self.trunc, (), {}, self.prec)
        if c == 1:
            return self
        return MultiSeries(self.trunc, self.vars, _clean({m: v * c for m, v in self.terms.items()}), self.prec)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return self.scale(other)
        if not isinstance(other, MultiSeries):
            return NotImplemented
        vars, a, b = self._align(other)
        full = _full(self.trunc)
        idx_groups, _ = _layout(vars, self.trunc, full)
        va, vb = _vals(a, idx_groups), _vals(b, idx_groups)
        prec = tuple(min(f, pa + y, pb + x) for f, pa, pb, x, y in zip(full, self.prec, other.prec, va, vb))
        groups, _ = _layout(vars, self.trunc, prec)
        return MultiSeries(self.trunc, vars, _mul_terms(a, b, groups), prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclo):
            return self.scale(other.inverse())
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / other)
        if isinstance(other, MultiSeries):
            return self * geom_inverse(other)
        return NotImplemented

    def __pow__(self, k: int) -> MultiSeries:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return geom_inverse(self) ** (-k)
        result = MultiSeries.const(1, self.trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> MultiSeries:
        return geom_inverse(self)

    def __eq__(self, other) -> bool:
        """Equality of all terms known on both sides."""
        if isinstance(other, (int, Fraction, Cyclo)):
            other = MultiSeries.const(other, self.trunc)
        if not isinstance(other, MultiSeries):
            return NotImplemented
        if self.trunc != other.trunc:
            return False
        vars, a, b = self._align(other)
        if self.prec != other.prec:
            groups, _ = _layout(vars, self.trunc, tuple(map(min, self.prec, other.prec)))
            a, b = _filter(a, groups), _filter(b, groups)
        return a == b

    __hash__ = None

    # rendering ------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def to_json(self) -> dict:
        s = self._compact()
        out = {
            "vars": list(s.vars),
            "order": s.trunc.label(),
            "terms": [
                {"exp": [str(_unscaled(e)) for e in m], "coef": coef_to_json(c)}
                for m, c in s.sorted_terms()
            ],
        }
        if not s.is_full():
            out["known_to"] = {"+".join(n): str(p) for n, p in s.precision.items()}
        return out

    @classmethod
    def from_json(cls, obj: dict, trunc: TruncationSpec) -> MultiSeries:
        vars = obj["vars"]
        return cls.from_terms(
            trunc,
            [({v: Fraction(e) for v, e in zip(vars, t["exp"])}, coef_from_json(t["coef"])) for t in obj["terms"]],
        )

    def to_text(self) -> str:
        s = self._compact()
        if not s.terms:
            return "0"
        parts = []
        for m, c in s.sorted_terms():
            mono = "*".join(_mono_text(v, e) for v, e in zip(s.vars, m) if e)
            ct = coef_to_text(c)
            if not mono:
                parts.append(ct)
            elif ct == "1":
                parts.append(mono)
            elif ct == "-1":
                parts.append("-" + mono)
            elif "+" in ct[1:] or "-" in ct[1:]:
                parts.append(f"({ct})*{mono}")
            else:
                parts.append(f"{ct}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiSeries({self.to_text()}; order={self.trunc.label()})"


def _mono_text(v: str, e: int) -> str:
    e = _unscaled(e)
    if e == 1:
        return v
    return f"{v}^{e}" if e.denominator == 1 and e > 0 else f"{v}^({e})"


def _fits(m, groups) -> bool:
    for idx, bound in groups:
        s = 0
        for i in idx:
            s += m[i]
        if s > bound:
            return False
    return True


def _clean(terms: dict) -> dict:
    out = {}
    for m, c in terms.items():
        if c:
            out[m] = c if type(c) is int else simplify(c)
    return out


def _mul_terms(a: dict, b: dict, groups) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    if not groups:
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(map(add, m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return _clean(out)
    idx0, bound0 = groups[0]
    rest = groups[1:]

    def degs(m):
        return tuple(sum(m[i] for i in idx) for idx, _ in groups)

    bl = sorted(((degs(m), m, c) for m, c in b.items()), key=lambda x: x[0][0])
    out = {}
    for m1, c1 in a.items():
        d1 = degs(m1)
        lim0 = bound0 - d1[0]
        for d2, m2, c2 in bl:
            if d2[0] > lim0:
                break
            ok = True
            for k in range(len(rest)):
                if d1[k + 1] + d2[k + 1] > rest[k][1]:
                    ok = False
                    break
            if not ok:
                continue
            m = tuple(map(add, m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return _clean(out)


# transcendental operations -------------------------------------------------


def _graded_degree(m, graded_idx) -> int:
    return sum(m[i] for i in graded_idx)


def _levels(terms: dict, graded_idx) -> dict[int, list]:
    lv: dict[int, list] = {}
    for m, c in terms.items():
        lv.setdefault(_graded_degree(m, graded_idx), []).append((m, c))
    return lv


_MAX_LEVELS = 200000


def _level_recurrence(step_levels: dict, groups, start: dict, combine, seed_levels=()):
    """Solve g_n = combine(n, sum_k step_k * g_{n-k}) level by level in graded degree.

    step_levels maps positive levels to lists of (monomial, coefficient);
    start holds the level-0 terms of g.
    """
    g: dict[int, dict] = {0: start} if start else {}
    heap: list[int] = []
    pushed: set[int] = set()

    def push(n):
        if n not in pushed:
            pushed.add(n)
            heapq.heappush(heap, n)

    for n in seed_levels:
        push(n)
    if start:
        for k in step_levels:
            push(k)
    count = 0
    while heap:
        n = heapq.heappop(heap)
        count += 1
        if count > _MAX_LEVELS:
            raise SeriesDomainError("series recursion does not terminate under this truncation")
        acc: dict = {}
        for k, sterms in step_levels.items():
            prev = g.get(n - k)
            if not prev:
                continue
            for m1, c1 in sterms:
                for m2, c2 in prev.items():
                    m = tuple(map(add, m1, m2))
                    if _fits(m, groups):
                        acc[m] = acc.get(m, 0) + c1 * c2
        level = _clean(combine(n, acc))
        if level:
            g[n] = level
            for k in step_levels:
                push(n + k)
    out = {}
    for terms in g.values():
        out.update(terms)
    return out


def _require_nonneg(s: MultiSeries, terms, what: str):
    idx_groups, graded = _layout(s.vars, s.trunc, s.prec)
    for v in _vals(terms, idx_groups):
        if v < 0:
            raise SeriesDomainError(f"{what}: needs nonnegative degrees in every truncation group")
    for m in terms:
        if _graded_degree(m, graded) <= 0:
            raise SeriesDomainError(f"{what}: every non-constant term needs positive graded degree")


def exp_series(f: MultiSeries) -> MultiSeries:
    """exp(f) for f without constant term in the graded variables."""
    groups, graded = f._groups()
    if f.terms and not graded:
        raise SeriesDomainError("exp needs at least one graded variable")
    for m in f.terms:
        if all(m[i] == 0 for i in graded):
            raise SeriesDomainError("exp of a series with a nonzero constant term")
    _require_nonneg(f, f.terms, "exp")
    ef = {k: [(m, c * k) for m, c in ts] for k, ts in _levels(f.terms, graded).items()}
    zero = tuple(0 for _ in f.vars)

    def combine(n, acc):
        r = Fraction(1, n)
        return {m: c * r for m, c in acc.items()}

    terms = _level_recurrence(ef, groups, {zero: 1}, combine)
    return MultiSeries(f.trunc, f.vars, terms, f.prec)._compact()


def log_series(h: MultiSeries) -> MultiSeries:
    """log(h) for h whose constant term in the graded variables is exactly 1."""
    groups, graded = h._groups()
    zero = tuple(0 for _ in h.vars)
    const = {m: c for m, c in h.terms.items() if all(m[i] == 0 for i in graded)}
    if const != {zero: 1}:
        raise SeriesDomainError("log needs constant term 1")
    u = {m: c for m, c in h.terms.items() if m != zero}
    _require_nonneg(h, u, "log")
    hl = _levels(u, graded)
    # E(log h) = E(h)/h, so (Eg)_n = n h_n - sum_k h_k (Eg)_{n-k}
    neg_h = {k: [(m, -c) for m, c in ts] for k, ts in hl.items()}

    def combine(n, acc):
        for m, c in hl.get(n, ()):
            acc[m] = acc.get(m, 0) + c * n
        return acc

    eg = _level_recurrence(neg_h, groups, {}, combine, seed_levels=hl)
    terms = {m: c * Fraction(1, _graded_degree(m, graded)) for m, c in eg.items()}
    return MultiSeries(h.trunc, h.vars, _clean(terms), h.prec)._compact()


def geom_inverse(f: MultiSeries) -> MultiSeries:
    """1/f for f = c*m*(1 + u), m a monomial and u of positive graded degree.

    If m has positive degree in a group, the result is known to twice that
    degree less than f.
    """
    groups, graded = f._groups()
    if not f.terms:
        raise SeriesDomainError("inverse of the zero series")
    lv = _levels(f.terms, graded)
    low = min(lv)
    if len(lv[low]) != 1:
        raise SeriesDomainError("leading part is not a single monomial; not invertible here")
    m0, c0 = lv[low][0]
    inv_c0 = c0.inverse() if isinstance(c0, Cyclo) else Fraction(1) / c0
    d0 = tuple(sum(m0[i] for i in idx) for idx, _ in groups)
    full = _full(f.trunc)
    prec = tuple(min(fl, p - 2 * d) for fl, p, d in zip(full, f.prec, d0))
    u = {tuple(map(sub, m, m0)): c for m, c in f.terms.items() if m != m0}
    u_groups = tuple((idx, p - d) for (idx, p), d in zip(groups, d0))
    for v in _vals(u, u_groups):
        if v < 0:
            raise SeriesDomainError("inverse: non-leading part must have nonnegative degrees relative to the leading term")
    step: dict[int, list] = {}
    for m, c in u.items():
        step.setdefault(_graded_degree(m, graded), []).append((m, -c * inv_c0))
    if any(k <= 0 for k in step):
        raise SeriesDomainError("inverse: non-leading part must have positive graded degree")
    # h = 1/(1+u) is needed up to prec + deg(m0)
    h_groups = tuple((idx, p + d) for (idx, _), p, d in zip(groups, prec, d0))
    zero = tuple(0 for _ in f.vars)
    h = _level_recurrence(step, h_groups, {zero: 1}, lambda n, acc: acc)
    neg_m0 = tuple(-e for e in m0)
    out_groups, _ = _layout(f.vars, f.trunc, prec)
    terms = {}
    for m, c in h.items():
        mm = tuple(map(add, m, neg_m0))
        if _fits(mm, out_groups):
            terms[mm] = c * inv_c0
    return MultiSeries(f.trunc, f.vars, _clean(terms), prec)._compact()


def _check_graded_composition(f: MultiSeries, var: str, g: MultiSeries):
    """Refuse compositions where terms dropped from f could reappear below g's orders."""
    bad = f"cannot bound the precision of substituting for graded {var}"
    if var in f.vars and any(e < 0 for e in (m[f.vars.index(var)] for m in f.terms)):
        raise SeriesDomainError(bad + " (negative powers)")
    src = next(n for n, _ in f.trunc.bounds if var in n)
    own = set(f.vars)
    g_graded = set(g.vars) & g.trunc.graded
    tgt_names = {n for n, _ in g.trunc.bounds if set(n) & (g_graded | (set(src) - {var}))}
    if len(tgt_names) > 1:
        raise SeriesDomainError(bad)
    if tgt_names:
        tgt = tgt_names.pop()
        if g.trunc.order_of(tgt[0]) > f.trunc.order_of(var):
            raise SeriesDomainError(bad)
        pos = [i for i, v in enumerate(g.vars) if v in tgt]
        if any(sum(m[i] for i in pos) < SCALE for m in g.terms):
            raise SeriesDomainError(f"divergent composition: substituted series for {var} needs graded degree >= 1")
    else:
        tgt = ()
        if set(src) - {var} or g.terms:
            raise SeriesDomainError(bad)
    if (set(src) - {var}) - set(tgt):
        raise SeriesDomainError(bad)
    vals = dict(zip([n for n, _ in f.trunc.bounds], _vals(f.terms, f._groups()[0])))
    for names, order in f.trunc.bounds:
        eff = set(names) & own
        if names == src or not eff:
            continue
        if eff <= set(tgt):
            if vals[names] < 0 or order < g.trunc.order_of(tgt[0]):
                raise SeriesDomainError(bad)
            continue
        homes = [n for n, _ in g.trunc.bounds if set(n) & eff]
        if len(homes) != 1 or set(homes[0]) & own != eff or g.trunc.order_of(homes[0][0]) > order:
            raise SeriesDomainError(bad)


def substitute(f: MultiSeries, var: str, g: MultiSeries) -> MultiSeries:
    """Compose: replace var by g.  The result lives in g's truncation spec.

    If var is graded in f, g must have degree >= 1 in a result group that
    also holds the rest of var's group (so no dropped term of f can come
    back).  Fractional powers of var need g to be a bare monomial.
    """
    f.require_full("substitute: f")
    trunc = g.trunc
    if var not in f.vars:
        return f.retrunc(trunc)
    if var in f.trunc.graded:
        _check_graded_composition(f, var, g)
    i = f.vars.index(var)
    others = f.vars[:i] + f.vars[i + 1:]
    by_exp: dict[int, list] = {}
    for m, c in f.terms.items():
        by_exp.setdefault(m[i], []).append((m[:i] + m[i + 1:], c))
    vars = _sorted_vars(others + g.vars + tuple(trunc.graded))
    groups, _ = _layout(vars, trunc, _full(trunc))
    idx = _remap(others, vars)
    result = MultiSeries.zero(trunc)
    for e, rest in sorted(by_exp.items()):
        acc: dict = {}
        for mo, c in rest:
            mm = tuple(mo[j] if j >= 0 else 0 for j in idx)
            acc[mm] = acc.get(mm, 0) + c
        part = MultiSeries(trunc, vars, _clean(acc), _full(trunc))
        result = result + part * _power(g, e, var)
    return result._compact()


def _power(g: MultiSeries, e_scaled: int, var: str) -> MultiSeries:
    if e_scaled % SCALE == 0:
        return g ** (e_scaled // SCALE)
    if len(g.terms) != 1:
        raise SeriesDomainError(f"fractional power of {var} needs a monomial substitute")
    (m, c), = g.terms.items()
    if c != 1:
        raise SeriesDomainError(f"fractional power of {var} needs a monomial with coefficient 1")
    r = _unscaled(e_scaled)
    exps = {v: _unscaled(x) * r for v, x in zip(g.vars, m)}
    return MultiSeries.monomial(g.trunc, exps)


def substitute_exp(f: MultiSeries, var: str, g: MultiSeries, theta=0) -> MultiSeries:
    """Replace var by exp(2 pi i theta) * exp(g).

    Powers follow the branch var**r -> exp(2 pi i theta r) exp(r g).  var
    must be ungraded in f, and the result lives in g's spec.
    """
    if var in f.trunc.graded:
        raise SeriesDomainError(f"{var} is graded in f; exponential substitution would diverge")
    trunc = g.trunc
    if var not in f.vars:
        return f.retrunc(trunc)
    theta = Fraction(theta)
    i = f.vars.index(var)
    others = f.vars[:i] + f.vars[i + 1:]
    by_exp: dict[int, list] = {}
    for m, c in f.terms.items():
        by_exp.setdefault(m[i], []).append((m[:i] + m[i + 1:], c))
    rest_series = {}
    for e, rest in by_exp.items():
        rest_series[e] = MultiSeries(f.trunc, others, _clean({m: c for m, c in rest}), f.prec).retrunc(trunc)
    result = MultiSeries.zero(trunc)
    for e in sorted(rest_series):
        r = _unscaled(e)
        factor = exp_series(g * r) if g.terms else MultiSeries.const(1, trunc)
        result = result + rest_series[e] * factor * root_of_unity(theta * r)
    return result._compact()


def at_full_precision(build, trunc: TruncationSpec, margins=(0, 1, 2, 4, 8, 16, 32)) -> MultiSeries:
    """Run build(spec) at raised orders until the result is known to all of trunc.

    Needed when intermediate steps lose precision (Laurent poles, negative
    exponents).  build must return a series in the spec it is given.
    """
    for k, m in enumerate(margins):
        try:
            s = build(trunc.shifted(m)).truncate(trunc)
        except SeriesDomainError:
            # too low a working order can truncate a denominator to zero
            if k == len(margins) - 1:
                raise
            continue
        if s.is_full():
            return s
    raise PrecisionLoss(f"could not reach {trunc.label()} with margins up to {margins[-1]}")

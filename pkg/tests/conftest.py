from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from orbivertex.cyclo import Cyclo, totient
from orbivertex.partitions import partitions
from orbivertex.series import MultiSeries, TruncationSpec

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyclos(draw, conductors=(1, 3, 4, 5, 8, 12)):
    n = draw(st.sampled_from(conductors))
    coords = draw(st.lists(small_rationals, min_size=totient(n), max_size=totient(n)))
    return Cyclo.from_coords(n, coords)


def partition_strategy(max_size: int, min_size: int = 0):
    return st.integers(min_value=min_size, max_value=max_size).flatmap(lambda d: st.sampled_from(partitions(d)))


SPEC_TQ = TruncationSpec.of(t=4, q=4)


@st.composite
def series_tq(draw, spec=SPEC_TQ, max_terms=8, coef=small_rationals):
    """Random sparse series in t, q with half-integer exponents and an ungraded x."""
    n = draw(st.integers(min_value=0, max_value=max_terms))
    items = []
    for _ in range(n):
        exps = {
            "t": Fraction(draw(st.integers(0, 8)), 2),
            "q": Fraction(draw(st.integers(0, 8)), 2),
            "x": draw(st.integers(-2, 2)),
        }
        items.append((exps, draw(coef)))
    return MultiSeries.from_terms(spec, items)

"""Exact computations for the one-leg orbifold refined vertex and its gluings.

Coefficients live in cyclotomic fields (``cyclo``), generating functions are
truncated sparse series with rational exponents (``series``), and the
combinatorial layer (partitions, characters, Schur functions, Hurwitz
series) feeds the vertex and gluing formulas.
"""

from .cyclo import Cyclo, I, cyclo
from .partitions import Partition, parse_partition, partitions
from .series import MultiSeries, TruncationSpec, exp_series, geom_inverse, log_series, substitute

__all__ = [
    "Cyclo",
    "I",
    "MultiSeries",
    "Partition",
    "TruncationSpec",
    "cyclo",
    "exp_series",
    "geom_inverse",
    "log_series",
    "parse_partition",
    "partitions",
    "substitute",
]

__version__ = "0.1.0"

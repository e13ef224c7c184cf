"""Exact enumeration of the permutation classes Av(1234,2341) and
Av(1243,2314) by Hasse graph decomposition, with generating functions
computed as exact truncated power series and every result cross-checked
against a brute-force oracle and bundled OEIS data."""

__version__ = "0.1.0"

from .perms import (
    Basis,
    BasisError,
    CLASS_BASES,
    CLASS_E_BASIS,
    CLASS_F_BASIS,
    Permutation,
    ResourceLimitError,
    avoids_all,
    basis,
    contains,
    enumerate_class,
    left_to_right_minima,
    perm,
    right_to_left_maxima,
)
from .hasse import (
    CatalyticStatistics,
    HasseGraph,
    NotInClassError,
    SourceDecomposition,
    UTree,
    UTreeDecomposition,
    build_hasse,
    catalytic_statistics,
    source_decomposition,
    u_tree_decomposition,
)
from .series import (
    DEFAULT_ORDER,
    MultiSeries,
    RealPolynomial,
    catalytic_derivative,
    catalytic_eval,
    divided_difference,
    fixed_point_solve,
    newton_algebraic,
    rational_series,
    real_roots,
    shift_div,
    slice_quotient,
    sqrt_series,
    variable,
)
from .oeis import SequenceRecord, compare, oeis_fetch

__all__ = [name for name in dir() if not name.startswith("_")]

"""Exact enumeration of bicolored maps (dessins / Belyi graphs / hypermaps).

The package computes, in exact rational arithmetic, the weighted counts
of connected bicolored maps by number of edges d, vertex counts of the
two colors (k, l) and cycle profile at infinity, via a one-edge-insertion
recursion on sparse generating series.  Collapsing by genus yields the
marked counts of maps (equivalently rooted hypermaps on d darts) by
degree and genus.  Everything is cross-checkable in-process: a
permutation-pair brute force, two closed-form columns, a coefficient-level
recursion, the partition-function exponential identity, and the first
KP-hierarchy equations.
"""

from .counts import (
    GenusTable,
    genus_table,
    marked_count_genus0,
    marked_count_genus1,
)
from .evolution import (
    ConnectedSeries,
    grow_cycle,
    join_components,
    next_piece,
    partition_function,
    recursion_rhs,
    split_or_join_cycles,
)
from .kp import KP_EQUATIONS, KpEquation, KpReport, kp_report, kp_residual
from .oracle import (
    PairCounts,
    compare_with_series,
    cycle_type,
    is_transitive,
    transitive_pair_counts,
)
from .series import (
    GradedSeries,
    MonomialKey,
    NonPhysicalKeyError,
    TruncationError,
    exp_series,
    from_parts,
    genus_of,
    partition_parts,
    partition_weight,
    partitions,
    parts_list,
    physical_keys,
)

__version__ = "1.0.0"

__all__ = [
    "ConnectedSeries",
    "GenusTable",
    "GradedSeries",
    "KP_EQUATIONS",
    "KpEquation",
    "KpReport",
    "MonomialKey",
    "NonPhysicalKeyError",
    "PairCounts",
    "TruncationError",
    "compare_with_series",
    "cycle_type",
    "exp_series",
    "from_parts",
    "genus_of",
    "genus_table",
    "grow_cycle",
    "is_transitive",
    "join_components",
    "kp_report",
    "kp_residual",
    "marked_count_genus0",
    "marked_count_genus1",
    "next_piece",
    "partition_function",
    "partition_parts",
    "partition_weight",
    "partitions",
    "parts_list",
    "physical_keys",
    "recursion_rhs",
    "split_or_join_cycles",
    "transitive_pair_counts",
]

"""ramseykit: a finite-instance combinatorics workbench.

Witness predicates over finite colorings of r-subsets, effective
coloring-to-coloring reductions, measured tuple trees with exact
rational mass, integer bound series, and an exact search engine that
certifies every claim by exhaustion at desk scale.
"""

__version__ = "0.1.0"

from .core import (Achromatic, Coloring, Free, Homogeneous, Palette,
                   PropertySpec, Rainbow, Thin, TrapIntervals, check_property,
                   colex_rank, colex_unrank, is_b_bounded, is_k_trapped,
                   palette, trap_index)
from .reductions import (BlockPartition, LimitColoring, NotTwoBounded,
                         WindowCondition, block_pigeonhole,
                         greedy_achromatic_extension, greedy_free_extension,
                         limit_coloring, rainbow_to_free, trap_decompose,
                         truncate)
from .treemeasure import (BadChildrenReport, IntervalLadder, MeasuredTree,
                          WindowCertificate, bad_children, free_leaf_measure,
                          interval_ladder_A, interval_ladder_B,
                          is_fast_growing, node_measure, set_measure,
                          window_E_check)
from .bounds import BoundSeries, GapRow, compare_gap, d_series, min_c, schroder
from .search import (BudgetExhausted, InfeasibleEnumeration, PartitionSearch,
                     SearchBudget, WitnessResult, has_witness, max_witness,
                     partition_number, property_bitmap)
from .generators import (SplitMix64, derive_seed, random_b_bounded_coloring,
                         random_coloring, random_k_trapped_coloring,
                         random_uniform_coloring)
from ._backend import BACKEND

__all__ = [name for name in dir() if not name.startswith("_")]

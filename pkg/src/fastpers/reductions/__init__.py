"""Five interchangeable ``R = D V`` reductions.

``lazy``, ``row-incremental`` and ``fast-row`` return the same lazy
decomposition; ``exhaustive`` and ``fast-column`` return the same exhaustive
one.
"""
from __future__ import annotations

from typing import Optional

from ..field import FieldContext
from ..filtration import BoundaryMatrix
from ..matrix import DEFAULT_CUTOFF, OpCounter
from .base import (Decomposition, InternalInvariantViolation, lft, low, low_array,
                   low_map_of)
from .fast_column import FastColumnState, reduce_fast_column
from .fast_row import FastRowState, recover_U, reduce_fast_row
from .standard import reduce_exhaustive, reduce_lazy, reduce_row_incremental

ALGORITHMS = ("lazy", "exhaustive", "row-incremental", "fast-column", "fast-row")
MODE_OF = {
    "lazy": "lazy",
    "row-incremental": "lazy",
    "fast-row": "lazy",
    "exhaustive": "exhaustive",
    "fast-column": "exhaustive",
}


def reduce(Dm: BoundaryMatrix, algorithm: str = "fast-row", *,
           field: Optional[FieldContext] = None, leaf_size: int = 32,
           cutoff: int = DEFAULT_CUTOFF, counter: Optional[OpCounter] = None,
           check: bool = True) -> Decomposition:
    """Run one of :data:`ALGORITHMS` on a boundary matrix."""
    if algorithm == "lazy":
        return reduce_lazy(Dm, field, counter)
    if algorithm == "exhaustive":
        return reduce_exhaustive(Dm, field, counter)
    if algorithm == "row-incremental":
        return reduce_row_incremental(Dm, field, counter)
    if algorithm == "fast-column":
        return reduce_fast_column(Dm, field, leaf_size, cutoff, counter, check)
    if algorithm == "fast-row":
        return reduce_fast_row(Dm, field, leaf_size, cutoff, counter, check)
    raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")


__all__ = [
    "ALGORITHMS", "MODE_OF", "Decomposition", "FastColumnState", "FastRowState",
    "InternalInvariantViolation", "lft", "low", "low_array", "low_map_of", "recover_U",
    "reduce", "reduce_exhaustive", "reduce_fast_column", "reduce_fast_row", "reduce_lazy",
    "reduce_row_incremental",
]

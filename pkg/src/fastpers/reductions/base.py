from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from ..field import FieldContext
from ..filtration import BoundaryMatrix
from ..matrix import OpCounter

Mode = Literal["lazy", "exhaustive"]


class InternalInvariantViolation(AssertionError):
    """A reduction reached a state its correctness argument rules out."""


@dataclass
class Decomposition:
    """``R = D V`` with ``U = V^-1``; all indices 0-based.

    ``low_map[j]`` is the pivot row of column ``j`` of ``R``, or ``None`` for
    a zero column.
    """

    R: np.ndarray
    V: np.ndarray
    U: np.ndarray
    low_map: list[Optional[int]]
    mode: Mode
    field: FieldContext
    algorithm: str = ""
    counter: OpCounter = field(default_factory=OpCounter)

    @property
    def n(self) -> int:
        return int(self.R.shape[1])

    def pairs(self) -> list[tuple[int, int]]:
        """``(low(j), j)`` for every nonzero column ``j``."""
        return [(i, j) for j, i in enumerate(self.low_map) if i is not None]


def low(R: np.ndarray, j: int) -> Optional[int]:
    nz = np.flatnonzero(R[:, j])
    return int(nz[-1]) if nz.size else None


def low_array(R: np.ndarray) -> np.ndarray:
    """Vectorised ``low`` over all columns; -1 marks a zero column."""
    rows = R.shape[0]
    if rows == 0:
        return np.full(R.shape[1], -1, dtype=np.int64)
    nz = R != 0
    last = rows - 1 - np.argmax(nz[::-1, :], axis=0)
    return np.where(nz.any(axis=0), last, -1).astype(np.int64)


def low_map_of(R: np.ndarray) -> list[Optional[int]]:
    return [None if i < 0 else int(i) for i in low_array(R)]


def lft(R: np.ndarray, i: int) -> Optional[int]:
    """Earliest column whose lowest nonzero entry sits in row ``i``."""
    lows = low_array(R)
    hits = np.flatnonzero((R[i] != 0) & (lows == i))
    return int(hits[0]) if hits.size else None


def prepare(Dm: BoundaryMatrix | np.ndarray, field: Optional[FieldContext]) -> tuple[np.ndarray, FieldContext]:
    if isinstance(Dm, BoundaryMatrix):
        return np.array(Dm.M, dtype=np.int64), field or Dm.field
    if field is None:
        raise TypeError("a FieldContext is required when passing a bare matrix")
    D = field.asarray(Dm)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError(f"boundary matrix must be square, got {D.shape}")
    return D, field


def empty_decomposition(mode: Mode, field: FieldContext, algorithm: str,
                        counter: OpCounter) -> Decomposition:
    z = np.zeros((0, 0), dtype=np.int64)
    return Decomposition(z, z.copy(), z.copy(), [], mode, field, algorithm, counter)

"""The three incremental reductions: lazy, exhaustive and the row algorithm."""
from __future__ import annotations

from typing import Optional

import numpy as np

from ..field import FieldContext
from ..filtration import BoundaryMatrix
from ..matrix import OpCounter
from .base import Decomposition, empty_decomposition, low, low_map_of, prepare


def reduce_lazy(Dm: BoundaryMatrix | np.ndarray, field: Optional[FieldContext] = None,
                counter: Optional[OpCounter] = None) -> Decomposition:
    """Standard left-to-right column reduction."""
    D, field = prepare(Dm, field)
    counter = counter if counter is not None else OpCounter()
    n, p = D.shape[0], field.p
    if n == 0:
        return empty_decomposition("lazy", field, "lazy", counter)
    R = D.copy()
    V = np.eye(n, dtype=np.int64)
    U = np.eye(n, dtype=np.int64)
    pivot_col: dict[int, int] = {}
    for j in range(n):
        while True:
            i = low(R, j)
            if i is None:
                break
            jp = pivot_col.get(i)
            if jp is None:
                pivot_col[i] = j
                break
            alpha = int(R[i, j]) * field.inv(int(R[i, jp])) % p
            R[:, j] = (R[:, j] - alpha * R[:, jp]) % p
            V[:, j] = (V[:, j] - alpha * V[:, jp]) % p
            # row j of U is still e_j here, so this only sets U[jp, j]
            U[jp, :] = (U[jp, :] + alpha * U[j, :]) % p
            counter.tally(mul=3 * n + 1, add=3 * n, inv=1)
    return Decomposition(R, V, U, low_map_of(R), "lazy", field, "lazy", counter)


def reduce_exhaustive(Dm: BoundaryMatrix | np.ndarray, field: Optional[FieldContext] = None,
                      counter: Optional[OpCounter] = None) -> Decomposition:
    """Once column ``j`` has pivot ``i``, clear row ``i`` in every later column."""
    D, field = prepare(Dm, field)
    counter = counter if counter is not None else OpCounter()
    n, p = D.shape[0], field.p
    if n == 0:
        return empty_decomposition("exhaustive", field, "exhaustive", counter)
    R = D.copy()
    V = np.eye(n, dtype=np.int64)
    U = np.eye(n, dtype=np.int64)
    for j in range(n):
        i = low(R, j)
        if i is None:
            continue
        targets = j + 1 + np.flatnonzero(R[i, j + 1:])
        if targets.size == 0:
            continue
        alphas = R[i, targets] * field.inv(int(R[i, j])) % p
        R[:, targets] = (R[:, targets] - np.outer(R[:, j], alphas)) % p
        V[:, targets] = (V[:, targets] - np.outer(V[:, j], alphas)) % p
        # rows U[targets] may carry earlier updates; this is a full row combination
        U[j, :] = (U[j, :] + alphas @ U[targets, :]) % p
        t = targets.size
        counter.tally(mul=3 * n * t + t, add=3 * n * t, inv=1)
    return Decomposition(R, V, U, low_map_of(R), "exhaustive", field, "exhaustive", counter)


def reduce_row_incremental(Dm: BoundaryMatrix | np.ndarray, field: Optional[FieldContext] = None,
                           counter: Optional[OpCounter] = None) -> Decomposition:
    """Bottom-up row reduction; yields exactly the lazy decomposition."""
    D, field = prepare(Dm, field)
    counter = counter if counter is not None else OpCounter()
    n, p = D.shape[0], field.p
    if n == 0:
        return empty_decomposition("lazy", field, "row-incremental", counter)
    R = D.copy()
    V = np.eye(n, dtype=np.int64)
    U = np.eye(n, dtype=np.int64)
    lows = np.array([-1 if (x := low(R, j)) is None else x for j in range(n)], dtype=np.int64)
    for i in range(n - 1, -1, -1):
        cands = np.flatnonzero(lows == i)
        if cands.size < 2:
            continue
        j, targets = int(cands[0]), cands[1:]
        alphas = R[i, targets] * field.inv(int(R[i, j])) % p
        R[:, targets] = (R[:, targets] - np.outer(R[:, j], alphas)) % p
        V[:, targets] = (V[:, targets] - np.outer(V[:, j], alphas)) % p
        # the target rows of U are untouched unit rows, so this sets U[j, targets]
        U[j, :] = (U[j, :] + alphas @ U[targets, :]) % p
        t = targets.size
        counter.tally(mul=3 * n * t + t, add=3 * n * t, inv=1)
        for jp in targets:
            x = low(R, int(jp))
            lows[jp] = -1 if x is None else x
    return Decomposition(R, V, U, low_map_of(R), "lazy", field, "row-incremental", counter)

"""Exhaustive reduction by recursive Schur-complement batches.

The boundary matrix is embedded as ``[[D, 0], [0, I]]`` of size ``N = m + 2n``
(a power of two).  Column blocks are processed by binary recursion; after
the left half ``B`` of a block is reduced, its pivots are applied to the right
half ``C`` in one shot::

    Lambda    = R[L, B]^-1 R[L, C]        (L = pivot rows of B, in B order)
    R[~L, C] -= R[~L, B] Lambda ;  R[L, C] = 0
    V[:, C]  -= V[:, B] Lambda

``R[L, B]`` is lower triangular only if every processed column has a pivot,
so a column that reduces to zero is swapped with an untouched column of the
identity block; the swaps are replayed backwards at the end.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..field import FieldContext
from ..filtration import BoundaryMatrix
from ..matrix import (DEFAULT_CUTOFF, OpCounter, Permutation, mat_mul_rect,
                      next_pow2, schur_update, tri_inverse)
from .base import (Decomposition, InternalInvariantViolation, empty_decomposition,
                   low, low_map_of, prepare)


@dataclass
class FastColumnState:
    R_padded: np.ndarray
    V_padded: np.ndarray
    n: int
    field: FieldContext
    counter: OpCounter
    cutoff: int = DEFAULT_CUTOFF
    check: bool = True
    Z: list[tuple[int, int]] = field(default_factory=list)
    lows: np.ndarray = field(default=None)  # type: ignore[assignment]
    next_free: int = 0

    def __post_init__(self) -> None:
        if self.lows is None:
            self.lows = np.full(self.R_padded.shape[1], -1, dtype=np.int64)
        self.next_free = max(self.next_free, self.n)

    @property
    def size(self) -> int:
        return int(self.R_padded.shape[0])

    @property
    def col_perm(self) -> Permutation:
        """Where each original column currently sits."""
        where = np.arange(self.size)
        for a, b in self.Z:
            where[[a, b]] = where[[b, a]]
        return Permutation(where).inverse()

    def swap(self, a: int, b: int) -> None:
        for M in (self.R_padded, self.V_padded):
            M[:, [a, b]] = M[:, [b, a]]


def padded_size(n: int) -> int:
    """Smallest power of two ``m + 2n`` with ``m >= 0``."""
    return next_pow2(2 * n)


def _leaf(st: FastColumnState, lo: int, hi: int) -> None:
    R, V, p = st.R_padded, st.V_padded, st.field.p
    N = st.size
    for j in range(lo, hi):
        piv = low(R, j)
        if piv is None:
            ell = max(st.next_free, j + 1)
            if ell >= N:
                raise InternalInvariantViolation("identity block exhausted")
            st.swap(j, ell)
            st.Z.append((j, ell))
            st.next_free = ell + 1
            piv = low(R, j)
        if st.check and j > 0:
            if R[st.lows[:j], j].any():
                raise InternalInvariantViolation(
                    f"column {j} reached its leaf with an entry in an earlier pivot row")
        st.lows[j] = piv
        later = j + 1 + np.flatnonzero(R[piv, j + 1:hi])
        if later.size:
            alphas = R[piv, later] * st.field.inv(int(R[piv, j])) % p
            R[:, later] = (R[:, later] - np.outer(R[:, j], alphas)) % p
            V[:, later] = (V[:, later] - np.outer(V[:, j], alphas)) % p
            t = later.size
            st.counter.tally(mul=2 * N * t + t, add=2 * N * t, inv=1)


def _apply_block(st: FastColumnState, lo: int, mid: int, hi: int) -> None:
    R, V, p = st.R_padded, st.V_padded, st.field.p
    B = np.arange(lo, mid)
    C = np.arange(mid, hi)
    L = st.lows[lo:mid].copy()
    if st.check:
        block = R[np.ix_(L, B)]
        if np.triu(block, 1).any() or not np.all(np.diagonal(block)):
            raise InternalInvariantViolation(
                f"pivot block of columns [{lo}, {mid}) is not invertible lower triangular")
    mask = np.ones(st.size, dtype=bool)
    mask[L] = False
    Lbar = np.flatnonzero(mask)
    _, Lam = schur_update(R, Lbar, L, B, C, st.field, st.cutoff, st.counter)
    if Lam.any():
        delta = mat_mul_rect(V[:, lo:mid], Lam, st.field, st.cutoff, st.counter)
        V[:, mid:hi] = (V[:, mid:hi] - delta) % p
        st.counter.tally(add=delta.size)


def _solve(st: FastColumnState, lo: int, hi: int, leaf_size: int) -> None:
    if hi - lo <= leaf_size:
        _leaf(st, lo, hi)
        return
    mid = (lo + hi) // 2
    _solve(st, lo, mid, leaf_size)
    _apply_block(st, lo, mid, hi)
    _solve(st, mid, hi, leaf_size)


def reduce_fast_column(Dm: BoundaryMatrix | np.ndarray, field: Optional[FieldContext] = None,
                       leaf_size: int = 32, cutoff: int = DEFAULT_CUTOFF,
                       counter: Optional[OpCounter] = None, check: bool = True) -> Decomposition:
    """Exhaustive reduction in matrix-multiplication time.

    ``leaf_size`` columns at the bottom of the recursion are reduced one by
    one; ``check`` enables the triangularity and leaf invariants.
    """
    if leaf_size < 1:
        raise ValueError("leaf_size must be at least 1")
    D, field = prepare(Dm, field)
    counter = counter if counter is not None else OpCounter()
    n = D.shape[0]
    if n == 0:
        return empty_decomposition("exhaustive", field, "fast-column", counter)
    N = padded_size(n)
    R = np.zeros((N, N), dtype=np.int64)
    R[:n, :n] = D
    R[n:, n:] = np.eye(N - n, dtype=np.int64)
    st = FastColumnState(R, np.eye(N, dtype=np.int64), n, field, counter, cutoff, check)
    _solve(st, 0, N // 2, leaf_size)
    for a, b in reversed(st.Z):
        st.swap(a, b)
    R_out = np.ascontiguousarray(st.R_padded[:n, :n])
    V_out = np.ascontiguousarray(st.V_padded[:n, :n])
    U_out = tri_inverse(V_out, field, "upper", cutoff, counter)
    return Decomposition(R_out, V_out, U_out, low_map_of(R_out), "exhaustive", field,
                         "fast-column", counter)

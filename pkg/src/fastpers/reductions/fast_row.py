"""Lazy reduction by recursive row batches.

Rows are reduced bottom-up.  The working matrix is ``[D_pad | I_N]`` with
``N`` the smallest power of two ``>= n``; the identity block guarantees that
every row has an eligible pivot column.  Columns are kept in *position*
order: the pivot of row ``N-1-s`` is moved to position ``s``, so pivots run
along the anti-diagonal.  ``Lam[s, j]`` is the multiple of the pivot column at
position ``s`` added to the column at position ``j``.  Since every pivot
column is frozen once chosen,

    R = D + R Lam_off,   i.e.   D = R (2I - Lam)

and ``U = 2I - Lam``, ``V = U^-1`` in the original column order.

A node with row halves ``B`` (lower) and ``C`` (upper) does

1. recurse on ``B``;
2. rows of ``C``:  ``R[C_r, >C0] += R[C_r, B] Lam[B, >C0]``;
3. recurse on ``C``;
4. rows above the node:  ``R[top, C] += R[top, B] (Lam[B, C] T_C)`` with
   ``T_C = (I - Lam[C, C])^-1``, the composite of the eliminations inside
   ``C``.  Without the ``T_C`` factor the rows above would miss the
   contributions of ``B`` that pass through columns of ``C`` before reaching
   later columns of ``C``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..field import FieldContext
from ..filtration import BoundaryMatrix
from ..matrix import (DEFAULT_CUTOFF, OpCounter, Permutation, mat_mul_rect,
                      mat_mul_strassen, mat_mul_wide, next_pow2, tri_inverse)
from .base import (Decomposition, InternalInvariantViolation, empty_decomposition,
                   low_map_of, prepare)


@dataclass
class FastRowState:
    R_padded: np.ndarray   # N x 2N, columns in position order
    Lambda: np.ndarray     # N x 2N, off-diagonal coefficients by position
    pos2col: np.ndarray    # original column at each position
    field: FieldContext
    counter: OpCounter
    cutoff: int = DEFAULT_CUTOFF
    check: bool = True

    @property
    def N(self) -> int:
        return int(self.R_padded.shape[0])

    @property
    def P(self) -> Permutation:
        """Accumulated column permutation: original column -> position."""
        return Permutation(self.pos2col).inverse()

    def transpose(self, a: int, b: int) -> None:
        for M in (self.R_padded, self.Lambda):
            M[:, [a, b]] = M[:, [b, a]]
        self.pos2col[[a, b]] = self.pos2col[[b, a]]


def recover_U(Lam: np.ndarray, field: FieldContext) -> np.ndarray:
    """``2I - Lam``: unit diagonal, negated off-diagonal."""
    n = Lam.shape[0]
    return (2 * np.eye(n, dtype=np.int64) - Lam) % field.p


def _leaf(st: FastRowState, lo: int, hi: int) -> None:
    R, Lam, p, N = st.R_padded, st.Lambda, st.field.p, st.N
    top = N - hi
    for s in range(lo, hi):
        r = N - 1 - s
        nz = s + np.flatnonzero(R[r, s:])
        if nz.size == 0:
            raise InternalInvariantViolation(f"row {r} has no eligible pivot")
        k = int(nz[np.argmin(st.pos2col[nz])])
        if k != s:
            st.transpose(s, k)
        targets = s + 1 + np.flatnonzero(R[r, s + 1:])
        if targets.size == 0:
            continue
        if st.check and R[r + 1:, targets].any():
            raise InternalInvariantViolation(f"row {r}: an entry right of the pivot is not lowest")
        coef = (-R[r, targets] * st.field.inv(int(R[r, s]))) % p
        Lam[s, targets] = coef
        R[r, targets] = 0
        t = targets.size
        st.counter.tally(mul=t, inv=1)
        if r > top:
            R[top:r, targets] = (R[top:r, targets] + np.outer(R[top:r, s], coef)) % p
            st.counter.tally(mul=(r - top) * t, add=(r - top) * t)
    if top == 0:
        return
    for s in range(lo, hi - 1):
        cols = s + 1 + np.flatnonzero(Lam[s, s + 1:hi])
        if cols.size:
            R[:top, cols] = (R[:top, cols] + np.outer(R[:top, s], Lam[s, cols])) % p
            st.counter.tally(mul=top * cols.size, add=top * cols.size)


def _rows_update(st: FastRowState, lo: int, mid: int, hi: int) -> None:
    R, Lam, N, p = st.R_padded, st.Lambda, st.N, st.field.p
    rows = slice(N - hi, N - mid)
    coeffs = Lam[lo:mid, mid:]
    if not coeffs.any():
        return
    delta = mat_mul_wide(R[rows, lo:mid], coeffs, st.field, st.cutoff, st.counter)
    R[rows, mid:] = (R[rows, mid:] + delta) % p
    st.counter.tally(add=delta.size)


def _cols_update(st: FastRowState, lo: int, mid: int, hi: int) -> None:
    R, Lam, N, p = st.R_padded, st.Lambda, st.N, st.field.p
    top = N - hi
    if top == 0:
        return
    lam_bc = Lam[lo:mid, mid:hi]
    if not lam_bc.any():
        return
    inner = Lam[mid:hi, mid:hi]
    if inner.any():
        U_cc = (np.eye(hi - mid, dtype=np.int64) - inner) % p
        T = tri_inverse(U_cc, st.field, "upper", st.cutoff, st.counter)
        lam_bc = mat_mul_strassen(lam_bc, T, st.field, st.cutoff, st.counter)
    delta = mat_mul_rect(R[:top, lo:mid], lam_bc, st.field, st.cutoff, st.counter)
    R[:top, mid:hi] = (R[:top, mid:hi] + delta) % p
    st.counter.tally(add=delta.size)


def _solve(st: FastRowState, lo: int, hi: int, leaf_size: int) -> None:
    if hi - lo <= leaf_size:
        _leaf(st, lo, hi)
        return
    mid = (lo + hi) // 2
    _solve(st, lo, mid, leaf_size)
    _rows_update(st, lo, mid, hi)
    _solve(st, mid, hi, leaf_size)
    _cols_update(st, lo, mid, hi)


def lambda_in_original_order(st: FastRowState, n: int) -> np.ndarray:
    """Unit-diagonal ``Lam`` restricted to the first ``n`` original columns."""
    Lam = np.eye(n, dtype=np.int64)
    for s in range(st.N):
        c = int(st.pos2col[s])
        if c >= n:
            continue
        js = np.flatnonzero(st.Lambda[s])
        cols = st.pos2col[js]
        keep = cols < n
        Lam[c, cols[keep]] = st.Lambda[s, js[keep]]
    return Lam


def reduce_fast_row(Dm: BoundaryMatrix | np.ndarray, field: Optional[FieldContext] = None,
                    leaf_size: int = 32, cutoff: int = DEFAULT_CUTOFF,
                    counter: Optional[OpCounter] = None, check: bool = True) -> Decomposition:
    """Lazy reduction in matrix-multiplication time."""
    if leaf_size < 1:
        raise ValueError("leaf_size must be at least 1")
    D, field = prepare(Dm, field)
    counter = counter if counter is not None else OpCounter()
    n = D.shape[0]
    if n == 0:
        return empty_decomposition("lazy", field, "fast-row", counter)
    N = next_pow2(n)
    R = np.zeros((N, 2 * N), dtype=np.int64)
    R[:n, :n] = D
    R[:, N:] = np.eye(N, dtype=np.int64)
    st = FastRowState(R, np.zeros((N, 2 * N), dtype=np.int64), np.arange(2 * N),
                      field, counter, cutoff, check)
    _solve(st, 0, N, leaf_size)

    U = recover_U(lambda_in_original_order(st, n), field)
    V = tri_inverse(U, field, "upper", cutoff, counter)
    R_orig = np.empty_like(st.R_padded)
    R_orig[:, st.pos2col] = st.R_padded
    R_out = np.ascontiguousarray(R_orig[:n, :n])
    return Decomposition(R_out, V, U, low_map_of(R_out), "lazy", field, "fast-row", counter)

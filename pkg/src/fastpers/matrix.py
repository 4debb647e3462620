"""Dense matrix kernel over F_p.

Matrices are 2-D int64 numpy arrays with entries in ``[0, p)``; the field is
passed alongside.  Every routine takes an optional :class:`OpCounter` that
tallies scalar field operations, which is what the scaling tests measure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Sequence

import numpy as np

from .field import FieldContext

DEFAULT_CUTOFF = 64


class DimensionMismatch(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


class NotTriangular(ValueError):
    pass


@dataclass
class OpCounter:
    """Running tally of scalar field operations."""

    mul_count: int = 0
    add_count: int = 0
    inv_count: int = 0

    def tally(self, mul: int = 0, add: int = 0, inv: int = 0) -> None:
        self.mul_count += int(mul)
        self.add_count += int(add)
        self.inv_count += int(inv)

    def as_dict(self) -> dict[str, int]:
        return {"mul": self.mul_count, "add": self.add_count, "inv": self.inv_count}


def _tally(counter: Optional[OpCounter], mul: int = 0, add: int = 0, inv: int = 0) -> None:
    if counter is not None:
        counter.tally(mul, add, inv)


def next_pow2(n: int) -> int:
    return 1 if n <= 1 else 1 << (n - 1).bit_length()


# --------------------------------------------------------------------------
# permutations


class Permutation:
    """Bijection on ``range(n)``; ``map[i]`` is the image of ``i``."""

    __slots__ = ("map",)

    def __init__(self, mapping: Sequence[int]):
        arr = np.asarray(mapping, dtype=np.int64)
        if arr.ndim != 1 or not np.array_equal(np.sort(arr), np.arange(arr.size)):
            raise ValueError("not a permutation of range(n)")
        self.map = arr

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        m = np.arange(n)
        m[i], m[j] = j, i
        return cls(m)

    @property
    def size(self) -> int:
        return int(self.map.size)

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.map)
        inv[self.map] = np.arange(self.map.size)
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        """``self ∘ other``: apply ``other`` first."""
        return Permutation(self.map[other.map])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self.map, other.map)

    def __repr__(self) -> str:
        return f"Permutation({self.map.tolist()})"


def apply_row_perm(P: Permutation, M: np.ndarray) -> np.ndarray:
    """Move row ``i`` of ``M`` to row ``P.map[i]``."""
    if P.size != M.shape[0]:
        raise DimensionMismatch(f"permutation of size {P.size} on {M.shape[0]} rows")
    out = np.empty_like(M)
    out[P.map] = M
    return out


def apply_col_perm(M: np.ndarray, P: Permutation) -> np.ndarray:
    """Move column ``j`` of ``M`` to column ``P.map[j]``."""
    if P.size != M.shape[1]:
        raise DimensionMismatch(f"permutation of size {P.size} on {M.shape[1]} columns")
    out = np.empty_like(M)
    out[:, P.map] = M
    return out


# --------------------------------------------------------------------------
# multiplication


def _check_product(A: np.ndarray, B: np.ndarray) -> None:
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")


def mat_mul_naive(A: np.ndarray, B: np.ndarray, field: FieldContext,
                  counter: Optional[OpCounter] = None) -> np.ndarray:
    _check_product(A, B)
    n, k = A.shape
    m = B.shape[1]
    _tally(counter, mul=n * k * m, add=n * max(k - 1, 0) * m)
    if k == 0:
        return np.zeros((n, m), dtype=np.int64)
    return np.mod(A @ B, field.p)


def _strassen_square(A: np.ndarray, B: np.ndarray, p: int, cutoff: int,
                     counter: Optional[OpCounter]) -> np.ndarray:
    n = A.shape[0]
    if n <= cutoff:
        _tally(counter, mul=n ** 3, add=n * n * (n - 1))
        return np.mod(A @ B, p)
    h = n // 2
    A11, A12, A21, A22 = A[:h, :h], A[:h, h:], A[h:, :h], A[h:, h:]
    B11, B12, B21, B22 = B[:h, :h], B[:h, h:], B[h:, :h], B[h:, h:]
    rec = lambda X, Y: _strassen_square(X, Y, p, cutoff, counter)  # noqa: E731
    M1 = rec((A11 + A22) % p, (B11 + B22) % p)
    M2 = rec((A21 + A22) % p, B11)
    M3 = rec(A11, (B12 - B22) % p)
    M4 = rec(A22, (B21 - B11) % p)
    M5 = rec((A11 + A12) % p, B22)
    M6 = rec((A21 - A11) % p, (B11 + B12) % p)
    M7 = rec((A12 - A22) % p, (B21 + B22) % p)
    _tally(counter, add=18 * h * h)
    C = np.empty((n, n), dtype=np.int64)
    C[:h, :h] = (M1 + M4 - M5 + M7) % p
    C[:h, h:] = (M3 + M5) % p
    C[h:, :h] = (M2 + M4) % p
    C[h:, h:] = (M1 - M2 + M3 + M6) % p
    return C


def mat_mul_strassen(A: np.ndarray, B: np.ndarray, field: FieldContext,
                     cutoff: int = DEFAULT_CUTOFF,
                     counter: Optional[OpCounter] = None) -> np.ndarray:
    """Strassen product; operands are zero-padded to a power-of-two square."""
    _check_product(A, B)
    n, k = A.shape
    m = B.shape[1]
    if min(n, k, m) == 0:
        return np.zeros((n, m), dtype=np.int64)
    cutoff = max(int(cutoff), 1)
    size = max(n, k, m)
    if size <= cutoff:
        return mat_mul_naive(A, B, field, counter)
    s = next_pow2(size)
    if (n, k, m) == (s, s, s):
        return _strassen_square(A, B, field.p, cutoff, counter)
    Ap = np.zeros((s, s), dtype=np.int64)
    Bp = np.zeros((s, s), dtype=np.int64)
    Ap[:n, :k] = A
    Bp[:k, :m] = B
    return _strassen_square(Ap, Bp, field.p, cutoff, counter)[:n, :m]


def mat_mul_rect(B: np.ndarray, C: np.ndarray, field: FieldContext,
                 cutoff: int = DEFAULT_CUTOFF,
                 counter: Optional[OpCounter] = None) -> np.ndarray:
    """Product of an ``n x k`` matrix with a ``k x k`` matrix.

    ``B`` is cut into ``ceil(n/k)`` stacked ``k x k`` blocks (the last one
    zero-padded), each multiplied by ``C`` with Strassen.
    """
    _check_product(B, C)
    n, k = B.shape
    if C.shape[1] != k:
        raise DimensionMismatch(f"right factor must be square k x k, got {C.shape}")
    if n == 0 or k == 0:
        return np.zeros((n, k), dtype=np.int64)
    out = np.empty((n, k), dtype=np.int64)
    for start in range(0, n, k):
        block = B[start:start + k]
        rows = block.shape[0]
        if rows < k:
            padded = np.zeros((k, k), dtype=np.int64)
            padded[:rows] = block
            block = padded
        out[start:start + rows] = mat_mul_strassen(block, C, field, cutoff, counter)[:rows]
    return out


def mat_mul_wide(A: np.ndarray, B: np.ndarray, field: FieldContext,
                 cutoff: int = DEFAULT_CUTOFF,
                 counter: Optional[OpCounter] = None) -> np.ndarray:
    """Product of a ``k x k`` matrix with a ``k x w`` matrix, via the transpose."""
    _check_product(A, B)
    return mat_mul_rect(B.T, A.T, field, cutoff, counter).T


# --------------------------------------------------------------------------
# triangular inversion


def _inv_lower_pow2(A: np.ndarray, field: FieldContext, cutoff: int,
                    counter: Optional[OpCounter]) -> np.ndarray:
    n = A.shape[0]
    if n == 1:
        _tally(counter, inv=1)
        return np.array([[field.inv(int(A[0, 0]))]], dtype=np.int64)
    h = n // 2
    Binv = _inv_lower_pow2(A[:h, :h], field, cutoff, counter)
    Dinv = _inv_lower_pow2(A[h:, h:], field, cutoff, counter)
    X = mat_mul_strassen(Dinv, A[h:, :h], field, cutoff, counter)
    X = mat_mul_strassen(X, Binv, field, cutoff, counter)
    out = np.zeros((n, n), dtype=np.int64)
    out[:h, :h] = Binv
    out[h:, h:] = Dinv
    out[h:, :h] = (-X) % field.p
    return out


def tri_inverse(A: np.ndarray, field: FieldContext,
                orientation: Literal["lower", "upper"] = "lower",
                cutoff: int = DEFAULT_CUTOFF,
                counter: Optional[OpCounter] = None) -> np.ndarray:
    """Invert a triangular matrix by block recursion.

    ``[[B, 0], [C, D]]^-1 = [[B^-1, 0], [-D^-1 C B^-1, D^-1]]``; sizes that are
    not a power of two are padded with an identity block.  Upper triangular
    input goes through the transpose.
    """
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got {A.shape}")
    if orientation not in ("lower", "upper"):
        raise ValueError(f"orientation must be 'lower' or 'upper', not {orientation!r}")
    n = A.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    L = A if orientation == "lower" else A.T
    if np.any(np.triu(L, 1)):
        raise NotTriangular(f"matrix is not {orientation} triangular")
    if np.any(np.diagonal(L) % field.p == 0):
        raise SingularMatrix("zero on the diagonal")
    s = next_pow2(n)
    if s != n:
        padded = np.eye(s, dtype=np.int64)
        padded[:n, :n] = L
        L = padded
    X = _inv_lower_pow2(L, field, cutoff, counter)[:n, :n]
    return X if orientation == "lower" else np.ascontiguousarray(X.T)


# --------------------------------------------------------------------------
# Schur complement


def schur_update(R: np.ndarray, Lbar: Sequence[int], L: Sequence[int],
                 B: Sequence[int], C: Sequence[int], field: FieldContext,
                 cutoff: int = DEFAULT_CUTOFF,
                 counter: Optional[OpCounter] = None) -> tuple[np.ndarray, np.ndarray]:
    """Zero ``R[L, C]`` using the columns ``B``, in place.

    ``R[L, B]`` must be invertible lower triangular (rows of ``L`` listed in
    the order of their columns in ``B``).  Computes
    ``Lambda = R[L, B]^-1 R[L, C]`` and ``R[Lbar, C] -= R[Lbar, B] Lambda``.
    Returns ``(R, Lambda)``.
    """
    L = np.asarray(L, dtype=np.int64)
    Lbar = np.asarray(Lbar, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    C = np.asarray(C, dtype=np.int64)
    if L.size != B.size:
        raise DimensionMismatch(f"|L| = {L.size} but |B| = {B.size}")
    if C.size == 0 or B.size == 0:
        return R, np.zeros((B.size, C.size), dtype=np.int64)
    RLC = R[np.ix_(L, C)]
    if not RLC.any():
        return R, np.zeros((B.size, C.size), dtype=np.int64)
    inv = tri_inverse(R[np.ix_(L, B)], field, "lower", cutoff, counter)
    Lam = _square_product(inv, RLC, field, cutoff, counter)
    if Lbar.size:
        delta = _tall_product(R[np.ix_(Lbar, B)], Lam, field, cutoff, counter)
        R[np.ix_(Lbar, C)] = (R[np.ix_(Lbar, C)] - delta) % field.p
        _tally(counter, add=delta.size)
    R[np.ix_(L, C)] = 0
    return R, Lam


def _square_product(A, B, field, cutoff, counter):
    # k x k times k x c; c == k inside the recursions, general otherwise
    if A.shape[0] == A.shape[1] == B.shape[1]:
        return mat_mul_strassen(A, B, field, cutoff, counter)
    return mat_mul_wide(A, B, field, cutoff, counter)


def _tall_product(A, B, field, cutoff, counter):
    if B.shape[0] == B.shape[1]:
        return mat_mul_rect(A, B, field, cutoff, counter)
    return mat_mul_strassen(A, B, field, cutoff, counter)


def is_identity(M: np.ndarray) -> bool:
    return M.shape[0] == M.shape[1] and np.array_equal(M, np.eye(M.shape[0], dtype=M.dtype))

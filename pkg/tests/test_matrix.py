import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fastpers.field import FieldContext
from fastpers.matrix import (DimensionMismatch, NotTriangular, OpCounter, Permutation,
                             SingularMatrix, apply_col_perm, apply_row_perm, mat_mul_naive,
                             mat_mul_rect, mat_mul_strassen, mat_mul_wide, next_pow2,
                             schur_update, tri_inverse)

F3, F5, F7 = FieldContext(3), FieldContext(5), FieldContext(7)


def py_matmul(A, B, p):
    """Triple loop on Python ints."""
    A, B = A.tolist(), B.tolist()
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    return np.array([[sum(A[i][t] * B[t][j] for t in range(k)) % p for j in range(m)]
                     for i in range(n)], dtype=np.int64).reshape(n, m)


def rand(rng, shape, p):
    return rng.integers(0, p, size=shape, dtype=np.int64)


def test_naive_examples(rng):
    M = rand(rng, (3, 3), 5)
    assert np.array_equal(mat_mul_naive(np.eye(3, dtype=np.int64), M, F5), M)
    A = np.array([[1, 2], [3, 4]])
    P = np.array([[0, 1], [1, 0]])
    assert mat_mul_naive(A, P, F5).tolist() == [[2, 1], [4, 3]]
    assert not mat_mul_naive(np.zeros((3, 3), dtype=np.int64), M, F5).any()


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mat_mul_naive(np.zeros((2, 3)), np.zeros((2, 3)), F5)
    with pytest.raises(DimensionMismatch):
        mat_mul_strassen(np.zeros((2, 3)), np.zeros((2, 3)), F5)
    with pytest.raises(DimensionMismatch):
        mat_mul_rect(np.zeros((4, 2)), np.zeros((2, 3)), F5)


def test_strassen_identity(rng):
    M = rand(rng, (8, 8), 7)
    assert np.array_equal(mat_mul_strassen(np.eye(8, dtype=np.int64), M, F7, cutoff=1), M)


@given(st.integers(1, 20), st.integers(1, 20), st.integers(1, 20),
       st.sampled_from([2, 5, 13]), st.integers(1, 8), st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_strassen_matches_python_product(n, k, m, p, cutoff, seed):
    rng = np.random.default_rng(seed)
    A, B = rand(rng, (n, k), p), rand(rng, (k, m), p)
    ctx = FieldContext(p)
    assert np.array_equal(mat_mul_strassen(A, B, ctx, cutoff), py_matmul(A, B, p))


def test_strassen_7x7_matches_naive(rng):
    A, B = rand(rng, (7, 7), 5), rand(rng, (7, 7), 5)
    assert np.array_equal(mat_mul_strassen(A, B, F5, cutoff=2), mat_mul_naive(A, B, F5))


def test_strassen_saves_multiplications(rng):
    A, B = rand(rng, (64, 64), 5), rand(rng, (64, 64), 5)
    c = OpCounter()
    mat_mul_strassen(A, B, F5, cutoff=8, counter=c)
    assert c.mul_count == 7 ** 3 * 8 ** 3 < 64 ** 3
    c2 = OpCounter()
    mat_mul_naive(A, B, F5, counter=c2)
    assert c2.mul_count == 64 ** 3


def test_rect_products(rng):
    B = rand(rng, (6, 2), 3)
    assert np.array_equal(mat_mul_rect(B, np.eye(2, dtype=np.int64), F3), B)
    B, C = rand(rng, (5, 2), 3), rand(rng, (2, 2), 3)
    assert np.array_equal(mat_mul_rect(B, C, F3, cutoff=1), py_matmul(B, C, 3))
    B = rand(rng, (2, 2), 3)
    assert np.array_equal(mat_mul_rect(B, C, F3), mat_mul_strassen(B, C, F3))
    W = rand(rng, (2, 9), 3)
    assert np.array_equal(mat_mul_wide(C, W, F3, cutoff=1), py_matmul(C, W, 3))


def test_permutations(rng):
    M = np.array([[10], [20], [30]])
    assert np.array_equal(apply_row_perm(Permutation.identity(3), M), M)
    assert apply_row_perm(Permutation.transposition(3, 0, 1), M).ravel().tolist() == [20, 10, 30]
    X = rand(rng, (9, 4), 100)
    P = Permutation(rng.permutation(9))
    assert np.array_equal(apply_row_perm(P.inverse(), apply_row_perm(P, X)), X)
    Q = Permutation(rng.permutation(4))
    assert np.array_equal(apply_col_perm(apply_col_perm(X, Q), Q.inverse()), X)
    assert P.compose(P.inverse()) == Permutation.identity(9)
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])
    with pytest.raises(DimensionMismatch):
        apply_row_perm(P, X[:3])


def test_tri_inverse_examples():
    I4 = np.eye(4, dtype=np.int64)
    assert np.array_equal(tri_inverse(I4, F7), I4)
    assert tri_inverse(np.array([[1, 0], [2, 1]]), F3).tolist() == [[1, 0], [1, 1]]


@pytest.mark.parametrize("n", [1, 2, 3, 5, 16, 37])
@pytest.mark.parametrize("orientation", ["lower", "upper"])
def test_tri_inverse_random(n, orientation, rng):
    A = np.tril(rand(rng, (n, n), 7), -1)
    np.fill_diagonal(A, rng.integers(1, 7, size=n))
    if orientation == "upper":
        A = A.T.copy()
    X = tri_inverse(A, F7, orientation, cutoff=2)
    assert np.array_equal(py_matmul(A, X, 7), np.eye(n, dtype=np.int64))


def test_tri_inverse_errors():
    with pytest.raises(SingularMatrix):
        tri_inverse(np.array([[1, 0], [1, 0]]), F7)
    with pytest.raises(NotTriangular):
        tri_inverse(np.array([[1, 1], [0, 1]]), F7, "lower")
    with pytest.raises(NotTriangular):
        tri_inverse(np.array([[1, 0], [1, 1]]), F7, "upper")


def test_next_pow2():
    assert [next_pow2(k) for k in (0, 1, 2, 3, 4, 5, 64, 65)] == [1, 1, 2, 4, 4, 8, 64, 128]


def test_schur_zero_term(rng):
    R = np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    before = R.copy()
    _, Lam = schur_update(R, [2], [0, 1], [0, 1], [2], F5)
    assert not Lam.any() and np.array_equal(R, before)


def test_schur_identity_pivot_block():
    F2 = FieldContext(2)
    R = np.array([[1, 1], [0, 1]])
    # pivot of column 0 is row 0; clear row 0 of column 1
    _, Lam = schur_update(R, [1], [0], [0], [1], F2)
    assert Lam.tolist() == [[1]]
    assert R.tolist() == [[1, 0], [0, 1]]


def test_schur_matches_sequential_elimination(rng):
    p = 5
    R = rand(rng, (8, 8), p)
    B, C, L = [0, 1, 2], [3, 4, 5, 6, 7], [7, 6, 5]
    # make R[L, B] lower triangular in B order with a nonzero diagonal
    for a, i in enumerate(L):
        for b in range(a + 1, len(B)):
            R[i, B[b]] = 0
        R[i, B[a]] = rng.integers(1, p)
    expected = R.copy()
    for a, i in enumerate(L):
        j = B[a]
        for c in C:
            alpha = expected[i, c] * pow(int(expected[i, j]), p - 2, p) % p
            expected[:, c] = (expected[:, c] - alpha * expected[:, j]) % p
    Lbar = [r for r in range(8) if r not in L]
    got, _ = schur_update(R.copy(), Lbar, L, B, C, FieldContext(p), cutoff=1)
    assert np.array_equal(got, expected)

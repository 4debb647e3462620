"""Shared fixtures and independent reference implementations.

The oracles here deliberately avoid the package's numerics: they work on
Python lists and dicts with plain ``%`` arithmetic.
"""
from __future__ import annotations

import numpy as np
import pytest

TRIANGLE = "0\n1\n2\n0 1\n1 2\n0 2\n0 1 2\n"

# lazy and exhaustive reductions of this filtration differ off the pivots
LAZY_EXHAUSTIVE_WITNESS = "3\n2\n0\n1\n1 3\n1 2\n2 3\n1 2 3\n0 3\n0 2\n0 2 3\n0 1\n"

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def record_note(text: str) -> None:
    ACCEPTANCE_LINES.append(f"    note: {text}")
    print(text)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# --------------------------------------------------------------------------
# oracles


def oracle_lazy(D, p):
    """Column reduction on lists of dicts; returns (R, V) as nested lists."""
    n = len(D)
    R = [{i: int(D[i][j]) % p for i in range(n) if int(D[i][j]) % p} for j in range(n)]
    V = [{j: 1} for j in range(n)]
    owner = {}
    for j in range(n):
        while R[j]:
            i = max(R[j])
            if i not in owner:
                owner[i] = j
                break
            k = owner[i]
            a = R[j][i] * pow(R[k][i], p - 2, p) % p
            for src, dst in ((R[k], R[j]), (V[k], V[j])):
                for r, c in src.items():
                    x = (dst.get(r, 0) - a * c) % p
                    if x:
                        dst[r] = x
                    else:
                        dst.pop(r, None)
    return _dense(R, n), _dense(V, n)


def oracle_exhaustive(D, p):
    n = len(D)
    R = [{i: int(D[i][j]) % p for i in range(n) if int(D[i][j]) % p} for j in range(n)]
    V = [{j: 1} for j in range(n)]
    for j in range(n):
        if not R[j]:
            continue
        i = max(R[j])
        for t in range(j + 1, n):
            if R[t].get(i):
                a = R[t][i] * pow(R[j][i], p - 2, p) % p
                for src, dst in ((R[j], R[t]), (V[j], V[t])):
                    for r, c in src.items():
                        x = (dst.get(r, 0) - a * c) % p
                        if x:
                            dst[r] = x
                        else:
                            dst.pop(r, None)
    return _dense(R, n), _dense(V, n)


def _dense(cols, n):
    M = [[0] * n for _ in range(n)]
    for j, col in enumerate(cols):
        for i, c in col.items():
            M[i][j] = c
    return M


def rank_mod_p(rows, p):
    M = [list(r) for r in rows]
    rank, ncols = 0, (len(M[0]) if M else 0)
    for c in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][c] % p), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], p - 2, p)
        for r in range(len(M)):
            if r != rank and M[r][c] % p:
                f = M[r][c] * inv % p
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank


def oracle_pairs(D, p):
    """Pairs ``(i, j)`` (0-based) from ranks of lower-left submatrices.

    ``low(j) = i`` exactly when the rank inclusion-exclusion over rows
    ``>= i`` and columns ``<= j`` equals one.
    """
    n = len(D)

    def r(i, j):  # rows i.., columns ..j inclusive
        if i >= n or j < 0:
            return 0
        return rank_mod_p([row[:j + 1] for row in D[i:]], p)

    return {(i, j) for j in range(n) for i in range(j)
            if r(i, j) - r(i + 1, j) - r(i, j - 1) + r(i + 1, j - 1) == 1}


@pytest.fixture
def triangle_text():
    return TRIANGLE


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

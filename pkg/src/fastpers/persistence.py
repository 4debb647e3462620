"""Diagrams, simplex classification and representative chains.

Everything here is reported with 1-based filtration indices; the
decomposition underneath uses 0-based matrix positions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence

import numpy as np

from .field import FieldContext
from .filtration import BoundaryMatrix, Filtration
from .matrix import DEFAULT_CUTOFF, OpCounter
from .reductions import Decomposition, low_array, reduce
from .reductions.base import prepare

Side = Literal["homology", "cohomology"]
Source = Literal["v", "r"]


@dataclass(frozen=True)
class PersistencePair:
    dim: int
    birth: int
    death: Optional[int]  # None means the class never dies

    def __post_init__(self) -> None:
        if self.death is not None and self.death <= self.birth:
            raise ValueError(f"death {self.death} does not follow birth {self.birth}")

    @property
    def essential(self) -> bool:
        return self.death is None

    def sort_key(self) -> tuple[int, int, float]:
        return (self.dim, self.birth, float("inf") if self.death is None else self.death)


@dataclass(frozen=True)
class Chain:
    """Sparse chain: 1-based filtration index -> nonzero coefficient."""

    coefficients: dict[int, int]
    dim: int

    @classmethod
    def from_column(cls, col: np.ndarray, dims: np.ndarray,
                    index_map=None) -> "Chain":
        nz = np.flatnonzero(col)
        if index_map is None:
            idx = [int(k) + 1 for k in nz]
        else:
            idx = [index_map(int(k)) for k in nz]
        coeffs = {i: int(col[k]) for i, k in zip(idx, nz)}
        ds = {int(dims[i - 1]) for i in coeffs}
        if len(ds) > 1:
            raise ValueError(f"chain mixes dimensions {sorted(ds)}")
        return cls(dict(sorted(coeffs.items())), ds.pop() if ds else -1)

    @property
    def support(self) -> list[int]:
        return sorted(self.coefficients)

    def to_vector(self, n: int) -> np.ndarray:
        v = np.zeros(n, dtype=np.int64)
        for i, c in self.coefficients.items():
            v[i - 1] = c
        return v

    def __len__(self) -> int:
        return len(self.coefficients)


@dataclass
class RepresentativeSet:
    """Representatives keyed by birth (``v_basis``) or death (``r_basis``).

    For cohomology the ``v_basis`` holds whole columns of ``V^perp``; the
    index of the corresponding pivot, mapped back to filtration order, is
    kept in ``pivots`` (``None`` for essential classes) so the part of the
    cocycle before the death can be recovered.
    """

    v_basis: dict[int, Chain] = field(default_factory=dict)
    r_basis: dict[int, Chain] = field(default_factory=dict)
    source: Source = "v"
    side: Side = "homology"
    pivots: dict[int, Optional[int]] = field(default_factory=dict)


def _dims_of(dims) -> np.ndarray:
    return np.asarray(dims, dtype=np.int64)


def extract_diagram(dec: Decomposition, dims) -> list[PersistencePair]:
    dims = _dims_of(dims)
    pairs = []
    paired_rows = set()
    for j, i in enumerate(dec.low_map):
        if i is not None:
            paired_rows.add(i)
            pairs.append(PersistencePair(int(dims[i]), i + 1, j + 1))
    for j, i in enumerate(dec.low_map):
        if i is None and j not in paired_rows:
            pairs.append(PersistencePair(int(dims[j]), j + 1, None))
    return sorted(pairs, key=PersistencePair.sort_key)


def classify_simplices(dec: Decomposition) -> list[str]:
    """``"negative"`` for nonzero columns of ``R``, ``"positive"`` otherwise."""
    return ["positive" if i is None else "negative" for i in dec.low_map]


def extract_v_representatives(dec: Decomposition, dims) -> RepresentativeSet:
    dims = _dims_of(dims)
    reps = RepresentativeSet(source="v")
    deaths = {i: j for j, i in enumerate(dec.low_map) if i is not None}
    for j, i in enumerate(dec.low_map):
        if i is None:
            reps.v_basis[j + 1] = Chain.from_column(dec.V[:, j], dims)
            d = deaths.get(j)
            reps.pivots[j + 1] = None if d is None else d + 1
    return reps


def extract_r_representatives(dec: Decomposition, dims) -> RepresentativeSet:
    dims = _dims_of(dims)
    reps = RepresentativeSet(source="r")
    for j, i in enumerate(dec.low_map):
        if i is not None:
            reps.r_basis[j + 1] = Chain.from_column(dec.R[:, j], dims)
            reps.pivots[j + 1] = i + 1
    return reps


def extract_cocycles(Dm: BoundaryMatrix, algorithm: str = "fast-row",
                     field: Optional[FieldContext] = None, *, leaf_size: int = 32,
                     cutoff: int = DEFAULT_CUTOFF, counter: Optional[OpCounter] = None,
                     check: bool = True) -> tuple[list[PersistencePair], RepresentativeSet]:
    """Diagram and cocycle representatives from the anti-transposed matrix.

    A pivot ``(a, b)`` of ``R^perp`` (0-based) is the pair
    ``(n - b, n - a)`` in 1-based filtration indices.
    """
    D, field = prepare(Dm, field)
    dims = Dm.dims if isinstance(Dm, BoundaryMatrix) else np.zeros(D.shape[0], dtype=np.int64)
    n = D.shape[0]
    Dp = BoundaryMatrix(np.ascontiguousarray(D[::-1, ::-1].T), dims[::-1].copy(), field)
    dec = reduce(Dp, algorithm, field=field, leaf_size=leaf_size, cutoff=cutoff,
                 counter=counter, check=check)
    back = lambda k: n - k  # noqa: E731  0-based anti-transposed -> 1-based filtration
    pivot_rows = {i for i in dec.low_map if i is not None}
    diagram = []
    reps = RepresentativeSet(source="v", side="cohomology")
    for b, a in enumerate(dec.low_map):
        birth = back(b)
        if a is not None:
            death = back(a)
            diagram.append(PersistencePair(int(dims[birth - 1]), birth, death))
            reps.v_basis[birth] = Chain.from_column(dec.V[:, b], dims, back)
            reps.pivots[birth] = death
        elif b not in pivot_rows:
            diagram.append(PersistencePair(int(dims[birth - 1]), birth, None))
            reps.v_basis[birth] = Chain.from_column(dec.V[:, b], dims, back)
            reps.pivots[birth] = None
    return sorted(diagram, key=PersistencePair.sort_key), reps


def level_diagram(diagram: Sequence[PersistencePair], F: Filtration,
                  drop_zero_persistence: bool = False) -> list[tuple[int, float, float, bool]]:
    """Map index pairs to ``(dim, birth level, death level, zero_persistence)``."""
    if F.levels is None:
        raise ValueError("filtration carries no levels")
    out = []
    for pr in diagram:
        b = F.levels[pr.birth - 1]
        d = float("inf") if pr.death is None else F.levels[pr.death - 1]
        zero = b == d
        if zero and drop_zero_persistence:
            continue
        out.append((pr.dim, b, d, zero))
    return out


# --------------------------------------------------------------------------
# verification


@dataclass
class VerificationReport:
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def __str__(self) -> str:
        return "\n".join(f"{'ok  ' if v else 'FAIL'} {k}" for k, v in self.checks.items())


def _mod_eq(A: np.ndarray, B: np.ndarray, p: int) -> bool:
    return A.shape == B.shape and bool(np.all((A - B) % p == 0))


def _matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    # entries stay below p < 2^16, so a row of n products fits in int64
    return (A @ B) % p


def verify_decomposition(Dm: BoundaryMatrix | np.ndarray, dec: Decomposition,
                         field: Optional[FieldContext] = None,
                         mode: Optional[str] = None) -> VerificationReport:
    """Check every structural property of ``dec`` exactly.

    ``mode`` overrides ``dec.mode`` for the cleared-row check, so a lazy
    result can be tested against the exhaustive property.
    """
    D, field = prepare(Dm, field or dec.field)
    p = field.p
    R, V, U = dec.R, dec.V, dec.U
    n = D.shape[0]
    rep = VerificationReport()
    I = np.eye(n, dtype=np.int64)
    rep.checks["R = DV"] = _mod_eq(R, _matmul_mod(D, V, p), p)
    rep.checks["UV = I"] = _mod_eq(_matmul_mod(U, V, p), I, p)
    rep.checks["VU = I"] = _mod_eq(_matmul_mod(V, U, p), I, p)
    lows = low_array(R)
    used = lows[lows >= 0]
    rep.checks["low injective"] = len(set(used.tolist())) == used.size
    rep.checks["low map consistent"] = [None if x < 0 else int(x) for x in lows] == list(dec.low_map)
    rep.checks["DR = 0"] = not _matmul_mod(D, R, p).any()
    rep.checks["V unit upper triangular"] = (not np.tril(V % p, -1).any()
                                             and bool(np.all(np.diagonal(V) % p == 1)))
    negative = lows >= 0
    msa = True
    for j in np.flatnonzero(~negative):
        support = np.flatnonzero(V[:, j] % p)
        if any(k != j and not negative[k] for k in support):
            msa = False
            break
    rep.checks["MSA support"] = msa
    if (mode or dec.mode) == "exhaustive":
        cleared = all(not R[i, j + 1:].any() for j, i in enumerate(lows) if i >= 0)
        rep.checks["pivot rows cleared"] = cleared
    return rep


def chain_is_cycle(D: np.ndarray, chain: Chain, p: int) -> bool:
    return not ((D @ chain.to_vector(D.shape[0])) % p).any()

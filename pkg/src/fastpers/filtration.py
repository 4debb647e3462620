"""Simplicial filtrations and their boundary matrices.

Filtration indices are 1-based in the public API (``simplices[0]`` has
index 1); matrix rows and columns are the usual 0-based numpy positions.

The ``.flt`` text format holds one simplex per line as whitespace-separated
vertex ids, in filtration order.  Blank lines and ``#`` comments are ignored.
Lines of the form ``level <float> : <vertex ids>`` attach a level to each
simplex; the total order is then recovered with :func:`extend_partial_order`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .field import F2, FieldContext


class FiltrationError(ValueError):
    """Base class for invalid filtration input."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ParseError(FiltrationError):
    pass


class DuplicateSimplex(FiltrationError):
    pass


class MissingFace(FiltrationError):
    pass


class InvalidLevels(FiltrationError):
    pass


@dataclass(frozen=True, order=True)
class Simplex:
    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        vs = self.vertices
        if not vs:
            raise ValueError("a simplex needs at least one vertex")
        if any(v < 0 for v in vs) or any(a >= b for a, b in zip(vs, vs[1:])):
            raise ValueError(f"vertices must be distinct, non-negative and increasing: {vs}")

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "Simplex":
        vs = tuple(sorted(int(v) for v in vertices))
        if len(set(vs)) != len(vs):
            raise ValueError(f"repeated vertex in {vs}")
        return cls(vs)

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def facets(self) -> list["Simplex"]:
        """Facets in boundary order: the ``i``-th omits vertex ``i``."""
        vs = self.vertices
        if len(vs) == 1:
            return []
        return [Simplex(vs[:i] + vs[i + 1:]) for i in range(len(vs))]

    def __str__(self) -> str:
        return " ".join(map(str, self.vertices))


class Filtration:
    """A validated total order of simplices in which faces precede cofaces."""

    def __init__(self, simplices: Iterable[Simplex | Sequence[int]],
                 levels: Optional[Sequence[float]] = None,
                 lines: Optional[Sequence[int]] = None):
        simps = [s if isinstance(s, Simplex) else Simplex.of(s) for s in simplices]
        index: dict[Simplex, int] = {}
        for pos, s in enumerate(simps):
            line = lines[pos] if lines is not None else None
            if s in index:
                raise DuplicateSimplex(f"simplex {{{s}}} appears twice", line)
            for f in s.facets():
                if f not in index:
                    raise MissingFace(f"face {{{f}}} of {{{s}}} does not appear earlier", line)
            index[s] = pos + 1
        self.simplices: tuple[Simplex, ...] = tuple(simps)
        self._index = index
        self.levels: Optional[tuple[float, ...]] = tuple(levels) if levels is not None else None
        if self.levels is not None and len(self.levels) != len(simps):
            raise ValueError("levels must match simplices one to one")

    def __len__(self) -> int:
        return len(self.simplices)

    @property
    def n(self) -> int:
        return len(self.simplices)

    def index(self, s: Simplex | Sequence[int]) -> int:
        """1-based filtration index of ``s``."""
        key = s if isinstance(s, Simplex) else Simplex.of(s)
        return self._index[key]

    def __getitem__(self, i: int) -> Simplex:
        """Simplex at 1-based index ``i``."""
        if not 1 <= i <= len(self.simplices):
            raise IndexError(i)
        return self.simplices[i - 1]

    def dims(self) -> np.ndarray:
        return np.array([s.dim for s in self.simplices], dtype=np.int64)

    def prefix(self, n: int) -> "Filtration":
        lv = self.levels[:n] if self.levels is not None else None
        return Filtration(self.simplices[:n], lv)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Filtration) and self.simplices == other.simplices

    def __repr__(self) -> str:
        return f"Filtration(n={self.n})"


def extend_partial_order(leveled: Iterable[tuple[float, Simplex | Sequence[int]]],
                         lines: Optional[Sequence[int]] = None) -> Filtration:
    """Total order by level, then dimension, then vertex list."""
    items = []
    for pos, (level, s) in enumerate(leveled):
        simplex = s if isinstance(s, Simplex) else Simplex.of(s)
        items.append((float(level), simplex, lines[pos] if lines is not None else None))
    level_of: dict[Simplex, float] = {}
    for level, s, line in items:
        if s in level_of:
            raise DuplicateSimplex(f"simplex {{{s}}} appears twice", line)
        level_of[s] = level
    for level, s, line in items:
        for f in s.facets():
            if f not in level_of:
                raise MissingFace(f"face {{{f}}} of {{{s}}} is missing", line)
            if level_of[f] > level:
                raise InvalidLevels(
                    f"face {{{f}}} has level {level_of[f]} above its coface {{{s}}} at {level}", line)
    items.sort(key=lambda t: (t[0], t[1].dim, t[1].vertices))
    return Filtration([s for _, s, _ in items], levels=[lv for lv, _, _ in items],
                      lines=[ln for _, _, ln in items] if lines is not None else None)


# --------------------------------------------------------------------------
# text format


def _parse_vertices(tokens: Sequence[str], line: int) -> Simplex:
    if not tokens:
        raise ParseError("no vertices", line)
    try:
        vs = [int(t) for t in tokens]
    except ValueError:
        bad = next(t for t in tokens if not t.lstrip("+").isdigit())
        raise ParseError(f"bad vertex id {bad!r}", line) from None
    if any(v < 0 for v in vs):
        raise ParseError("vertex ids must be non-negative", line)
    if len(set(vs)) != len(vs):
        raise ParseError("repeated vertex id", line)
    return Simplex(tuple(sorted(vs)))


def parse_filtration(text: str) -> Filtration:
    plain: list[tuple[Simplex, int]] = []
    leveled: list[tuple[float, Simplex, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("level"):
            if plain:
                raise ParseError("cannot mix leveled and plain lines", lineno)
            head, sep, rest = body.partition(":")
            parts = head.split()
            if not sep or len(parts) != 2 or parts[0] != "level":
                raise ParseError("expected 'level <float> : <vertex ids>'", lineno)
            try:
                level = float(parts[1])
            except ValueError:
                raise ParseError(f"bad level {parts[1]!r}", lineno) from None
            if level != level:
                raise ParseError("level is NaN", lineno)
            leveled.append((level, _parse_vertices(rest.split(), lineno), lineno))
        else:
            if leveled:
                raise ParseError("cannot mix leveled and plain lines", lineno)
            plain.append((_parse_vertices(body.split(), lineno), lineno))
    if leveled:
        return extend_partial_order([(lv, s) for lv, s, _ in leveled], lines=[ln for *_, ln in leveled])
    return Filtration([s for s, _ in plain], lines=[ln for _, ln in plain])


def read_filtration(path) -> Filtration:
    with open(path, encoding="utf-8") as fh:
        return parse_filtration(fh.read())


def serialize_filtration(F: Filtration, with_levels: bool = False) -> str:
    """Canonical text: sorted vertex lists, one simplex per line."""
    if with_levels and F.levels is not None:
        lines = [f"level {lv!r} : {s}" for lv, s in zip(F.levels, F.simplices)]
    else:
        lines = [str(s) for s in F.simplices]
    return "".join(line + "\n" for line in lines)


# --------------------------------------------------------------------------
# boundary matrices


@dataclass(frozen=True)
class BoundaryMatrix:
    """``n x n`` boundary matrix of a filtration; column ``j`` is the boundary of simplex ``j``."""

    M: np.ndarray
    dims: np.ndarray
    field: FieldContext = F2

    @property
    def n(self) -> int:
        return int(self.M.shape[0])

    def antitransposed(self) -> "BoundaryMatrix":
        return BoundaryMatrix(antitranspose(self.M), self.dims[::-1].copy(), self.field)


def boundary_matrix(F: Filtration, field: FieldContext = F2) -> BoundaryMatrix:
    n = F.n
    M = np.zeros((n, n), dtype=np.int64)
    minus_one = field.p - 1
    for j, s in enumerate(F.simplices):
        for i, f in enumerate(s.facets()):
            M[F.index(f) - 1, j] = 1 if i % 2 == 0 else minus_one
    return BoundaryMatrix(M, F.dims(), field)


def antitranspose(M: np.ndarray) -> np.ndarray:
    """Transpose across the anti-diagonal: ``out[i, j] = M[n-1-j, n-1-i]``."""
    return np.ascontiguousarray(M[::-1, ::-1].T)

"""Seeded random filtrations for tests and benchmarks.

Points are dropped in the unit square and the flag (clique) complex is grown
edge by edge in order of length, up to ``max_dim``.  Vertices get small random
levels, so the vertex order is shuffled relative to the vertex ids.  The
leveled simplices go through :func:`extend_partial_order`, and the result is
truncated to exactly ``n`` simplices, which is always a valid filtration
because faces precede cofaces.
"""
from __future__ import annotations

import math
import random
from itertools import combinations

from .filtration import Filtration, extend_partial_order


def _flag_prefix(rng: random.Random, n_vertices: int, n_target: int,
                 max_dim: int) -> list[tuple[float, tuple[int, ...]]]:
    pts = [(rng.random(), rng.random()) for _ in range(n_vertices)]
    vlevel = [0.05 * rng.random() for _ in range(n_vertices)]
    items: list[tuple[float, tuple[int, ...]]] = [(vlevel[v], (v,)) for v in range(n_vertices)]
    edges = sorted(
        (max(math.dist(pts[u], pts[v]), vlevel[u], vlevel[v]), (u, v))
        for u, v in combinations(range(n_vertices), 2))
    nbrs: list[set[int]] = [set() for _ in range(n_vertices)]
    for level, (u, v) in edges:
        if len(items) >= n_target:
            break
        items.append((level, (u, v)))
        common = sorted(nbrs[u] & nbrs[v])
        if max_dim >= 2:
            items.extend((level, tuple(sorted((u, v, w)))) for w in common)
        if max_dim >= 3:
            items.extend((level, tuple(sorted((u, v, w, x))))
                         for w, x in combinations(common, 2) if x in nbrs[w])
        nbrs[u].add(v)
        nbrs[v].add(u)
    return items


def random_filtration(n: int, seed: int = 0, max_dim: int = 3) -> Filtration:
    """A reproducible filtration with exactly ``n`` simplices."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Filtration([])
    rng = random.Random(seed)
    nv = rng.randint(max(1, n // 8), max(1, n // 3))
    while True:
        items = _flag_prefix(rng, nv, n, max_dim)
        if len(items) >= n:
            return extend_partial_order(items).prefix(n)
        nv += max(1, nv // 2)

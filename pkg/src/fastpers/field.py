"""Arithmetic in the prime field F_p.

Field elements are plain Python ints in ``[0, p)``; matrices over the field
are int64 numpy arrays whose entries satisfy the same bound.  ``p < 2**16``
keeps every product below ``2**32`` so that dot products of length up to
``2**31`` fit in int64 before the final reduction.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MAX_MODULUS = 1 << 16
_TABLE_LIMIT = 1 << 8


class ZeroInverse(ZeroDivisionError):
    """Raised when inverting zero."""


class NotPrime(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldContext:
    """The prime field F_p with ``2 <= p < 2**16``."""

    p: int = 2
    _inv_table: tuple[int, ...] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.p, (int, np.integer)) or not 2 <= self.p < MAX_MODULUS:
            raise NotPrime(f"modulus must be an integer in [2, {MAX_MODULUS}), got {self.p!r}")
        if not is_prime(int(self.p)):
            raise NotPrime(f"modulus {self.p} is not prime")
        object.__setattr__(self, "p", int(self.p))
        if self.p <= _TABLE_LIMIT:
            table = [0] + [pow(a, -1, self.p) for a in range(1, self.p)]
            object.__setattr__(self, "_inv_table", tuple(table))

    def element(self, value: int) -> int:
        return int(value) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in F_{self.p}")
        if self._inv_table is not None:
            return self._inv_table[a]
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return (a * self.inv(b)) % self.p

    # array helpers -----------------------------------------------------

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return np.mod(a, self.p, dtype=np.int64)

    def asarray(self, a) -> np.ndarray:
        return np.mod(np.asarray(a, dtype=np.int64), self.p)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)


def ff_add(a: int, b: int, ctx: FieldContext) -> int:
    return ctx.add(a, b)


def ff_mul(a: int, b: int, ctx: FieldContext) -> int:
    return ctx.mul(a, b)


def ff_inv(a: int, ctx: FieldContext) -> int:
    return ctx.inv(a)


F2 = FieldContext(2)

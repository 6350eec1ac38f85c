"""Arithmetic in the prime field F_p.

Scalars are plain Python ints in ``range(p)``; the modulus travels with the
:class:`PrimeField` (or the owning algebra) rather than with each value.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

MAX_PRIME = 2**31 - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"modulus {self.p!r} is not prime")
        if self.p > MAX_PRIME:
            raise ValueError(f"prime {self.p} exceeds {MAX_PRIME}")

    def __call__(self, value: int) -> int:
        return int(value) % self.p

    def elements(self) -> range:
        return range(self.p)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return pow(a, -1, self.p)

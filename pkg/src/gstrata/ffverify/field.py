"""Prime fields and the size guard shared by every enumerator."""

from __future__ import annotations

import math
from dataclasses import dataclass

SUPPORTED_PRIMES = (2, 3, 5, 7, 11, 13)

# enumerations larger than this many points are refused
MAX_LOG2_POINTS = 20


class GuardError(ValueError):
    """Parameters outside the supported, enumerable range."""


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p not in SUPPORTED_PRIMES:
            raise GuardError(f"q={self.p} is not one of the supported primes {SUPPORTED_PRIMES}")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    @property
    def units(self) -> range:
        return range(1, self.p)

    @property
    def generator(self) -> int:
        """Smallest generator of the multiplicative group."""
        p = self.p
        for g in range(1, p):
            if len({pow(g, k, p) for k in range(p - 1)}) == p - 1:
                return g
        raise AssertionError("unreachable")  # pragma: no cover


def check_prime(q: int) -> PrimeField:
    return PrimeField(int(q))


def check_matrix_guard(n: int, q: int):
    check_prime(q)
    if n * n * math.log2(q) > MAX_LOG2_POINTS:
        raise GuardError(
            f"P(M_{n}(F_{q})) has about {q}^{n * n} points, beyond the 2^{MAX_LOG2_POINTS} guard"
        )

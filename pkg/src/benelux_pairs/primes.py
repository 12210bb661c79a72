"""Prime generation for the radical sieve."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PrimeList:
    """Ascending primes covering [2, limit]; immutable once built."""

    primes: np.ndarray
    limit: int

    def covers(self, bound: int) -> bool:
        return self.limit >= bound

    def __len__(self) -> int:
        return int(self.primes.size)


def primes_up_to(limit: int) -> PrimeList:
    """All primes in [2, limit] via a flat-array Eratosthenes sieve."""
    if limit < 0:
        raise ValueError("limit must be >= 0")
    if limit < 2:
        return PrimeList(np.empty(0, dtype=np.uint64), limit)
    composite = np.zeros(limit + 1, dtype=bool)
    composite[:2] = True
    for p in range(2, math.isqrt(limit) + 1):
        if not composite[p]:
            composite[p * p :: p] = True
    return PrimeList(np.flatnonzero(~composite).astype(np.uint64), limit)

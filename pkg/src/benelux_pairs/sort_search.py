"""Full in-memory search: sort all signatures, scan equal runs.

Fastest route when the whole record set fits in RAM; the chunked search
exists for everything beyond that.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .primes import PrimeList, primes_up_to
from .radical import Interval, RadicalSegment, sieve_radicals
from .signatures import BeneluxPair, PairSignature, classify, signature_of

# values + lo + hi + sort order + two sorted key copies, all uint64
BYTES_PER_RECORD = 48
DEFAULT_MEMORY_BUDGET = 14 * 2**30


class MemoryBudgetExceeded(ValueError):
    """Record arrays would not fit the budget; use the chunked search."""


@dataclass(frozen=True)
class SignatureRecord:
    n: int
    sig: PairSignature


def signature_record(n: int, segment: RadicalSegment) -> SignatureRecord:
    """Record (n, signature of n) read off a radical segment."""
    return SignatureRecord(n, signature_of(n, segment.rad(n), segment.rad(n + 1)))


def find_pairs_sorted(
    limit: int,
    primes: PrimeList | None = None,
    *,
    memory_budget_bytes: int = DEFAULT_MEMORY_BUDGET,
) -> list[BeneluxPair]:
    """Every Benelux pair of either kind with m < n < limit, sorted by (m, n).

    Sieves rad over [1, limit], sorts the signatures of n = 1..limit-1
    lexicographically (ties by n, via sort stability), then emits all pairs
    inside every maximal run of equal signatures.  Scanning whole runs
    rather than only adjacent entries keeps the result complete even if
    three or more integers ever shared a signature.
    """
    if limit < 3:
        raise ValueError("limit must be >= 3")
    estimated = BYTES_PER_RECORD * limit
    if estimated > memory_budget_bytes:
        raise MemoryBudgetExceeded(
            f"sorting {limit} records needs about {estimated} bytes "
            f"(budget {memory_budget_bytes}); use the chunked search"
        )
    if primes is None:
        primes = primes_up_to(math.isqrt(limit))
    segment = sieve_radicals(Interval(1, limit), primes)
    values = segment.values
    rad_of = values[: limit - 1]
    rad_next = values[1:limit]
    lo = np.minimum(rad_of, rad_next)
    hi = np.maximum(rad_of, rad_next)
    order = np.lexsort((hi, lo))
    sorted_lo = lo[order]
    sorted_hi = hi[order]
    dup = np.flatnonzero((sorted_lo[1:] == sorted_lo[:-1]) & (sorted_hi[1:] == sorted_hi[:-1]))

    pairs: list[BeneluxPair] = []
    i = 0
    while i < dup.size:
        j = i
        while j + 1 < dup.size and dup[j + 1] == dup[j] + 1:
            j += 1
        # sorted positions dup[i] .. dup[j]+1 hold one equal-signature run
        members = [int(order[t]) + 1 for t in range(dup[i], dup[j] + 2)]
        for x in range(len(members) - 1):
            for y in range(x + 1, len(members)):
                m, n = members[x], members[y]
                pair = classify(
                    m, n, int(values[m - 1]), int(values[m]), int(values[n - 1]), int(values[n])
                )
                assert pair is not None  # equal signatures force a kind
                pairs.append(pair)
        i = j + 1

    pairs.sort(key=lambda p: p.key)
    return pairs

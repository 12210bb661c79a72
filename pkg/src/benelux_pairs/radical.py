"""Radicals (squarefree kernels) over integer intervals.

The production path sieves a whole interval at once; the trial-division
oracle computes the same values independently and is what every sieve test
compares against.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .primes import PrimeList

UINT64_MAX = 2**64 - 1


@dataclass(frozen=True)
class Interval:
    """Contiguous integers [start, start + length - 1]."""

    start: int
    length: int

    def __post_init__(self) -> None:
        if self.start < 1:
            raise ValueError("interval must start at 1 or above")
        if self.length < 1:
            raise ValueError("interval length must be >= 1")
        if self.start + self.length - 1 > UINT64_MAX:
            raise ValueError("interval endpoint exceeds 64 bits")

    @property
    def last(self) -> int:
        return self.start + self.length - 1

    @classmethod
    def closed(cls, first: int, last: int) -> "Interval":
        return cls(first, last - first + 1)


@dataclass
class RadicalSegment:
    """values[k] = rad(start + k) for every integer of the interval."""

    interval: Interval
    values: np.ndarray

    def rad(self, n: int) -> int:
        """rad(n) for an n inside the interval."""
        if not self.interval.start <= n <= self.interval.last:
            raise ValueError(f"{n} outside [{self.interval.start}, {self.interval.last}]")
        return int(self.values[n - self.interval.start])


def radical_oracle(n: int) -> int:
    """Product of the distinct primes dividing n, by plain trial division.

    Kept free of any shared machinery (no prime list, no sieve) so it can
    serve as the independent reference; rad(1) = 1.
    """
    if n < 1:
        raise ValueError("radical is defined for n >= 1")
    r = 1
    if n % 2 == 0:
        r = 2
        while n % 2 == 0:
            n //= 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            r *= d
            while n % d == 0:
                n //= d
        d += 2
    if n > 1:
        r *= n
    return r


def radicals_by_trial_division(interval: Interval) -> np.ndarray:
    """Bulk radical_oracle over an interval (same algorithm, compiled)."""
    return _kernels.radicals_trial_division(np.uint64(interval.start), interval.length)


def fresh_segment(interval: Interval) -> RadicalSegment:
    """Segment with values[k] = start + k, no prime processed yet."""
    return RadicalSegment(interval, _kernels.identity_fill(np.uint64(interval.start), interval.length))


def strip_twos_fast(segment: RadicalSegment) -> RadicalSegment:
    """Process the prime 2 on a fresh segment in one pass, in place.

    Every multiple of four is divided by 2**(v-1), v its 2-adic valuation,
    leaving exactly one factor 2; equivalent to running the generic
    exponent loop for all powers of 2.
    """
    _kernels.strip_twos(segment.values, np.uint64(segment.interval.start))
    return segment


def required_prime_bound(interval: Interval) -> int:
    """Largest prime the sieve may need: isqrt of the interval endpoint."""
    return math.isqrt(interval.last)


def sieve_radicals(interval: Interval, primes: PrimeList, *, ctz_fast_path: bool = True) -> RadicalSegment:
    """rad(n) for every n in the interval by prime-power sieving.

    Starts from values[k] = start + k and, for each prime power p**e with
    e >= 2 reaching into the interval, divides the slots on its arithmetic
    progression by p.  The supplied prime list must cover isqrt(endpoint).
    With ctz_fast_path the p=2 work is done by strip_twos_fast instead of
    the generic exponent loop (identical result).
    """
    need = required_prime_bound(interval)
    if not primes.covers(need):
        raise ValueError(f"prime list covers {primes.limit} but interval endpoint needs {need}")
    values = _kernels.sieve_segment(
        np.uint64(interval.start), interval.length, primes.primes, ctz_fast_path
    )
    return RadicalSegment(interval, values)

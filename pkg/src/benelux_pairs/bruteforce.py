"""Quadratic reference search.

Trial-division radicals plus a double loop over all m < n; shares no code
with the sieve, the sort search, or the hash search, so it can stand as
the ground truth they are compared against (practical up to a few 10^4).
"""
from __future__ import annotations

import numpy as np

from . import _kernels
from .radical import Interval, radicals_by_trial_division
from .signatures import BeneluxPair, Kind


def brute_force_pairs(limit: int) -> list[BeneluxPair]:
    """All pairs of either kind with m < n < limit, sorted by (m, n)."""
    if limit < 3:
        raise ValueError("limit must be >= 3")
    rads = radicals_by_trial_division(Interval(1, limit))
    capacity = 256
    while True:
        kind = np.empty(capacity, np.int8)
        m = np.empty(capacity, np.uint64)
        n = np.empty(capacity, np.uint64)
        found, status = _kernels.brute_force_scan(rads, kind, m, n)
        if status == _kernels.STATUS_BUFFER_FULL:
            capacity *= 4
            continue
        break
    pairs = [
        BeneluxPair(
            int(m[t]),
            int(n[t]),
            Kind(int(kind[t])),
            int(rads[int(m[t]) - 1]),
            int(rads[int(m[t])]),
        )
        for t in range(found)
    ]
    pairs.sort(key=lambda p: p.key)
    return pairs

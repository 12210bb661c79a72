import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import benelux_pairs as bp

# Compiled kernels make per-example deadlines meaningless on first call.
settings.register_profile(
    "kernels",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("kernels")


@pytest.fixture(scope="session")
def primes_2k() -> bp.PrimeList:
    return bp.primes_up_to(2000)


@pytest.fixture(scope="session")
def primes_for_million() -> bp.PrimeList:
    return bp.primes_up_to(math.isqrt(10**6))


@pytest.fixture(scope="session")
def warm_kernels(primes_2k):
    """Touch every compiled kernel once so timed tests never pay JIT cost."""
    seg = bp.sieve_radicals(bp.Interval(1, 64), primes_2k)
    bp.strip_twos_fast(bp.fresh_segment(bp.Interval(1, 64)))
    bp.radicals_by_trial_division(bp.Interval(1, 64))
    bp.brute_force_pairs(64)
    table = bp.SignatureTable(65, seg.values[:-1], seg.values[1:])
    table.insert_all()
    table.probe_all(1, seg.values[:-1], seg.values[1:])
    return True


def pair_keys(pairs) -> set[tuple[int, int, int]]:
    return {(int(p.kind), p.m, p.n) for p in pairs}


@pytest.fixture(scope="session")
def rng() -> np.random.Generator:
    return np.random.default_rng(20260811)

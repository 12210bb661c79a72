import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from benelux_pairs import primes_up_to


def is_prime_by_division(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def test_small_examples():
    assert primes_up_to(10).primes.tolist() == [2, 3, 5, 7]
    assert primes_up_to(1).primes.tolist() == []
    assert primes_up_to(2).primes.tolist() == [2]
    assert primes_up_to(0).primes.tolist() == []


def test_count_up_to_65536_matches_trial_division():
    # Independent count: plain trial-division primality over the whole range.
    expected = sum(1 for n in range(2, 65537) if is_prime_by_division(n))
    assert expected == 6542
    got = primes_up_to(65536)
    assert len(got) == 6542
    assert got.limit == 65536


def test_negative_limit_rejected():
    with pytest.raises(ValueError):
        primes_up_to(-1)


@given(st.integers(min_value=0, max_value=5000))
def test_matches_trial_division_exactly(limit):
    got = primes_up_to(limit).primes.tolist()
    assert got == [n for n in range(2, limit + 1) if is_prime_by_division(n)]


@given(st.integers(min_value=0, max_value=3000), st.integers(min_value=0, max_value=500))
def test_count_monotone(limit, extra):
    assert len(primes_up_to(limit + extra)) >= len(primes_up_to(limit))


def test_strictly_ascending_no_duplicates():
    primes = primes_up_to(100000).primes
    assert np.all(primes[1:] > primes[:-1])


def test_covers():
    plist = primes_up_to(1000)
    assert plist.covers(1000)
    assert not plist.covers(1001)

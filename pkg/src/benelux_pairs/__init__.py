"""Exhaustive search for Benelux pairs below a configurable bound.

A Benelux pair is a pair of integers m < n where m, n share their set of
prime factors and m+1, n+1 do too; in the second-kind variant the sets
match crosswise (m with n+1, and m+1 with n).  The search sieves radicals
(squarefree kernels) over intervals and detects signature collisions either
by sorting everything in memory or by hashing chunk by chunk in bounded
space.
"""
from .bruteforce import brute_force_pairs
from .chunked import (
    Chunk,
    DEFAULT_CHUNK_SIZE,
    SignatureTable,
    TableFullError,
    chunk_bounds,
    commutative_hash,
    num_chunks,
    run_full_chunked,
    search_chunk,
    table_size_for,
)
from .families import (
    COMPLETENESS_BOUND,
    KnownSolutionSet,
    exceptional_pairs,
    expected_pairs_up_to,
    family_first_kind,
    family_second_kind,
)
from .primes import PrimeList, primes_up_to
from .radical import (
    Interval,
    RadicalSegment,
    fresh_segment,
    radical_oracle,
    radicals_by_trial_division,
    required_prime_bound,
    sieve_radicals,
    strip_twos_fast,
)
from .signatures import BeneluxPair, Kind, PairSignature, classify, compare, signature_of
from .sort_search import (
    MemoryBudgetExceeded,
    SignatureRecord,
    find_pairs_sorted,
    signature_record,
)

__version__ = "0.1.0"

__all__ = [
    "BeneluxPair",
    "COMPLETENESS_BOUND",
    "Chunk",
    "DEFAULT_CHUNK_SIZE",
    "Interval",
    "Kind",
    "KnownSolutionSet",
    "MemoryBudgetExceeded",
    "PairSignature",
    "PrimeList",
    "RadicalSegment",
    "SignatureRecord",
    "SignatureTable",
    "TableFullError",
    "brute_force_pairs",
    "chunk_bounds",
    "classify",
    "commutative_hash",
    "compare",
    "exceptional_pairs",
    "expected_pairs_up_to",
    "family_first_kind",
    "family_second_kind",
    "find_pairs_sorted",
    "fresh_segment",
    "num_chunks",
    "primes_up_to",
    "radical_oracle",
    "radicals_by_trial_division",
    "required_prime_bound",
    "run_full_chunked",
    "search_chunk",
    "sieve_radicals",
    "signature_of",
    "signature_record",
    "strip_twos_fast",
    "table_size_for",
]

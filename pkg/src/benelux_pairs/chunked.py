"""Memory-bounded search over fixed-size chunks with a signature hash table.

One pass per chunk: sieve its radicals, insert every signature of the chunk
into an open-addressing table (finding intra-chunk pairs on the way), then
re-sieve each earlier chunk and probe the table with its signatures.  Space
stays proportional to the chunk size while the whole range below the limit
gets covered exactly once.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import _kernels
from .primes import PrimeList, primes_up_to
from .radical import Interval, sieve_radicals
from .signatures import BeneluxPair, Kind, PairSignature

# Production default; small runs override it freely.
DEFAULT_CHUNK_SIZE = 1 << 27

_MASK64 = (1 << 64) - 1
HASH_CONSTANTS = (0x9E3779B97F4A7C15, 0xBF58476D1CE4E5B9, 0x94D049BB133111EB)
# Resolved separately per phase so tests can inject a build/probe mismatch.
_BUILD_HASH_CONSTANTS = HASH_CONSTANTS
_PROBE_HASH_CONSTANTS = HASH_CONSTANTS

_INITIAL_MATCH_BUFFER = 256
_NO_LIMIT = 2**64 - 1
# Integers of probe work one thread-pool task should cover at minimum.
_PROBE_BATCH_TARGET = 1 << 21


class TableFullError(RuntimeError):
    """A probe wrapped the whole table: it was sized too small for the chunk."""


@dataclass(frozen=True)
class Chunk:
    """Interval [first, last] worked on in one pass.

    Consecutive chunks overlap in exactly one integer, because the last
    element's successor radical is needed too; the set-domain [first,
    last-1] is the slice of integers whose signatures this chunk owns, and
    those domains tile [1, inf) without gaps or overlap.
    """

    index: int
    size: int
    first: int
    last: int

    @property
    def domain_first(self) -> int:
        return self.first

    @property
    def domain_last(self) -> int:
        return self.last - 1

    @property
    def domain_count(self) -> int:
        return self.size - 1


def chunk_bounds(index: int, chunk_size: int) -> Chunk:
    """Descriptor of chunk number `index` for a given chunk size (>= 3)."""
    if chunk_size < 3:
        raise ValueError("chunk size must be >= 3")
    if index < 0:
        raise ValueError("chunk index must be >= 0")
    first = 1 + index * (chunk_size - 1)
    last = 1 + (index + 1) * (chunk_size - 1)
    return Chunk(index=index, size=chunk_size, first=first, last=last)


def num_chunks(limit: int, chunk_size: int) -> int:
    """Chunks needed so the set-domains cover 1 .. limit-1."""
    return (limit - 2) // (chunk_size - 1) + 1


def table_size_for(domain_count: int) -> int:
    """Smallest power of two >= 4 * domain_count (load factor <= 1/4)."""
    if domain_count < 1:
        raise ValueError("domain must hold at least one element")
    return 1 << (4 * domain_count - 1).bit_length()


def commutative_hash(sig: PairSignature, table_size: int) -> int:
    """Slot index in [0, table_size); table_size must be a power of two.

    Symmetric in the two radicals by construction, since signatures are
    canonical (lo, hi).
    """
    if table_size & (table_size - 1) or table_size < 1:
        raise ValueError("table size must be a power of two")
    return _slot_of(sig.lo, sig.hi, table_size - 1, HASH_CONSTANTS)


def _slot_of(lo: int, hi: int, mask: int, constants: tuple[int, int, int]) -> int:
    phi, mul1, mul2 = constants
    x = lo ^ (hi * phi & _MASK64)
    x = (x ^ (x >> 30)) * mul1 & _MASK64
    x = (x ^ (x >> 27)) * mul2 & _MASK64
    return (x ^ (x >> 31)) & mask


def _match_buffers(capacity: int):
    return (
        np.empty(capacity, np.int8),
        np.empty(capacity, np.uint64),
        np.empty(capacity, np.uint64),
        np.empty(capacity, np.uint64),
        np.empty(capacity, np.uint64),
    )


def _pairs_from_buffers(found: int, kind, m, n, rm, rm1) -> list[BeneluxPair]:
    return [
        BeneluxPair(int(m[t]), int(n[t]), Kind(int(kind[t])), int(rm[t]), int(rm1[t]))
        for t in range(found)
    ]


class SignatureTable:
    """Open-addressing table of one chunk's signatures.

    An occupied slot holds the integer n (as its offset into the owning
    domain) together with its home slot, packed into one word so a probe
    step costs a single load; zero means empty, which is unambiguous since
    offsets are stored shifted by one.  Signatures are never stored: a
    candidate match re-reads the chunk's radical arrays (rad_of[t],
    rad_next[t] for n = domain_start + t).  Probing is linear with step 1.
    The allocation is reusable across chunks via reset_for_domain.
    """

    def __init__(
        self,
        domain_start: int,
        rad_of: np.ndarray,
        rad_next: np.ndarray,
        *,
        table_size: int | None = None,
    ):
        if len(rad_of) != len(rad_next):
            raise ValueError("radical arrays must have equal length")
        if len(rad_of) > 2**32 - 2:
            raise ValueError("domain too large for 32-bit slot offsets")
        if table_size is None:
            table_size = table_size_for(len(rad_of))
        if table_size & (table_size - 1):
            raise ValueError("table size must be a power of two")
        if table_size > 2**32:
            raise ValueError("table too large for 32-bit home slots")
        self.domain_start = domain_start
        self.rad_of = rad_of
        self.rad_next = rad_next
        self.mask = table_size - 1
        self.slots = np.zeros(table_size, np.uint64)
        self.occupied = 0
        self._dirty = False

    @property
    def table_size(self) -> int:
        return self.mask + 1

    @property
    def load_factor(self) -> float:
        return self.occupied / self.table_size

    def reset_for_domain(self, domain_start: int, rad_of: np.ndarray, rad_next: np.ndarray) -> None:
        """Empty the table and rebind it to another chunk of the same size."""
        if len(rad_of) != len(rad_next) or len(rad_of) > 2**32 - 2:
            raise ValueError("bad radical arrays")
        if 4 * len(rad_of) > self.table_size:
            raise ValueError("table too small for this domain")
        self.domain_start = domain_start
        self.rad_of = rad_of
        self.rad_next = rad_next
        if self._dirty:
            self.slots.fill(0)
            self._dirty = False
        self.occupied = 0

    def _sig(self, n: int) -> tuple[int, int]:
        t = n - self.domain_start
        return int(self.rad_of[t]), int(self.rad_next[t])

    def _entry(self, idx: int) -> tuple[int, int]:
        """(stored n, home slot) of an occupied slot."""
        packed = int(self.slots[idx])
        return self.domain_start + (packed >> 32) - 1, packed & 0xFFFFFFFF

    def insert(self, n: int) -> list[BeneluxPair]:
        """Store n; report a pair for every equal-signature slot passed."""
        a, b = self._sig(n)
        lo, hi = (a, b) if a < b else (b, a)
        home = _slot_of(lo, hi, self.mask, HASH_CONSTANTS)
        idx = home
        steps = 0
        matches: list[BeneluxPair] = []
        self._dirty = True
        while True:
            if int(self.slots[idx]) == 0:
                self.slots[idx] = ((n - self.domain_start + 1) << 32) | home
                self.occupied += 1
                return matches
            stored, stored_home = self._entry(idx)
            if stored_home == home:
                a2, b2 = self._sig(stored)
                if min(a2, b2) == lo and max(a2, b2) == hi:
                    kind = Kind.FIRST if a2 == a else Kind.SECOND
                    matches.append(BeneluxPair(stored, n, kind, a2, b2))
            idx = (idx + 1) & self.mask
            steps += 1
            if steps > self.mask:
                raise TableFullError(f"no empty slot in a table of {self.table_size}")

    def probe(self, m: int, rad_m: int, rad_m1: int) -> list[BeneluxPair]:
        """Pairs (m, n) for every stored n sharing m's signature; read-only."""
        lo, hi = (rad_m, rad_m1) if rad_m < rad_m1 else (rad_m1, rad_m)
        home = _slot_of(lo, hi, self.mask, HASH_CONSTANTS)
        idx = home
        steps = 0
        matches: list[BeneluxPair] = []
        while int(self.slots[idx]) != 0:
            stored, stored_home = self._entry(idx)
            if stored_home == home:
                a2, b2 = self._sig(stored)
                if min(a2, b2) == lo and max(a2, b2) == hi:
                    kind = Kind.FIRST if rad_m == a2 else Kind.SECOND
                    matches.append(BeneluxPair(m, stored, kind, rad_m, rad_m1))
            idx = (idx + 1) & self.mask
            steps += 1
            if steps > self.mask:
                raise TableFullError(f"probe wrapped a table of {self.table_size}")
        return matches

    def insert_all(self, *, n_limit: int | None = None) -> list[BeneluxPair]:
        """Compiled insert of the whole domain, ascending; same result as
        calling insert() per element.  Stops before the first n >= n_limit."""
        constants = _BUILD_HASH_CONSTANTS
        limit = _NO_LIMIT if n_limit is None else n_limit
        capacity = _INITIAL_MATCH_BUFFER
        while True:
            if self._dirty:
                self.slots.fill(0)
            self._dirty = True
            kind, m, n, rm, rm1 = _match_buffers(capacity)
            found, inserted, status = _kernels.build_table(
                np.uint64(self.domain_start),
                self.rad_of,
                self.rad_next,
                np.uint64(limit),
                self.slots,
                np.uint64(self.mask),
                np.uint64(constants[0]),
                np.uint64(constants[1]),
                np.uint64(constants[2]),
                kind, m, n, rm, rm1,
            )
            if status == _kernels.STATUS_TABLE_FULL:
                raise TableFullError(f"no empty slot in a table of {self.table_size}")
            if status == _kernels.STATUS_BUFFER_FULL:
                capacity *= 4
                continue
            self.occupied = int(inserted)
            return _pairs_from_buffers(found, kind, m, n, rm, rm1)

    def _probe_raw(self, probe_start: int, rad_of: np.ndarray, rad_next: np.ndarray):
        """Compiled probe returning raw match arrays (kind, m, n, rad_m, rad_m1)."""
        constants = _PROBE_HASH_CONSTANTS
        capacity = _INITIAL_MATCH_BUFFER
        while True:
            kind, m, n, rm, rm1 = _match_buffers(capacity)
            found, status = _kernels.probe_table(
                np.uint64(probe_start),
                rad_of,
                rad_next,
                np.uint64(self.domain_start),
                self.rad_of,
                self.rad_next,
                self.slots,
                np.uint64(self.mask),
                np.uint64(constants[0]),
                np.uint64(constants[1]),
                np.uint64(constants[2]),
                kind, m, n, rm, rm1,
            )
            if status == _kernels.STATUS_TABLE_FULL:
                raise TableFullError(f"probe wrapped a table of {self.table_size}")
            if status == _kernels.STATUS_BUFFER_FULL:
                capacity *= 4
                continue
            return found, kind, m, n, rm, rm1

    def probe_all(self, probe_start: int, rad_of: np.ndarray, rad_next: np.ndarray) -> list[BeneluxPair]:
        """Compiled probe of a whole earlier domain; read-only on the table."""
        found, kind, m, n, rm, rm1 = self._probe_raw(probe_start, rad_of, rad_next)
        return _pairs_from_buffers(found, kind, m, n, rm, rm1)


def search_chunk(
    index: int,
    chunk_size: int,
    primes: PrimeList,
    *,
    n_limit: int | None = None,
    threads: int = 1,
    executor: ThreadPoolExecutor | None = None,
    table: SignatureTable | None = None,
) -> list[BeneluxPair]:
    """All pairs (m, n), m < n, whose n lies in this chunk's set-domain.

    Builds the chunk's signature table (catching intra-chunk pairs during
    insertion), then re-sieves every earlier chunk and probes the table
    with it.  The probe phase is read-only on the table, so earlier chunks
    are processed in parallel when threads > 1; the returned list is sorted
    by (n, m) and independent of the thread count.  Passing a table of the
    right size reuses its allocation after a reset.
    """
    chunk = chunk_bounds(index, chunk_size)
    segment = sieve_radicals(Interval(chunk.first, chunk.size), primes)
    values = segment.values
    if table is None:
        table = SignatureTable(chunk.first, values[:-1], values[1:])
    else:
        table.reset_for_domain(chunk.first, values[:-1], values[1:])
    pairs = table.insert_all(n_limit=n_limit)

    def probe_block(block: range) -> list[BeneluxPair]:
        matches: list[BeneluxPair] = []
        for j in block:
            earlier = chunk_bounds(j, chunk_size)
            seg_j = sieve_radicals(Interval(earlier.first, earlier.size), primes)
            vals_j = seg_j.values
            matches.extend(table.probe_all(earlier.first, vals_j[:-1], vals_j[1:]))
        return matches

    if index > 0:
        # Batch small chunks so per-task dispatch overhead stays negligible.
        per_block = max(1, _PROBE_BATCH_TARGET // chunk_size)
        blocks = [range(j, min(j + per_block, index)) for j in range(0, index, per_block)]
        if executor is not None:
            results = executor.map(probe_block, blocks)
        elif threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(probe_block, blocks))
        else:
            results = map(probe_block, blocks)
        for block_matches in results:
            pairs.extend(block_matches)

    pairs.sort(key=lambda p: (p.n, p.m))
    return pairs


def run_full_chunked(
    limit: int,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    primes: PrimeList | None = None,
    *,
    resume_from: int = 0,
    threads: int = 1,
    on_chunk_done: Callable[[int], None] | None = None,
) -> Iterator[BeneluxPair]:
    """Stream every pair with m < n < limit, chunk by chunk.

    Yields each chunk's pairs (sorted by (n, m)) before moving on;
    on_chunk_done fires after a chunk's pairs have all been yielded, which
    is the safe moment to persist progress.  Restarting with resume_from
    set to a previously completed count reproduces the remaining suffix
    exactly.
    """
    if limit < 3:
        raise ValueError("limit must be >= 3")
    if chunk_size < 3:
        raise ValueError("chunk size must be >= 3")
    total = num_chunks(limit, chunk_size)
    if primes is None:
        primes = primes_up_to(math.isqrt(chunk_bounds(total - 1, chunk_size).last))
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    table: SignatureTable | None = None
    try:
        for index in range(resume_from, total):
            chunk = chunk_bounds(index, chunk_size)
            if table is None:
                table = SignatureTable(
                    chunk.first,
                    np.empty(0, np.uint64),
                    np.empty(0, np.uint64),
                    table_size=table_size_for(chunk.domain_count),
                )
            found = search_chunk(
                index,
                chunk_size,
                primes,
                n_limit=limit,
                threads=threads,
                executor=pool,
                table=table,
            )
            yield from found
            if on_chunk_done is not None:
                on_chunk_done(index)
    finally:
        if pool is not None:
            pool.shutdown(wait=False, cancel_futures=True)

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from benelux_pairs import (
    Interval,
    Kind,
    PairSignature,
    SignatureTable,
    TableFullError,
    brute_force_pairs,
    chunk_bounds,
    commutative_hash,
    find_pairs_sorted,
    num_chunks,
    primes_up_to,
    radical_oracle,
    run_full_chunked,
    search_chunk,
    sieve_radicals,
    signature_of,
    table_size_for,
)
from conftest import pair_keys


class TestChunkGeometry:
    def test_bounds_examples(self):
        c = chunk_bounds(0, 5)
        assert (c.first, c.last, c.domain_first, c.domain_last) == (1, 5, 1, 4)
        c = chunk_bounds(1, 5)
        assert (c.first, c.last, c.domain_first, c.domain_last) == (5, 9, 5, 8)
        c = chunk_bounds(2, 1 << 27)
        assert c.first == 1 + 2**28 - 2
        assert c.last == 1 + 3 * (2**27 - 1)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            chunk_bounds(0, 2)
        with pytest.raises(ValueError):
            chunk_bounds(-1, 5)

    @given(st.integers(min_value=3, max_value=1000), st.integers(min_value=1, max_value=50))
    def test_domains_tile_the_integers(self, chunk_size, count):
        covered = []
        for i in range(count):
            c = chunk_bounds(i, chunk_size)
            assert c.last - c.first + 1 == chunk_size
            covered.extend(range(c.domain_first, c.domain_last + 1))
            if i:
                # one-integer overlap between consecutive chunks
                assert c.first == chunk_bounds(i - 1, chunk_size).last
        assert covered == list(range(1, count * (chunk_size - 1) + 1))

    @given(st.integers(min_value=3, max_value=10**6), st.integers(min_value=3, max_value=10**4))
    def test_num_chunks_covers_limit(self, limit, chunk_size):
        total = num_chunks(limit, chunk_size)
        assert chunk_bounds(total - 1, chunk_size).domain_last >= limit - 1
        if total > 1:
            assert chunk_bounds(total - 2, chunk_size).domain_last < limit - 1


class TestTableSizing:
    def test_power_of_two_at_least_four_per_element(self):
        for count in (2, 3, 7, 100, 2**24 - 1):
            size = table_size_for(count)
            assert size & (size - 1) == 0
            assert size >= 4 * count
            assert size < 8 * count
        assert table_size_for(2**27 - 1) == 2**29

    def test_rejects_empty_domain(self):
        with pytest.raises(ValueError):
            table_size_for(0)


class TestCommutativeHash:
    def test_deterministic_and_in_range(self):
        sig = signature_of(75, 15, 38)
        first = commutative_hash(sig, 4096)
        assert first == commutative_hash(sig, 4096)
        assert 0 <= first < 4096

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError):
            commutative_hash(PairSignature(1, 2), 1000)

    @given(st.integers(min_value=1, max_value=2**63), st.integers(min_value=1, max_value=2**63))
    def test_swap_invariant(self, a, b):
        if a != b:
            assert commutative_hash(signature_of(1, a, b), 1 << 20) == commutative_hash(
                signature_of(1, b, a), 1 << 20
            )

    def test_collision_rate_near_uniform(self, rng):
        table_size = 4096
        draws = 200_000
        values = rng.integers(1, 2**62, size=(draws, 4), dtype=np.uint64)
        collisions = 0
        for row in values:
            one = signature_of(1, int(row[0]), int(row[1]) + 2**62)
            two = signature_of(1, int(row[2]), int(row[3]) + 2**62)
            if one != two and commutative_hash(one, table_size) == commutative_hash(two, table_size):
                collisions += 1
        expected = draws / table_size
        assert 0.5 * expected < collisions < 2.0 * expected


@pytest.fixture(scope="module")
def segment_1300(primes_2k):
    return sieve_radicals(Interval(1, 1300), primes_2k)


def fresh_table(segment, **kwargs) -> SignatureTable:
    values = segment.values
    return SignatureTable(segment.interval.start, values[:-1], values[1:], **kwargs)


class TestSignatureTableScalar:
    def test_insert_detects_signature_collision(self, segment_1300):
        table = fresh_table(segment_1300)
        assert table.insert(75) == []
        matches = table.insert(1215)
        assert [(p.m, p.n, p.kind) for p in matches] == [(75, 1215, Kind.FIRST)]

    def test_probe_finds_stored_match(self, segment_1300):
        table = fresh_table(segment_1300)
        table.insert(1215)
        matches = table.probe(75, 15, 38)
        assert [(p.m, p.n, p.kind) for p in matches] == [(75, 1215, Kind.FIRST)]
        assert table.probe(9, radical_oracle(9), radical_oracle(10)) == []

    def test_hash_collision_without_match_occupies_next_slot(self, segment_1300):
        # find two domain elements with equal home slots but different signatures
        table = fresh_table(segment_1300, table_size=64)
        values = segment_1300.values
        homes = {}
        colliding = None
        for n in range(1, 1250):
            sig = signature_of(n, int(values[n - 1]), int(values[n]))
            home = commutative_hash(sig, 64)
            if home in homes and homes[home][1] != sig:
                colliding = (homes[home][0], n, home)
                break
            homes.setdefault(home, (n, sig))
        assert colliding is not None
        first, second, home = colliding
        assert table.insert(first) == []
        assert table.insert(second) == []
        assert int(table.slots[home]) >> 32 == first - table.domain_start + 1
        assert int(table.slots[(home + 1) % 64]) >> 32 == second - table.domain_start + 1

    def test_table_full_raises(self, segment_1300):
        table = fresh_table(segment_1300, table_size=8)
        with pytest.raises(TableFullError):
            for n in range(1, 12):
                table.insert(n)

    def test_load_factor_bound(self, segment_1300):
        table = fresh_table(segment_1300)
        for n in range(1, 1300):
            table.insert(n)
        assert table.occupied == 1299
        assert table.load_factor <= 0.25


class TestBulkMatchesScalar:
    @given(st.integers(min_value=0, max_value=2**32))
    @settings(max_examples=20)
    def test_same_slots_and_matches(self, seed):
        rng = np.random.default_rng(seed)
        count = int(rng.integers(2, 400))
        # radical pairs drawn from a small value pool to force signature repeats
        rad_of = rng.integers(1, 40, count).astype(np.uint64)
        rad_next = rad_of + rng.integers(1, 40, count).astype(np.uint64)
        start = int(rng.integers(count + 1, 2**40))

        bulk = SignatureTable(start, rad_of, rad_next)
        bulk_pairs = bulk.insert_all()
        scalar = SignatureTable(start, rad_of, rad_next)
        scalar_pairs = []
        for t in range(count):
            scalar_pairs.extend(scalar.insert(start + t))

        assert np.array_equal(bulk.slots, scalar.slots)
        assert bulk.occupied == scalar.occupied
        assert bulk_pairs == scalar_pairs

        # probe as an earlier domain does: every probed m sits below the table
        probe_start = start - count
        bulk_found = bulk.probe_all(probe_start, rad_of, rad_next)
        scalar_found = []
        for t in range(count):
            scalar_found.extend(
                scalar.probe(probe_start + t, int(rad_of[t]), int(rad_next[t]))
            )
        assert bulk_found == scalar_found

    def test_insert_all_respects_n_limit(self, segment_1300):
        table = fresh_table(segment_1300)
        table.insert_all(n_limit=100)
        assert table.occupied == 99
        stored = {
            table.domain_start + (int(v) >> 32) - 1 for v in table.slots[table.slots != 0]
        }
        assert stored == set(range(1, 100))


class TestTableInvariants:
    def test_probe_paths_have_no_holes_and_entries_stay_in_domain(self, rng):
        count = 3000
        rad_of = rng.integers(1, 2**50, count).astype(np.uint64)
        rad_next = rad_of + rng.integers(1, 2**50, count).astype(np.uint64)
        table = SignatureTable(500, rad_of, rad_next)
        table.insert_all()
        size = table.table_size
        for idx in np.flatnonzero(table.slots):
            packed = int(table.slots[idx])
            home = packed & 0xFFFFFFFF
            offset = (packed >> 32) - 1
            assert 0 <= offset < count
            walk = home
            while walk != idx:
                assert table.slots[walk] != 0
                walk = (walk + 1) % size

    def test_self_lookup_after_insert(self, rng):
        count = 5000
        rad_of = rng.integers(1, 2**50, count).astype(np.uint64)
        rad_next = rad_of + rng.integers(1, 2**50, count).astype(np.uint64)
        table = SignatureTable(1, rad_of, rad_next)
        table.insert_all()
        found, _, m_arr, n_arr, _, _ = table._probe_raw(1, rad_of, rad_next)
        self_hits = {(int(m_arr[t]), int(n_arr[t])) for t in range(found)}
        assert {(n, n) for n in range(1, count + 1)} <= self_hits


class TestSearchChunk:
    def test_first_chunk_catches_exceptional_pair(self, primes_2k):
        pairs = search_chunk(0, 1300, primes_2k)
        assert (75, 1215) in [(p.m, p.n) for p in pairs]

    def test_intra_chunk_equals_brute_force(self, primes_2k):
        pairs = search_chunk(0, 10001, primes_up_to(101))
        assert pair_keys(pairs) == pair_keys(brute_force_pairs(10001))

    def test_second_chunk_equals_brute_force_window(self):
        primes = primes_up_to(math.isqrt(chunk_bounds(1, 1000).last))
        pairs = search_chunk(1, 1000, primes)
        window = chunk_bounds(1, 1000)
        expected = [
            p
            for p in brute_force_pairs(window.domain_last + 1)
            if window.domain_first <= p.n <= window.domain_last
        ]
        assert pair_keys(pairs) == pair_keys(expected)
        assert (75, 1215) in [(p.m, p.n) for p in pairs]

    def test_quiet_window_is_empty(self, primes_2k):
        assert search_chunk(3, 100, primes_2k) == []

    def test_output_sorted_by_n_then_m(self):
        primes = primes_up_to(300)
        pairs = search_chunk(1, 40000, primes)
        keys = [(p.n, p.m) for p in pairs]
        assert keys == sorted(keys)

    def test_cross_chunk_probe_equals_brute_force(self):
        # all pairs with m in the first domain and n in the second
        chunk_size = 10**4
        first = chunk_bounds(0, chunk_size)
        second = chunk_bounds(1, chunk_size)
        primes = primes_up_to(math.isqrt(second.last))
        seg = sieve_radicals(Interval(second.first, second.size), primes)
        table = SignatureTable(second.first, seg.values[:-1], seg.values[1:])
        table.insert_all()
        seg0 = sieve_radicals(Interval(first.first, first.size), primes)
        found = table.probe_all(first.first, seg0.values[:-1], seg0.values[1:])
        expected = [
            p
            for p in brute_force_pairs(second.domain_last + 1)
            if p.m <= first.domain_last and second.domain_first <= p.n
        ]
        assert pair_keys(found) == pair_keys(expected)


class TestFullChunkedRun:
    def test_matches_sort_search_at_two_chunk_sizes(self):
        limit = 1 << 20
        expected = pair_keys(find_pairs_sorted(limit))
        one = list(run_full_chunked(limit, 1 << 12))
        two = list(run_full_chunked(limit, 1 << 16))
        assert pair_keys(one) == expected
        assert pair_keys(two) == expected

    def test_no_duplicates_and_radicals_verify(self):
        pairs = list(run_full_chunked(1 << 20, 1 << 14))
        keys = [(int(p.kind), p.m, p.n) for p in pairs]
        assert len(set(keys)) == len(keys)
        for p in pairs:
            assert p.rad_m == radical_oracle(p.m)
            assert p.rad_m_plus_1 == radical_oracle(p.m + 1)

    def test_resume_from_middle_is_a_suffix(self):
        full = list(run_full_chunked(5000, 300))
        resume_at = 8
        suffix = list(run_full_chunked(5000, 300, resume_from=resume_at))
        cut = chunk_bounds(resume_at, 300).domain_first
        assert suffix == [p for p in full if p.n >= cut]

    def test_resume_past_end_yields_nothing(self):
        total = num_chunks(5000, 300)
        assert list(run_full_chunked(5000, 300, resume_from=total)) == []

    def test_thread_count_does_not_change_output(self):
        limit = 200_000
        serial = list(run_full_chunked(limit, 1 << 12, threads=1))
        threaded = list(run_full_chunked(limit, 1 << 12, threads=2))
        assert serial == threaded

    def test_chunk_callback_fires_after_chunk_pairs(self):
        events = []
        gen = run_full_chunked(
            80_000, 1 << 12, on_chunk_done=lambda i: events.append(("done", i))
        )
        for pair in gen:
            events.append(("pair", pair.n))
        done = [e for e in events if e[0] == "done"]
        assert done == [("done", i) for i in range(num_chunks(80_000, 1 << 12))]
        for position, event in enumerate(events):
            if event[0] == "pair":
                boundary = next(i for kind, i in events[position:] if kind == "done")
                assert event[1] <= chunk_bounds(boundary, 1 << 12).domain_last

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            list(run_full_chunked(2, 300))
        with pytest.raises(ValueError):
            list(run_full_chunked(5000, 2))

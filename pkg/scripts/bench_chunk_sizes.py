#!/usr/bin/env python3
"""Measure the time-space tradeoff of the chunked search.

Runs the same search bound across a range of chunk sizes and prints wall
time against table memory.  Quadratic total work in 1/chunk_size means the
largest chunk that fits in RAM wins; this script puts numbers on that.

Example:
    python scripts/bench_chunk_sizes.py --limit $((2**22)) --shifts 12 14 16 18
"""
import argparse
import os
import time

from benelux_pairs import num_chunks, run_full_chunked, table_size_for


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--limit", type=int, default=1 << 22)
    parser.add_argument("--shifts", type=int, nargs="+", default=[12, 14, 16, 18])
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    args = parser.parse_args()

    print(f"limit {args.limit}, {args.threads} threads")
    print(f"{'chunk size':>12} {'chunks':>8} {'table MiB':>10} {'seconds':>9} {'pairs':>6}")
    reference = None
    for shift in args.shifts:
        chunk_size = 1 << shift
        started = time.time()
        pairs = list(run_full_chunked(args.limit, chunk_size, threads=args.threads))
        elapsed = time.time() - started
        table_mib = table_size_for(chunk_size - 1) * 8 / 2**20
        print(
            f"{chunk_size:>12} {num_chunks(args.limit, chunk_size):>8} "
            f"{table_mib:>10.1f} {elapsed:>9.2f} {len(pairs):>6}"
        )
        keys = {(int(p.kind), p.m, p.n) for p in pairs}
        if reference is None:
            reference = keys
        elif keys != reference:
            raise SystemExit(f"chunk size {chunk_size} changed the result set")
    print("all chunk sizes agree on the result set")


if __name__ == "__main__":
    main()

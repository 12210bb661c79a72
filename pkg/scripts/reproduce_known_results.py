#!/usr/bin/env python3
"""Reproduce the known Benelux pairs below a bound and diff against the oracle.

Runs the chunked search and compares its output with the family-plus-
exceptional list, printing one row per expected pair and a final verdict.

Example:
    python scripts/reproduce_known_results.py --limit $((2**28)) --chunk-size $((2**24))
"""
import argparse
import os
import sys
import time

from benelux_pairs import Kind, expected_pairs_up_to, run_full_chunked


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--limit", type=int, default=1 << 28)
    parser.add_argument("--chunk-size", type=int, default=1 << 24)
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    args = parser.parse_args()

    known = expected_pairs_up_to(args.limit)
    expected = {(int(p.kind), p.m, p.n) for p in known.all_pairs()}

    started = time.time()
    found = {
        (int(p.kind), p.m, p.n)
        for p in run_full_chunked(args.limit, args.chunk_size, threads=args.threads)
    }
    elapsed = time.time() - started

    print(f"searched m < n < {args.limit} in {elapsed:.1f}s "
          f"(chunk size {args.chunk_size}, {args.threads} threads)")
    print(f"{'kind':>6} {'m':>12} {'n':>16} status")
    for key in sorted(expected | found, key=lambda k: (k[2], k[1])):
        kind, m, n = key
        label = "first" if kind == Kind.FIRST else "second"
        if key in expected and key in found:
            status = "ok"
        elif key in found:
            status = "UNEXPECTED (new solution?)"
        else:
            status = "MISSING"
        print(f"{label:>6} {m:>12} {n:>16} {status}")

    if found == expected:
        print(f"verdict: all {len(expected)} known pairs reproduced, nothing else found")
        return 0
    print("verdict: MISMATCH against the known solution list")
    return 1


if __name__ == "__main__":
    sys.exit(main())

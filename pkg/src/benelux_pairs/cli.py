"""Command-line front end: run searches, write results, checkpoint, self-test."""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .bruteforce import brute_force_pairs
from .chunked import (
    DEFAULT_CHUNK_SIZE,
    TableFullError,
    num_chunks,
    run_full_chunked,
)
from .families import expected_pairs_up_to
from .primes import primes_up_to
from .radical import Interval, radicals_by_trial_division, sieve_radicals
from .signatures import BeneluxPair
from .sort_search import MemoryBudgetExceeded, find_pairs_sorted

CSV_HEADER = "kind,m,n,rad_m,rad_m1"
CHECKPOINT_MAGIC = "benelux-checkpoint"
# Above this the record arrays of the sort search stop being a sane default.
SORT_DEFAULT_CEILING = 1 << 28

Row = tuple[int, int, int, int, int]  # kind, m, n, rad_m, rad_m1


class CheckpointMismatch(RuntimeError):
    """Checkpoint on disk does not belong to the requested run."""


@dataclass
class RunConfig:
    limit: int
    algorithm: str
    chunk_size: int = DEFAULT_CHUNK_SIZE
    threads: int = 1
    output_path: str = "benelux_pairs.csv"
    format: str = "csv"
    checkpoint_path: str | None = None
    resume: bool = False
    abort_after_chunk: int | None = None  # test instrumentation: hard-exit after this chunk

    def validate(self) -> None:
        if self.limit < 3:
            raise ValueError(f"limit must be >= 3, got {self.limit}")
        if self.algorithm not in ("sort", "chunked"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.algorithm == "chunked" and self.chunk_size < 3:
            raise ValueError(f"chunk size must be >= 3, got {self.chunk_size}")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.format not in ("csv", "jsonl"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.resume and not self.checkpoint_path:
            raise ValueError("--resume requires --checkpoint")
        if self.resume and self.algorithm != "chunked":
            raise ValueError("--resume applies to the chunked algorithm only")


@dataclass(frozen=True)
class Checkpoint:
    version: int
    limit: int
    chunk_size: int
    next_chunk: int

    def render(self) -> str:
        return (
            f"{CHECKPOINT_MAGIC} v{self.version}\n"
            f"limit={self.limit}\n"
            f"chunk_size={self.chunk_size}\n"
            f"next_chunk={self.next_chunk}\n"
        )

    @classmethod
    def parse(cls, text: str) -> "Checkpoint":
        lines = text.split("\n")
        if len(lines) != 5 or lines[4] != "":
            raise ValueError("malformed checkpoint")
        if lines[0] != f"{CHECKPOINT_MAGIC} v1":
            raise ValueError(f"unsupported checkpoint header {lines[0]!r}")
        fields = {}
        for line, key in zip(lines[1:4], ("limit", "chunk_size", "next_chunk")):
            name, _, value = line.partition("=")
            if name != key or not value.isdigit():
                raise ValueError(f"malformed checkpoint line {line!r}")
            fields[key] = int(value)
        return cls(1, fields["limit"], fields["chunk_size"], fields["next_chunk"])


def write_checkpoint(path: str, checkpoint: Checkpoint) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w") as handle:
        handle.write(checkpoint.render())
    os.replace(tmp, path)  # atomic on the same filesystem


def read_checkpoint(path: str) -> Checkpoint:
    with open(path) as handle:
        return Checkpoint.parse(handle.read())


def format_row(pair: BeneluxPair, fmt: str) -> str:
    if fmt == "csv":
        return f"{int(pair.kind)},{pair.m},{pair.n},{pair.rad_m},{pair.rad_m_plus_1}\n"
    return (
        json.dumps(
            {
                "kind": int(pair.kind),
                "m": pair.m,
                "n": pair.n,
                "rad_m": pair.rad_m,
                "rad_m1": pair.rad_m_plus_1,
            }
        )
        + "\n"
    )


def read_rows(path: str, fmt: str) -> list[Row]:
    """Rows of an output file; a malformed tail (killed mid-write) is dropped."""
    rows: list[Row] = []
    with open(path) as handle:
        lines = handle.read().split("\n")
    if fmt == "csv":
        if not lines or lines[0] != CSV_HEADER:
            return rows
        lines = lines[1:]
    for line in lines:
        if not line:
            continue
        try:
            if fmt == "csv":
                kind, m, n, rad_m, rad_m1 = (int(part) for part in line.split(","))
            else:
                obj = json.loads(line)
                kind, m, n, rad_m, rad_m1 = (
                    obj["kind"], obj["m"], obj["n"], obj["rad_m"], obj["rad_m1"],
                )
        except (ValueError, KeyError, json.JSONDecodeError):
            break
        rows.append((kind, m, n, rad_m, rad_m1))
    return rows


def normalized_csv(rows: Iterable[Row]) -> str:
    """Canonical CSV rendering (rows sorted by m, n) for cross-run comparison."""
    body = "".join(
        f"{kind},{m},{n},{rad_m},{rad_m1}\n"
        for kind, m, n, rad_m, rad_m1 in sorted(rows, key=lambda r: (r[1], r[2], r[0]))
    )
    return CSV_HEADER + "\n" + body


def normalized_output(path: str, fmt: str) -> str:
    return normalized_csv(read_rows(path, fmt))


def _write_header(handle, fmt: str) -> None:
    if fmt == "csv":
        handle.write(CSV_HEADER + "\n")


def _prune_output_for_resume(path: str, fmt: str, max_n: int) -> None:
    """Drop rows past the last completed domain so redone chunks append cleanly."""
    rows = read_rows(path, fmt) if os.path.exists(path) else []
    tmp = path + ".tmp"
    with open(tmp, "w") as handle:
        _write_header(handle, fmt)
        for row in rows:
            if row[2] <= max_n:
                handle.write(
                    f"{row[0]},{row[1]},{row[2]},{row[3]},{row[4]}\n"
                    if fmt == "csv"
                    else json.dumps(
                        {"kind": row[0], "m": row[1], "n": row[2], "rad_m": row[3], "rad_m1": row[4]}
                    )
                    + "\n"
                )
    os.replace(tmp, path)


def _run_sort(config: RunConfig) -> None:
    pairs = find_pairs_sorted(config.limit)
    with open(config.output_path, "w") as out:
        _write_header(out, config.format)
        for pair in pairs:
            out.write(format_row(pair, config.format))


def _run_chunked(config: RunConfig) -> None:
    start_chunk = 0
    if config.resume:
        checkpoint = read_checkpoint(config.checkpoint_path)
        if checkpoint.limit != config.limit or checkpoint.chunk_size != config.chunk_size:
            raise CheckpointMismatch(
                f"checkpoint is for limit={checkpoint.limit} chunk_size={checkpoint.chunk_size}, "
                f"run asked for limit={config.limit} chunk_size={config.chunk_size}"
            )
        start_chunk = checkpoint.next_chunk
        _prune_output_for_resume(
            config.output_path, config.format, start_chunk * (config.chunk_size - 1)
        )
        out = open(config.output_path, "a")
    else:
        out = open(config.output_path, "w")
        _write_header(out, config.format)
        if config.checkpoint_path:
            write_checkpoint(
                config.checkpoint_path, Checkpoint(1, config.limit, config.chunk_size, 0)
            )

    total = num_chunks(config.limit, config.chunk_size)
    progress = sys.stderr.isatty()

    def on_chunk_done(index: int) -> None:
        out.flush()
        if config.checkpoint_path:
            write_checkpoint(
                config.checkpoint_path,
                Checkpoint(1, config.limit, config.chunk_size, index + 1),
            )
        if progress:
            print(f"chunk {index + 1}/{total} done", file=sys.stderr)
        if config.abort_after_chunk is not None and index == config.abort_after_chunk:
            out.flush()
            os._exit(3)

    with out:
        for pair in run_full_chunked(
            config.limit,
            config.chunk_size,
            resume_from=start_chunk,
            threads=config.threads,
            on_chunk_done=on_chunk_done,
        ):
            out.write(format_row(pair, config.format))


def run(config: RunConfig) -> int:
    """Execute one search run; 0 on success, 2 on bad config, 1 on failure."""
    try:
        config.validate()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if config.algorithm == "sort":
            _run_sort(config)
        else:
            _run_chunked(config)
    except MemoryError:
        print("error: out of memory; retry with --algo chunked", file=sys.stderr)
        return 1
    except (MemoryBudgetExceeded, TableFullError, CheckpointMismatch, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def run_self_test_checks() -> list[CheckResult]:
    """The built-in consistency suite; each check pits two independent routes."""
    results: list[CheckResult] = []

    # Sieve against per-integer trial division over [1, 10^6].
    interval = Interval(1, 1_000_000)
    sieved = sieve_radicals(interval, primes_up_to(math.isqrt(interval.last))).values
    reference = radicals_by_trial_division(interval)
    mismatches = np.flatnonzero(sieved != reference)
    if mismatches.size:
        first = int(mismatches[0]) + interval.start
        results.append(
            CheckResult(
                "sieve-vs-trial-division",
                False,
                f"{mismatches.size} mismatches, first at n={first}",
            )
        )
    else:
        results.append(CheckResult("sieve-vs-trial-division", True, "10^6 values equal"))

    # Sort search against the chunked search at two chunk sizes.
    limit = 1_000_000
    sorted_keys = {(int(p.kind), p.m, p.n) for p in find_pairs_sorted(limit)}
    for chunk_size in (1 << 13, 1 << 16):
        chunked_keys = {
            (int(p.kind), p.m, p.n) for p in run_full_chunked(limit, chunk_size)
        }
        ok = chunked_keys == sorted_keys
        detail = (
            f"{len(sorted_keys)} pairs at chunk size {chunk_size}"
            if ok
            else f"chunk size {chunk_size}: sort-only {sorted_keys - chunked_keys}, "
            f"chunked-only {chunked_keys - sorted_keys}"
        )
        results.append(CheckResult(f"sort-vs-chunked-{chunk_size}", ok, detail))

    # Full run against the known families and exceptional pairs.
    expected = expected_pairs_up_to(limit)
    expected_keys = {(int(p.kind), p.m, p.n) for p in expected.all_pairs()}
    ok = sorted_keys == expected_keys
    results.append(
        CheckResult(
            "known-solutions",
            ok,
            f"{len(expected_keys)} expected pairs below {limit}"
            if ok
            else f"missing {expected_keys - sorted_keys}, extra {sorted_keys - expected_keys}",
        )
    )

    # Both fast algorithms against the quadratic reference search.
    brute_limit = 20_000
    brute_keys = {(int(p.kind), p.m, p.n) for p in brute_force_pairs(brute_limit)}
    fast_keys = {(int(p.kind), p.m, p.n) for p in find_pairs_sorted(brute_limit)}
    chunk_keys = {(int(p.kind), p.m, p.n) for p in run_full_chunked(brute_limit, 4096)}
    ok = brute_keys == fast_keys == chunk_keys
    results.append(
        CheckResult(
            "brute-force-equivalence",
            ok,
            f"{len(brute_keys)} pairs below {brute_limit}"
            if ok
            else f"brute {sorted(brute_keys)}, sort {sorted(fast_keys)}, chunked {sorted(chunk_keys)}",
        )
    )
    return results


def self_test() -> int:
    """Run all consistency checks, print one line per check; 0 iff all pass."""
    results = run_self_test_checks()
    failed = 0
    for result in results:
        status = "ok" if result.passed else "FAIL"
        print(f"[{status}] {result.name}: {result.detail}")
        failed += not result.passed
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="benelux-pairs",
        description="Exhaustively find all Benelux pairs of first and second kind below a bound.",
    )
    parser.add_argument("--limit", type=int, help="report every pair with m < n < LIMIT")
    parser.add_argument(
        "--algo",
        choices=("sort", "chunked"),
        help="search algorithm (default: sort below 2^28, chunked above)",
    )
    parser.add_argument(
        "--chunk-size",
        type=int,
        default=DEFAULT_CHUNK_SIZE,
        help=f"chunked algorithm chunk size (default {DEFAULT_CHUNK_SIZE})",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=os.cpu_count() or 1,
        help="worker threads for the chunked probe phase (default: all cores)",
    )
    parser.add_argument("--output", help="result file path")
    parser.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    parser.add_argument("--checkpoint", help="progress file, written after each chunk")
    parser.add_argument(
        "--resume", action="store_true", help="continue from the checkpoint file"
    )
    parser.add_argument(
        "--self-test", action="store_true", help="run the consistency suite and exit"
    )
    parser.add_argument("--abort-after-chunk", type=int, help=argparse.SUPPRESS)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.self_test:
        return self_test()
    if args.limit is None:
        print("error: --limit is required", file=sys.stderr)
        return 2
    if args.output is None:
        print("error: --output is required", file=sys.stderr)
        return 2
    algorithm = args.algo or ("sort" if args.limit < SORT_DEFAULT_CEILING else "chunked")
    config = RunConfig(
        limit=args.limit,
        algorithm=algorithm,
        chunk_size=args.chunk_size,
        threads=args.threads,
        output_path=args.output,
        format=args.format,
        checkpoint_path=args.checkpoint,
        resume=args.resume,
        abort_after_chunk=args.abort_after_chunk,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())

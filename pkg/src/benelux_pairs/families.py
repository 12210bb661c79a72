"""Known solution families and the exhaustively verified completeness bound.

Both kinds of Benelux pair have one infinite parametric family (OEIS
A343101 and A088966 track the sequences) plus a single known exceptional
pair each.  Below COMPLETENESS_BOUND these are provably all solutions,
which makes this module the oracle every full search run is checked
against.
"""
from __future__ import annotations

from dataclasses import dataclass

from .radical import radical_oracle
from .signatures import BeneluxPair, Kind, classify

# Largest limit for which the family-plus-exceptional list is known complete.
COMPLETENESS_BOUND = 1_400_000_000_000

_MAX_EXPONENT = 31  # 2**(2k) must stay inside 64 bits


def family_first_kind(k: int) -> tuple[int, int]:
    """(m, n) = (2**k - 2, 2**(2k) - 2**(k+1)) for k >= 2.

    Here n + 1 = (m + 1)**2 and n = m * (m + 2) with m + 2 = 2**(k+1), so
    m, n and m+1, n+1 share prime factors straight across.
    """
    if k < 2:
        raise ValueError("first-kind family starts at k = 2")
    if k > _MAX_EXPONENT:
        raise OverflowError(f"k = {k} would overflow 64 bits")
    return 2**k - 2, 2 ** (2 * k) - 2 ** (k + 1)


def family_second_kind(k: int) -> tuple[int, int]:
    """(m, n) = (2**k + 1, 2**(2k) + 2**(k+1)) for k >= 0.

    Here n + 1 = m**2 and n = (m - 1) * (m + 1), so m pairs with n+1 and
    m+1 pairs with n.
    """
    if k < 0:
        raise ValueError("second-kind family starts at k = 0")
    if k > _MAX_EXPONENT:
        raise OverflowError(f"k = {k} would overflow 64 bits")
    return 2**k + 1, 2 ** (2 * k) + 2 ** (k + 1)


def _verified_pair(m: int, n: int, expected: Kind) -> BeneluxPair:
    pair = classify(
        m, n, radical_oracle(m), radical_oracle(m + 1), radical_oracle(n), radical_oracle(n + 1)
    )
    if pair is None or pair.kind is not expected:
        raise AssertionError(f"({m}, {n}) failed verification as kind {expected}")
    return pair


def exceptional_pairs() -> list[BeneluxPair]:
    """The two known solutions outside the parametric families."""
    return [
        _verified_pair(75, 1215, Kind.FIRST),
        _verified_pair(35, 4374, Kind.SECOND),
    ]


@dataclass(frozen=True)
class KnownSolutionSet:
    """Complete expected output of a search below `limit`."""

    limit: int
    first_kind: tuple[BeneluxPair, ...]
    second_kind: tuple[BeneluxPair, ...]

    def all_pairs(self) -> list[BeneluxPair]:
        return sorted(self.first_kind + self.second_kind, key=lambda p: p.key)


def expected_pairs_up_to(limit: int) -> KnownSolutionSet:
    """Every known pair with n < limit, per kind, sorted by n.

    Refuses limits beyond COMPLETENESS_BOUND: past it the list would still
    be correct but could no longer claim completeness.
    """
    if limit > COMPLETENESS_BOUND:
        raise ValueError(
            f"completeness unknown beyond {COMPLETENESS_BOUND}; got limit {limit}"
        )
    first = []
    for k in range(2, _MAX_EXPONENT + 1):
        m, n = family_first_kind(k)
        if n >= limit:
            break
        first.append(_verified_pair(m, n, Kind.FIRST))
    second = []
    for k in range(0, _MAX_EXPONENT + 1):
        m, n = family_second_kind(k)
        if n >= limit:
            break
        second.append(_verified_pair(m, n, Kind.SECOND))
    for exceptional in exceptional_pairs():
        if exceptional.n < limit:
            if exceptional.kind is Kind.FIRST:
                first.append(exceptional)
            else:
                second.append(exceptional)
    first.sort(key=lambda p: p.n)
    second.sort(key=lambda p: p.n)
    return KnownSolutionSet(limit, tuple(first), tuple(second))

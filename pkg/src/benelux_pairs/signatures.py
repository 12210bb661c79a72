"""Radical-pair signatures, their order, and pair classification.

The signature of n is the unordered set {rad(n), rad(n+1)}, stored
canonically as (lo, hi).  Two integers with equal signatures form a Benelux
pair: first kind when the radicals match straight across, second kind when
they match crosswise.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum


class Kind(IntEnum):
    FIRST = 1
    SECOND = 2


@dataclass(frozen=True, order=True)
class PairSignature:
    """Canonical form of {rad(n), rad(n+1)}; always lo < hi.

    rad(n) and rad(n+1) are coprime and never equal, so canonicalizing to
    (min, max) loses nothing and makes the order relation plain
    lexicographic comparison.
    """

    lo: int
    hi: int


def signature_of(n: int, rad_n: int, rad_n1: int) -> PairSignature:
    """Signature of n from its two radicals, in either order."""
    if rad_n < rad_n1:
        return PairSignature(rad_n, rad_n1)
    return PairSignature(rad_n1, rad_n)


def compare(a: PairSignature, b: PairSignature) -> int:
    """-1, 0 or 1 under the lexicographic (lo, hi) total order."""
    if a.lo != b.lo:
        return -1 if a.lo < b.lo else 1
    if a.hi != b.hi:
        return -1 if a.hi < b.hi else 1
    return 0


@dataclass(frozen=True)
class BeneluxPair:
    """A found solution m < n with the radicals of m and m+1."""

    m: int
    n: int
    kind: Kind
    rad_m: int
    rad_m_plus_1: int

    def __post_init__(self) -> None:
        if not 0 < self.m < self.n:
            raise ValueError(f"need 0 < m < n, got ({self.m}, {self.n})")

    @property
    def key(self) -> tuple[int, int]:
        return (self.m, self.n)


def classify(m: int, n: int, rad_m: int, rad_m1: int, rad_n: int, rad_n1: int) -> BeneluxPair | None:
    """BeneluxPair of the matching kind, or None when the radical sets differ.

    First kind: rad(m) = rad(n) and rad(m+1) = rad(n+1).
    Second kind: rad(m) = rad(n+1) and rad(m+1) = rad(n).
    Equal signatures always satisfy exactly one of the two, since the two
    elements of a signature are distinct.
    """
    if m >= n:
        raise ValueError("classify requires m < n")
    if rad_m == rad_n and rad_m1 == rad_n1:
        return BeneluxPair(m, n, Kind.FIRST, rad_m, rad_m1)
    if rad_m == rad_n1 and rad_m1 == rad_n:
        return BeneluxPair(m, n, Kind.SECOND, rad_m, rad_m1)
    return None

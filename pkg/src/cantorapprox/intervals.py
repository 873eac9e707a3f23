"""Closed rational subintervals of [0,1] and finite disjoint unions of them.

The union machinery works on plain (lo, hi) Fraction pairs for speed;
`RatInterval` is the validated value used at API boundaries.  Single
points carry no mass for any of the measures here, so merging intervals
that merely touch is always measure-safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InputError

Pair = tuple[Fraction, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class RatInterval:
    """Closed interval [lo, hi] with 0 <= lo <= hi <= 1."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not (_ZERO <= self.lo <= self.hi <= _ONE):
            raise InputError(f"invalid interval [{self.lo}, {self.hi}]")

    @staticmethod
    def make(lo, hi) -> "RatInterval":
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise InputError("interval with lo > hi")
        return RatInterval(max(lo, _ZERO), min(hi, _ONE))

    @staticmethod
    def clip(lo, hi) -> Optional["RatInterval"]:
        """[lo, hi] intersected with [0,1]; None if the result is empty."""
        lo, hi = max(Fraction(lo), _ZERO), min(Fraction(hi), _ONE)
        if lo > hi:
            return None
        return RatInterval(lo, hi)

    @staticmethod
    def unit() -> "RatInterval":
        return RatInterval(_ZERO, _ONE)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def radius(self) -> Fraction:
        return self.length / 2

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def pair(self) -> Pair:
        return (self.lo, self.hi)

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def intersect(self, other: "RatInterval") -> Optional["RatInterval"]:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            return None
        return RatInterval(lo, hi)


def merge_pairs(pairs: Iterable[Pair]) -> list[Pair]:
    """Sorted disjoint union of closed intervals (touching intervals merge)."""
    items = sorted(p for p in pairs if p[0] <= p[1])
    merged: list[Pair] = []
    for lo, hi in items:
        if merged and lo <= merged[-1][1]:
            prev_lo, prev_hi = merged[-1]
            merged[-1] = (prev_lo, max(prev_hi, hi))
        else:
            merged.append((lo, hi))
    return merged


def intersect_unions(a: Sequence[Pair], b: Sequence[Pair]) -> list[Pair]:
    """Pairwise intersection of two sorted disjoint unions."""
    out: list[Pair] = []
    i = j = 0
    while i < len(a) and j < len(b):
        lo = max(a[i][0], b[j][0])
        hi = min(a[i][1], b[j][1])
        if lo <= hi:
            out.append((lo, hi))
        if a[i][1] < b[j][1]:
            i += 1
        else:
            j += 1
    return out


def clip_union(pairs: Sequence[Pair], window: Pair) -> list[Pair]:
    return intersect_unions(pairs, [window])


def total_length(pairs: Sequence[Pair]) -> Fraction:
    return sum((hi - lo for lo, hi in pairs), _ZERO)

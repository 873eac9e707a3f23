"""Missing-digit sets K in base b and their exact self-similar measure.

The measure is normalized so the whole set has mass 1; every level-n
basic interval (the closed interval over an allowed n-digit prefix)
then carries mass (#digits)^-n.  `cantor_cdf` evaluates the cumulative
distribution exactly for any rational, walking the base-b digit stream
and closing eventual cycles with a geometric-series identity, so the
measure of any rational interval is an exact Fraction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Union

from .enclosures import LogRatioSource, RealEnclosure
from .errors import InputError, ResourceBudgetError
from .intervals import Pair, RatInterval, merge_pairs, total_length
from . import intervals

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_ENUM_BUDGET = 1 << 22


def _mult_dependent_exponent(count: int, base: int) -> Optional[Fraction]:
    """log(count)/log(base) as an exact fraction, when one exists.

    Two integers >= 2 have a rational log-ratio exactly when both are
    powers of a common integer g.
    """
    for g in range(2, min(count, base) + 1):
        i = j = 0
        x = 1
        while x < base:
            x *= g
            i += 1
        if x != base:
            continue
        x = 1
        while x < count:
            x *= g
            j += 1
        if x == count:
            return Fraction(j, i)
    return None


@dataclass(frozen=True)
class MissingDigitSet:
    """Reals in [0,1] admitting a base-b expansion using only the given digits."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if self.base < 3:
            raise InputError("base must be >= 3")
        ds = tuple(sorted(set(self.digits)))
        object.__setattr__(self, "digits", ds)
        if not all(0 <= d < self.base for d in ds):
            raise InputError("digits must lie in [0, base-1]")
        if not 2 <= len(ds) <= self.base - 1:
            raise InputError("need a proper digit set with at least 2 digits")

    @staticmethod
    def middle_thirds() -> "MissingDigitSet":
        return MissingDigitSet(3, (0, 2))

    @property
    def digit_count(self) -> int:
        return len(self.digits)

    @property
    def non_adjacent(self) -> bool:
        return all(d + 1 not in self.digits for d in self.digits)

    @property
    def exponent_fraction(self) -> Optional[Fraction]:
        """Exact value of log(#digits)/log(base) when it is rational."""
        return _mult_dependent_exponent(self.digit_count, self.base)

    def exponent_enclosure(self) -> RealEnclosure:
        """The similarity dimension log(#digits)/log(base)."""
        exact = self.exponent_fraction
        if exact is not None:
            return RealEnclosure.exact(exact)
        return RealEnclosure.from_source(
            LogRatioSource(Fraction(self.digit_count), Fraction(self.base)))

    def digit_mass_pow(self, k: int) -> Fraction:
        """base**(k * exponent) collapses exactly to digit_count**k."""
        return Fraction(self.digit_count) ** k

    def digits_of(self, p: int, n: int) -> list[int]:
        """The n base-b digits of the integer p < base**n, most significant first."""
        out = []
        for _ in range(n):
            p, d = divmod(p, self.base)
            out.append(d)
        return out[::-1]

    def prefix_allowed(self, p: int, n: int) -> bool:
        for _ in range(n):
            p, d = divmod(p, self.base)
            if d not in self._digitset:
                return False
        return True

    @property
    def _digitset(self) -> frozenset:
        return frozenset(self.digits)

    def allowed_prefixes(self, level: int, budget: int = DEFAULT_ENUM_BUDGET) -> list[int]:
        """Sorted integer prefixes of the level-n basic intervals."""
        if self.digit_count ** level > budget:
            raise ResourceBudgetError(
                f"{self.digit_count}^{level} basic intervals exceed budget {budget}")
        out = []
        for combo in itertools.product(self.digits, repeat=level):
            v = 0
            for d in combo:
                v = v * self.base + d
            out.append(v)
        out.sort()
        return out


@dataclass(frozen=True)
class MembershipResult:
    kind: str  # "in" | "out" | "undetermined"
    depth: Optional[int] = None

    @property
    def is_in(self) -> bool:
        return self.kind == "in"

    @property
    def is_out(self) -> bool:
        return self.kind == "out"


IN = MembershipResult("in")
OUT = MembershipResult("out")


def _badic_digit_length(q: int, b: int) -> Optional[int]:
    """Smallest n with q | b^n, or None when no power of b works."""
    n = 0
    while q > 1:
        g = gcd(q, b)
        if g == 1:
            return None
        q //= g
        n += 1
    return n


def _rational_in_set(dset: MissingDigitSet, x: Fraction) -> bool:
    """Exact membership for any rational in [0,1] via its digit stream(s).

    A b-adic rational has two expansions (terminating and repeating
    base-1); it belongs to the set when either stays inside the digit
    alphabet.  Other rationals have one eventually periodic expansion.
    """
    b, allowed = dset.base, dset._digitset
    if x == 0:
        return 0 in allowed
    if x == 1:
        return b - 1 in allowed
    n = _badic_digit_length(x.denominator, b)
    if n is not None:
        digits = dset.digits_of(x.numerator * (b ** n // x.denominator), n)
        term_ok = all(d in allowed for d in digits) and 0 in allowed
        alt_ok = (all(d in allowed for d in digits[:-1])
                  and (digits[-1] - 1) in allowed and (b - 1) in allowed)
        return term_ok or alt_ok
    rem = x
    seen = set()
    while rem not in seen:
        seen.add(rem)
        rem *= b
        d = rem.__floor__()
        rem -= d
        if d not in allowed:
            return False
    return True  # full cycle scanned without a bad digit


def _enclosure_status(dset: MissingDigitSet, lo: Fraction, hi: Fraction,
                      depth: int, cell_budget: int = 1 << 16) -> MembershipResult:
    """Shared verdict of all points of [lo, hi] at the given level, if any.

    Width-zero enclosures never reach here (they take the exact rational
    path), so a point failing to be covered always shows up as a
    positive-length overlap with a removed cell.
    """
    scale = 1
    for level in range(1, depth + 1):
        scale *= dset.base
        k_start = (lo * scale).__floor__()
        if lo * scale == k_start and k_start > 0:
            k_start -= 1  # cell touching lo from the left
        k_end = min((hi * scale).__floor__(), scale - 1)
        if k_end - k_start + 1 > cell_budget:
            return MembershipResult("undetermined", level)
        any_allowed = False
        interior_bad = False
        for k in range(k_start, k_end + 1):
            if dset.prefix_allowed(k, level):
                any_allowed = True
            elif max(lo, Fraction(k, scale)) < min(hi, Fraction(k + 1, scale)):
                interior_bad = True
        if not any_allowed:
            return OUT
        if interior_bad:
            return MembershipResult("undetermined", level)
    return IN


def membership(x, dset: MissingDigitSet, depth: int = 1) -> MembershipResult:
    """Verdict for a rational (exact), enclosure, or sparse digit stream."""
    if depth < 1:
        raise InputError("depth must be >= 1")
    if hasattr(x, "digit_verdict"):  # sparse digit numbers decide symbolically
        return x.digit_verdict(dset, depth)
    if isinstance(x, RealEnclosure):
        if x.is_exact:
            x = x.lo
        else:
            if not (_ZERO <= x.lo and x.hi <= _ONE):
                return OUT if (x.hi < 0 or x.lo > 1) else MembershipResult("undetermined", 0)
            return _enclosure_status(dset, x.lo, x.hi, depth)
    x = Fraction(x)
    if x < 0 or x > 1:
        return OUT
    return IN if _rational_in_set(dset, x) else OUT


def enumerate_centers(dset: MissingDigitSet, n: int, coprime: bool,
                      budget: int = DEFAULT_ENUM_BUDGET) -> list[int]:
    """Sorted p with p/b^n in the set (optionally with gcd(p, b^n) = 1).

    Every such b-adic rational is an endpoint of some allowed level-n
    basic interval, so candidates are the cylinder endpoints, verified
    by the exact membership test.
    """
    if n < 1:
        raise InputError("level must be >= 1")
    bn = dset.base ** n
    candidates: set[int] = set()
    for p in dset.allowed_prefixes(n, budget):
        candidates.add(p)
        candidates.add(p + 1)
    out = []
    for p in sorted(candidates):
        if coprime and gcd(p, dset.base) != 1:
            continue
        if _rational_in_set(dset, Fraction(p, bn)):
            out.append(p)
    return out


def center_count(dset: MissingDigitSet, n: int, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """#{0 <= p <= b^n : p/b^n in K}; closed form for non-adjacent digit sets."""
    if dset.non_adjacent and 0 in dset.digits and dset.base - 1 in dset.digits:
        return 2 * dset.digit_count ** n
    return len(enumerate_centers(dset, n, coprime=False, budget=budget))


# ---------------------------------------------------------------------------
# exact measure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CantorMeasureValue:
    """Measure of a set; exact when lo == hi, else certified two-sided bounds."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not (_ZERO <= self.lo <= self.hi <= _ONE):
            raise InputError("measure bounds outside [0,1]")

    @staticmethod
    def exact_value(v: Fraction) -> "CantorMeasureValue":
        return CantorMeasureValue(v, v)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.exact:
            raise InputError("measure is only known as bounds")
        return self.lo


def cantor_cdf(dset: MissingDigitSet, x: Fraction) -> Fraction:
    """mu([0, x]) exactly, for rational x.

    Walks the digit stream of x; each digit d contributes the mass of
    the allowed cells strictly below d at that level.  Rational
    remainders eventually repeat, and a repeat closes to an exact
    geometric sum.
    """
    if x <= 0:
        return _ZERO
    if x >= 1:
        return _ONE
    b, m = dset.base, dset.digit_count
    allowed = dset._digitset
    below = [sum(1 for j in dset.digits if j < d) for d in range(b)]
    acc = _ZERO
    weight = _ONE
    seen: dict[Fraction, tuple[Fraction, Fraction]] = {}
    rem = x
    while True:
        if rem == 0:
            return acc
        prev = seen.get(rem)
        if prev is not None:
            acc0, w0 = prev
            # acc_final = acc0 + w0*G and = acc + w*G for the same tail G
            ratio = weight / w0
            return acc0 + (acc - acc0) / (1 - ratio)
        seen[rem] = (acc, weight)
        rem *= b
        d = rem.__floor__()
        rem -= d
        if below[d]:
            acc += weight * Fraction(below[d], m)
        if d not in allowed:
            return acc
        weight /= m


def measure_pair(dset: MissingDigitSet, lo: Fraction, hi: Fraction) -> Fraction:
    if hi <= lo:
        return _ZERO
    return cantor_cdf(dset, hi) - cantor_cdf(dset, lo)


def measure_union(dset: MissingDigitSet, pairs: Sequence[Pair]) -> Fraction:
    return sum((measure_pair(dset, lo, hi) for lo, hi in merge_pairs(pairs)), _ZERO)


def cantor_measure(dset: MissingDigitSet, iv: RatInterval) -> CantorMeasureValue:
    """Exact normalized measure of a closed rational interval."""
    return CantorMeasureValue.exact_value(measure_pair(dset, iv.lo, iv.hi))


def full_cover_check(dset: MissingDigitSet, n: int, window: RatInterval) -> bool:
    """Whether the radius-b^-n balls around all p/b^n cover the window in measure."""
    if n < 1:
        raise InputError("level must be >= 1")
    bn = dset.base ** n
    r = Fraction(1, bn)
    balls = [(Fraction(p, bn) - r, Fraction(p, bn) + r) for p in range(bn + 1)]
    clipped = intervals.clip_union(merge_pairs(balls), window.pair())
    return measure_union(dset, clipped) == measure_pair(dset, window.lo, window.hi)

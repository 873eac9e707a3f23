"""Exact rationals and directed-rounded real enclosures.

Certified values are either `fractions.Fraction` (exact) or two-sided
rational enclosures [lo, hi] that provably contain the true real.  All
endpoint arithmetic is exact; the only approximation ever made is an
explicit series/root truncation with an explicit tail bound, so every
enclosure is sound by construction.  Binary floating point is never used
here.

A `RealEnclosure` couples the current [lo, hi] with a refinable source.
Refinement doubles the working precision per step and is capped
(default 16 steps); hitting the cap raises `PrecisionError` rather than
guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Protocol, Union

from .errors import InputError, PrecisionError, UndecidableFloorError

# Interval = (lo, hi) pair of Fractions with lo <= hi.
Iv = tuple[Fraction, Fraction]

BASE_BITS = 32
MAX_REFINE_STEPS = 16

_ZERO = Fraction(0)
_ONE = Fraction(1)


def canonicalize_rational(numerator: int, denominator: int) -> Fraction:
    """Exact rational n/d, gcd-reduced with positive denominator."""
    if denominator == 0:
        raise InputError("zero denominator")
    return Fraction(numerator, denominator)


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a non-negative integer."""
    if n < 0:
        raise InputError("iroot of a negative integer")
    if k < 1:
        raise InputError("iroot order must be >= 1")
    if n in (0, 1) or k == 1:
        return n
    if k == 2:
        return isqrt(n)
    x = 1 << (-(-n.bit_length() // k))  # 2^ceil(bits/k) >= true root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


# ---------------------------------------------------------------------------
# interval helpers (plain (lo, hi) pairs)
# ---------------------------------------------------------------------------

def iv_exact(x: Fraction) -> Iv:
    return (x, x)


def iv_is_exact(a: Iv) -> bool:
    return a[0] == a[1]


def iv_add(a: Iv, b: Iv) -> Iv:
    return (a[0] + b[0], a[1] + b[1])


def iv_sub(a: Iv, b: Iv) -> Iv:
    return (a[0] - b[1], a[1] - b[0])


def iv_neg(a: Iv) -> Iv:
    return (-a[1], -a[0])


def iv_mul(a: Iv, b: Iv) -> Iv:
    c = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(c), max(c))


def iv_recip(a: Iv) -> Iv:
    if a[0] <= 0 <= a[1]:
        raise InputError("interval reciprocal across zero")
    return (1 / a[1], 1 / a[0])


def iv_div(a: Iv, b: Iv) -> Iv:
    return iv_mul(a, iv_recip(b))


def iv_abs(a: Iv) -> Iv:
    if a[0] >= 0:
        return a
    if a[1] <= 0:
        return iv_neg(a)
    return (_ZERO, max(-a[0], a[1]))


def iv_intpow(a: Iv, k: int) -> Iv:
    if k == 0:
        return iv_exact(_ONE)
    if k < 0:
        return iv_recip(iv_intpow(a, -k))
    lo, hi = a[0] ** k, a[1] ** k
    if a[0] >= 0 or k % 2 == 1:
        return (min(lo, hi), max(lo, hi))
    # even power of a sign-crossing interval
    return (_ZERO, max(lo, hi))


def iv_intersect(a: Iv, b: Iv) -> Iv:
    lo, hi = max(a[0], b[0]), min(a[1], b[1])
    if lo > hi:
        raise InputError("empty interval intersection (inconsistent enclosures)")
    return (lo, hi)


def iv_scale(a: Iv, q: Fraction) -> Iv:
    if q >= 0:
        return (a[0] * q, a[1] * q)
    return (a[1] * q, a[0] * q)


def iv_width(a: Iv) -> Fraction:
    return a[1] - a[0]


def iv_contains(a: Iv, x: Fraction) -> bool:
    return a[0] <= x <= a[1]


def _round_out(a: Iv, bits: int) -> Iv:
    """Round endpoints outward onto the 2^-bits dyadic grid (keeps sizes tame)."""
    g = 1 << bits
    lo = Fraction((a[0] * g).__floor__(), g)
    hi = Fraction(-((-a[1] * g).__floor__()), g)
    return (lo, hi)


# ---------------------------------------------------------------------------
# certified elementary enclosures
# ---------------------------------------------------------------------------

def sqrt_interval(x: Fraction, bits: int) -> Iv:
    """Enclosure of sqrt(x) with width <= 2^-bits (x >= 0)."""
    if x < 0:
        raise InputError("sqrt of a negative value")
    if x == 0:
        return iv_exact(_ZERO)
    p, q = x.numerator, x.denominator
    # sqrt(p/q) = sqrt(p*q)/q
    scaled = p * q << (2 * bits)
    r = isqrt(scaled)
    den = q << bits
    if r * r == scaled:
        return iv_exact(Fraction(r, den))
    return (Fraction(r, den), Fraction(r + 1, den))


def _atanh_interval(z: Fraction, terms: int) -> Iv:
    """Enclosure of atanh(z) for 0 <= z < 1 from `terms` series terms."""
    total = _ZERO
    zsq = z * z
    power = z
    for k in range(terms):
        total += power / (2 * k + 1)
        power *= zsq
    # remaining terms are positive and dominated by a geometric series
    tail = power / ((2 * terms + 1) * (1 - zsq))
    return (total, total + tail)


_LN2_CACHE: dict[int, Iv] = {}


def _ln2_interval(bits: int) -> Iv:
    cached = _LN2_CACHE.get(bits)
    if cached is None:
        # ln 2 = 2 atanh(1/3); terms shrink by 9x so ~bits/3 terms suffice
        terms = bits // 3 + 4
        cached = _round_out(iv_scale(_atanh_interval(Fraction(1, 3), terms), Fraction(2)), bits + 8)
        _LN2_CACHE[bits] = cached
    return cached


def ln_interval(x: Fraction, bits: int) -> Iv:
    """Enclosure of ln(x) with width <= 2^-bits (x > 0)."""
    if x <= 0:
        raise InputError("log of a non-positive value")
    if x == 1:
        return iv_exact(_ZERO)
    if x < 1:
        return iv_neg(ln_interval(1 / x, bits))
    # reduce to y = x / 2^e in [1, 2)
    e = (x.numerator // x.denominator).bit_length() - 1
    y = x / (1 << e)
    if y >= 2:  # guard against off-by-one from the integer estimate
        y /= 2
        e += 1
    z = (y - 1) / (y + 1)  # in [0, 1/3)
    work = bits + 8
    terms = work // 3 + 4
    res = iv_scale(_atanh_interval(z, terms), Fraction(2))
    if e:
        res = iv_add(res, iv_scale(_ln2_interval(work), Fraction(e)))
    return _round_out(res, bits)


_E_CACHE: dict[int, Iv] = {}


def _e_interval(bits: int) -> Iv:
    cached = _E_CACHE.get(bits)
    if cached is None:
        total = _ONE
        term = _ONE
        k = 1
        while term.denominator.bit_length() < bits + 8:
            term /= k
            total += term
            k += 1
        cached = _round_out((total, total + 2 * term / k), bits + 8)
        _E_CACHE[bits] = cached
    return cached


def _exp_point(x: Fraction, bits: int) -> Iv:
    """Enclosure of e^x for rational x."""
    if x == 0:
        return iv_exact(_ONE)
    if x < 0:
        return iv_recip(_exp_point(-x, bits))
    n0 = x.__floor__()
    r = x - n0
    res = iv_intpow(_e_interval(bits + 8), n0) if n0 else iv_exact(_ONE)
    if r:
        total = _ONE
        term = _ONE
        k = 1
        while True:
            term = term * r / k
            total += term
            k += 1
            if term < Fraction(1, 1 << (bits + 8)) and k > 2:
                break
        # tail <= term * r/(k)/(1 - r) <= 2*term for r in (0,1)
        res = iv_mul(res, (total, total + 2 * term))
    return _round_out(res, bits)


def exp_interval(a: Iv, bits: int) -> Iv:
    lo = _exp_point(a[0], bits)[0]
    hi = _exp_point(a[1], bits)[1]
    return (lo, hi)


def nthroot_interval(x: Fraction, k: int, bits: int) -> Iv:
    """Enclosure of x^(1/k) for x >= 0 and integer k >= 1."""
    if x < 0:
        raise InputError("even root of a negative value")
    if x == 0:
        return iv_exact(_ZERO)
    if k == 1:
        return iv_exact(x)
    p, q = x.numerator, x.denominator
    # x^(1/k) = (p q^(k-1))^(1/k) / q
    scaled = p * q ** (k - 1) << (k * bits)
    r = iroot(scaled, k)
    den = q << bits
    if r ** k == scaled:
        return iv_exact(Fraction(r, den))
    return (Fraction(r, den), Fraction(r + 1, den))


_SMALL_ROOT_LIMIT = 64


def rational_pow(base: Fraction, expo: Fraction, bits: int) -> Iv:
    """Enclosure of base**expo for base > 0; exact whenever the power is rational."""
    if base <= 0:
        raise InputError("power of a non-positive base")
    if expo == 0 or base == 1:
        return iv_exact(_ONE)
    p, q = expo.numerator, expo.denominator
    if q == 1:
        return iv_exact(base ** p)
    if q <= _SMALL_ROOT_LIMIT:
        root = nthroot_interval(base, q, bits + 8)
        return _round_out(iv_intpow(root, p), bits)
    # huge-denominator exponents go through exp(expo * ln base)
    lnb = ln_interval(base, bits + expo.__ceil__().bit_length() + 16)
    return exp_interval(iv_scale(lnb, expo), bits)


def pow_interval(base: Iv, expo: Iv, bits: int) -> Iv:
    """Enclosure of base**expo for an interval base > 0 and interval exponent."""
    if base[0] <= 0:
        raise InputError("interval power needs a positive base")
    if iv_is_exact(expo):
        lo = rational_pow(base[0], expo[0], bits)
        hi = rational_pow(base[1], expo[0], bits)
        if expo[0] >= 0:
            return (lo[0], hi[1])
        return (hi[0], lo[1])
    work = bits + 16
    lnb = (ln_interval(base[0], work)[0], ln_interval(base[1], work)[1])
    return exp_interval(iv_mul(lnb, expo), bits)


# ---------------------------------------------------------------------------
# refinable sources and RealEnclosure
# ---------------------------------------------------------------------------

class EnclosureSource(Protocol):
    """Anything that can produce a sound enclosure at a given refinement level."""

    def interval(self, level: int) -> Iv: ...


def _level_bits(level: int) -> int:
    return BASE_BITS << level


@dataclass(frozen=True)
class SqrtSource:
    """sqrt(radicand) for a non-negative rational radicand."""

    radicand: Fraction

    def interval(self, level: int) -> Iv:
        return sqrt_interval(self.radicand, _level_bits(level))


@dataclass(frozen=True)
class LogRatioSource:
    """log(num)/log(den) for positive rationals, den != 1."""

    num: Fraction
    den: Fraction

    def __post_init__(self):
        if self.num <= 0 or self.den <= 0:
            raise InputError("log of a non-positive value")
        if self.den == 1:
            raise InputError("log-ratio denominator log(1) = 0")

    def interval(self, level: int) -> Iv:
        bits = _level_bits(level)
        if self.num == 1:
            return iv_exact(_ZERO)
        return _round_out(iv_div(ln_interval(self.num, bits + 8),
                                 ln_interval(self.den, bits + 8)), bits)


@dataclass(frozen=True)
class AffineSource:
    """add + mul * base, the only compound form the constants here need."""

    base: "EnclosureSource"
    mul: Fraction = _ONE
    add: Fraction = _ZERO

    def interval(self, level: int) -> Iv:
        lo, hi = iv_scale(self.base.interval(level), self.mul)
        return (lo + self.add, hi + self.add)


@dataclass(frozen=True)
class RealEnclosure:
    """A rational interval certified to contain one real number.

    `source is None` marks an exact rational (lo == hi).  `refine()`
    produces a nested enclosure at the next precision level.
    """

    lo: Fraction
    hi: Fraction
    source: Optional[EnclosureSource] = None
    level: int = 0

    def __post_init__(self):
        if self.lo > self.hi:
            raise InputError("enclosure with lo > hi")

    @staticmethod
    def exact(value) -> "RealEnclosure":
        v = Fraction(value)
        return RealEnclosure(v, v)

    @staticmethod
    def from_source(source: EnclosureSource, level: int = 0) -> "RealEnclosure":
        lo, hi = source.interval(level)
        return RealEnclosure(lo, hi, source, level)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def as_iv(self) -> Iv:
        return (self.lo, self.hi)

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def refine(self) -> "RealEnclosure":
        if self.source is None:
            return self
        if self.level + 1 > MAX_REFINE_STEPS:
            raise PrecisionError("enclosure refinement cap reached")
        lo, hi = iv_intersect(self.source.interval(self.level + 1), self.as_iv())
        return RealEnclosure(lo, hi, self.source, self.level + 1)

    def refined_to(self, width_target: Fraction) -> "RealEnclosure":
        if width_target <= 0:
            raise InputError("width target must be positive")
        enc = self
        while enc.width > width_target:
            if enc.source is None or enc.level >= MAX_REFINE_STEPS:
                raise PrecisionError(
                    f"cannot reach width {width_target} within {MAX_REFINE_STEPS} refinement steps")
            enc = enc.refine()
        return enc

    def mul_rational(self, q) -> "RealEnclosure":
        q = Fraction(q)
        lo, hi = iv_scale(self.as_iv(), q)
        if self.source is None:
            return RealEnclosure(lo, hi)
        return RealEnclosure(lo, hi, AffineSource(self.source, mul=q), self.level)

    def add_rational(self, q) -> "RealEnclosure":
        q = Fraction(q)
        src = None
        if self.source is not None:
            src = (AffineSource(self.source.base, self.source.mul, self.source.add + q)
                   if isinstance(self.source, AffineSource)
                   else AffineSource(self.source, add=q))
        return RealEnclosure(self.lo + q, self.hi + q, src, self.level)

    def cmp_rational(self, x) -> int:
        """-1/0/+1 comparison against a rational, refining until decided.

        Returns 0 only for an exact equal rational; an inexact enclosure that
        keeps straddling x exhausts its refinement budget (PrecisionError).
        """
        x = Fraction(x)
        enc = self
        while True:
            if enc.hi < x:
                return -1
            if enc.lo > x:
                return 1
            if enc.is_exact:
                return 0
            enc = enc.refine()  # raises PrecisionError at the cap


Real = Union[Fraction, RealEnclosure]


def as_enclosure(x: Real) -> RealEnclosure:
    if isinstance(x, RealEnclosure):
        return x
    return RealEnclosure.exact(x)


def enclose_real(spec: Union[EnclosureSource, Fraction, int], width_target) -> RealEnclosure:
    """Enclosure of the real described by `spec`, no wider than `width_target`."""
    width_target = Fraction(width_target)
    if width_target <= 0:
        raise InputError("width target must be positive")
    if isinstance(spec, (Fraction, int)):
        return RealEnclosure.exact(spec)
    return RealEnclosure.from_source(spec).refined_to(width_target)


def floor_power(lam: Real, tau: Real, n: int) -> int:
    """Exact floor(lam * tau**n); escalates precision until the floor is certain."""
    if n < 1:
        raise InputError("floor_power needs n >= 1")
    lam_e, tau_e = as_enclosure(lam), as_enclosure(tau)
    if lam_e.lo <= 0:
        raise InputError("floor_power needs lam > 0")
    if tau_e.cmp_rational(1) <= 0:
        raise InputError("floor_power needs tau > 1")
    if lam_e.is_exact and tau_e.is_exact:
        v = lam_e.lo * tau_e.lo ** n
        return v.__floor__()
    while True:
        val = iv_mul(lam_e.as_iv(), iv_intpow(tau_e.as_iv(), n))
        flo, fhi = val[0].__floor__(), val[1].__floor__()
        if flo == fhi:
            return flo
        lam_can = lam_e.source is not None and lam_e.level < MAX_REFINE_STEPS
        tau_can = tau_e.source is not None and tau_e.level < MAX_REFINE_STEPS
        if not (lam_can or tau_can):
            raise UndecidableFloorError(
                f"floor(lam*tau^{n}) straddles an integer at the precision cap")
        if lam_can:
            lam_e = lam_e.refine()
        if tau_can:
            tau_e = tau_e.refine()


def golden_ratio_source() -> AffineSource:
    """(sqrt(5) - 1)/2."""
    return AffineSource(SqrtSource(Fraction(5)), mul=Fraction(1, 2), add=Fraction(-1, 2))


def exact_order_threshold_source() -> AffineSource:
    """(sqrt(5) + 3)/2, the boundary between the two explicit-number regimes."""
    return AffineSource(SqrtSource(Fraction(5)), mul=Fraction(1, 2), add=Fraction(3, 2))

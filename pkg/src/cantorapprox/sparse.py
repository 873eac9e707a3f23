"""Sparse-exponent numbers: coefficient * sum b^(-e_n) for a strictly
increasing exponent sequence.

The power rule e_n = floor(lam * tau^n) produces, for each tau > 2, an
explicit irrational with prescribed approximation behaviour; the
factorial rule e_n = n! produces the classic Liouville example.  All
truncations p_s/q_s are exact integers, computed lazily because large
terms grow doubly-exponentially.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Union

from .digitsets import IN, OUT, MembershipResult, MissingDigitSet
from .enclosures import (Iv, Real, RealEnclosure, as_enclosure, floor_power,
                         iv_exact, rational_pow, sqrt_interval, SqrtSource)
from .errors import InputError, PrecisionError

_ONE = Fraction(1)

# refuse to materialize truncation integers beyond this size
MAX_TRUNCATION_BITS = 2_000_000


@dataclass(frozen=True)
class PowerRule:
    """e_n = floor(lam * tau^n)."""

    tau: Real
    lam: Real = _ONE

    def __post_init__(self):
        if as_enclosure(self.tau).cmp_rational(2) <= 0:
            raise InputError("power rule needs tau > 2")
        if as_enclosure(self.lam).cmp_rational(0) <= 0:
            raise InputError("power rule needs lam > 0")

    def exponent(self, n: int) -> int:
        return floor_power(self.lam, self.tau, n)


@dataclass(frozen=True)
class FactorialRule:
    """e_n = n!."""

    def exponent(self, n: int) -> int:
        out = 1
        for k in range(2, n + 1):
            out *= k
        return out


ExponentRule = Union[PowerRule, FactorialRule]


class SparseDigitNumber:
    """coefficient * sum_{n>=1} base^(-e_n), with exact truncations."""

    def __init__(self, base: int, coefficient: int, rule: ExponentRule, terms: int):
        if base < 3:
            raise InputError("base must be >= 3")
        if not 1 <= coefficient <= base - 1:
            raise InputError("coefficient must be a nonzero digit")
        if terms < 2:
            raise InputError("need at least 2 terms")
        self.base = base
        self.coefficient = coefficient
        self.rule = rule
        self.terms = terms
        self._exponents: list[int] = []
        self._truncations: dict[int, tuple[int, int]] = {}
        self._extend(terms + 1)

    def _extend(self, count: int) -> None:
        while len(self._exponents) < count:
            n = len(self._exponents) + 1
            e = self.rule.exponent(n)
            if n == 1 and e < 1:
                raise InputError("first exponent must be >= 1 (value must stay below 1)")
            if self._exponents and e <= self._exponents[-1]:
                raise InputError(
                    f"exponent collision: e_{n} = {e} <= e_{n-1} = {self._exponents[-1]}")
            self._exponents.append(e)

    def exponent(self, n: int) -> int:
        self._extend(n)
        return self._exponents[n - 1]

    def exponents_up_to(self, s: int) -> tuple[int, ...]:
        self._extend(s)
        return tuple(self._exponents[:s])

    def _check_feasible(self, e: int) -> None:
        if e * self.base.bit_length() > MAX_TRUNCATION_BITS:
            raise PrecisionError(f"truncation denominator base^{e} is out of budget")

    def truncation(self, s: int) -> tuple[int, int]:
        """(p_s, q_s) with p_s/q_s = coefficient * sum_{n<=s} base^(-e_n), reduced."""
        if s < 1:
            raise InputError("truncation index must be >= 1")
        cached = self._truncations.get(s)
        if cached is not None:
            return cached
        e_s = self.exponent(s)
        self._check_feasible(e_s)
        q = self.base ** e_s
        p = self.coefficient * sum(self.base ** (e_s - self.exponent(n))
                                   for n in range(1, s + 1))
        if gcd(p, q) != 1:
            raise InputError(
                "truncation not reduced: the coefficient shares a factor with the base")
        self._truncations[s] = (p, q)
        return (p, q)

    def truncation_fraction(self, s: int) -> Fraction:
        p, q = self.truncation(s)
        return Fraction(p, q)

    def tail_interval(self, s: int) -> Iv:
        """Certified bounds on x - p_s/q_s using all materialized terms.

        The exponents grow by at least 1, so the unmaterialized remainder
        is below coefficient * b^(-e_{t+1}) * b/(b-1).
        """
        t = max(self.terms, s + 1)
        self._extend(t + 1)
        e_ref = self.exponent(s)
        self._check_feasible(self.exponent(t))
        partial = Fraction(0)
        for n in range(s + 1, t + 1):
            partial += Fraction(self.coefficient, self.base ** self.exponent(n))
        rem = Fraction(self.coefficient * self.base,
                       (self.base - 1) * self.base ** self.exponent(t + 1))
        return (partial, partial + rem)

    def value_interval(self, terms: Optional[int] = None) -> Iv:
        t = terms if terms is not None else self.terms
        self._extend(t + 1)
        self._check_feasible(self.exponent(t))
        prefix = self.truncation_fraction(t)
        rem = Fraction(self.coefficient * self.base,
                       (self.base - 1) * self.base ** self.exponent(t + 1))
        return (prefix, prefix + rem)

    def interval(self, level: int) -> Iv:
        """EnclosureSource protocol: each refinement level adds one term."""
        return self.value_interval(self.terms + level)

    def enclosure(self) -> RealEnclosure:
        return RealEnclosure.from_source(self)

    def digit_verdict(self, dset: MissingDigitSet, depth: int) -> MembershipResult:
        """Exact membership at the given depth straight off the digit stream."""
        if dset.base != self.base:
            raise InputError("digit stream base does not match the set")
        self._extend(max(2, self.terms))
        while self._exponents[-1] < depth:
            self._extend(len(self._exponents) + 1)
        hits = [e for e in self._exponents if e <= depth]
        if self.coefficient not in dset._digitset and hits:
            return OUT
        if len(hits) < depth and 0 not in dset._digitset:
            return OUT
        return IN

    def __repr__(self):
        return (f"SparseDigitNumber(base={self.base}, coefficient={self.coefficient}, "
                f"rule={self.rule!r}, terms={self.terms})")


def build_sparse_number(base: int, coefficient: int, rule: ExponentRule,
                        terms: int) -> SparseDigitNumber:
    """Validated construction; materializes terms+1 exponents eagerly and
    verifies the first reduced truncation (coprimality with the base)."""
    x = SparseDigitNumber(base, coefficient, rule, terms)
    x.truncation(1)
    return x


# ---------------------------------------------------------------------------
# per-truncation verification report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TruncationReport:
    s: int
    coprime_ok: bool
    denominator_growth_ok: Optional[bool]  # (1/b) q_s^tau < q_{s+1} < b^tau q_s^tau
    gap_lo: Fraction
    gap_hi: Fraction
    gap_bounds_ok: bool                    # c/q_{s+1} < |x - p_s/q_s| < c b/(b-1)/q_{s+1}
    power_bounds_ok: Optional[bool]        # c b^-tau q_s^-tau < |x - p_s/q_s| < c b^2/(b-1) q_s^-tau
    note: str = ""

    @property
    def passes(self) -> bool:
        checks = [self.coprime_ok, self.gap_bounds_ok]
        checks += [c for c in (self.denominator_growth_ok, self.power_bounds_ok)
                   if c is not None]
        return all(checks)


def _cmp_fraction_vs_power(r: Fraction, base: int, expo: Fraction) -> int:
    """Exact sign of r - base**expo for rational expo (cross-multiplied powers)."""
    if r <= 0:
        return -1
    u = expo.denominator
    p = expo.numerator
    lhs_num = r.numerator ** u
    lhs_den = r.denominator ** u
    if p >= 0:
        lhs, rhs = lhs_num, lhs_den * base ** p
    else:
        lhs, rhs = lhs_num * base ** (-p), lhs_den
    return (lhs > rhs) - (lhs < rhs)


def _exponent_compare(value: int, target_coef: Fraction, tau: Real, shift: Fraction) -> int:
    """Exact sign of value - (target_coef * tau + shift) for integer value."""
    tau_e = as_enclosure(tau)
    if tau_e.is_exact:
        t = target_coef * tau_e.lo + shift
        return (value > t) - (value < t)
    while True:
        lo = target_coef * tau_e.lo + shift
        hi = target_coef * tau_e.hi + shift
        if target_coef < 0:
            lo, hi = hi, lo
        if value < lo:
            return -1
        if value > hi:
            return 1
        tau_e = tau_e.refine()


def truncation_report(x: SparseDigitNumber, s: int) -> TruncationReport:
    """Exact verification of the truncation inequalities at index s.

    Small s may legitimately fail the two-sided bounds (the constants only
    take over once the gaps are large enough); callers aggregate a first
    passing index rather than treating early failures as fatal.
    """
    if not 1 <= s < x.terms:
        raise InputError("need 1 <= s < terms (the report uses q_{s+1})")
    b, c = x.base, x.coefficient
    p_s, q_s = x.truncation(s)
    e_s, e_s1 = x.exponent(s), x.exponent(s + 1)
    coprime_ok = gcd(p_s, q_s) == 1

    note = ""
    growth_ok: Optional[bool] = None
    power_ok: Optional[bool] = None
    if isinstance(x.rule, PowerRule):
        tau = x.rule.tau
        # (1/b) q_s^tau < q_{s+1} < b^tau q_s^tau, in base-b exponents:
        # tau*e_s - 1 < e_{s+1} < tau*(e_s + 1)
        lower = _exponent_compare(e_s1, Fraction(e_s), tau, Fraction(-1)) > 0
        upper = _exponent_compare(e_s1, Fraction(e_s + 1), tau, Fraction(0)) < 0
        growth_ok = lower and upper
    else:
        note = "liouville-type: gaps outgrow every fixed power"

    tail = x.tail_interval(s)
    gap_lower = Fraction(c, b ** e_s1)
    gap_upper = Fraction(c * b, (b - 1) * b ** e_s1)
    gap_ok = tail[0] >= gap_lower and tail[1] <= gap_upper

    if isinstance(x.rule, PowerRule):
        tau_e = as_enclosure(x.rule.tau)
        if tau_e.is_exact:
            t = tau_e.lo
            low_cmp = _cmp_fraction_vs_power(tail[0] / c, b, -t * (e_s + 1))
            high_cmp = _cmp_fraction_vs_power(tail[1] * (b - 1) / (c * b * b), b, -t * e_s)
            power_ok = low_cmp > 0 and high_cmp < 0
        else:
            power_ok = (_power_bound_encl(tail[0] / c, b, tau_e, e_s + 1, above=True)
                        and _power_bound_encl(tail[1] * (b - 1) / (c * b * b), b, tau_e,
                                              e_s, above=False))

    return TruncationReport(s=s, coprime_ok=coprime_ok, denominator_growth_ok=growth_ok,
                            gap_lo=tail[0], gap_hi=tail[1], gap_bounds_ok=gap_ok,
                            power_bounds_ok=power_ok, note=note)


def _power_bound_encl(r: Fraction, base: int, tau_e: RealEnclosure, mult: int,
                      above: bool) -> bool:
    """Certified r > base^(-tau*mult) (above) or r < base^(-tau*mult)."""
    while True:
        lo = rational_pow(Fraction(base), -tau_e.hi * mult, 96)
        hi = rational_pow(Fraction(base), -tau_e.lo * mult, 96)
        if above and r > hi[1]:
            return True
        if above and r < lo[0]:
            return False
        if not above and r < lo[0]:
            return True
        if not above and r > hi[1]:
            return False
        tau_e = tau_e.refine()


def truncation_reports(x: SparseDigitNumber) -> tuple[list[TruncationReport], Optional[int]]:
    """Reports for 1 <= s < terms plus the first index from which all pass."""
    reports = [truncation_report(x, s) for s in range(1, x.terms)]
    s_min = None
    for rep in reversed(reports):
        if rep.passes:
            s_min = rep.s
        else:
            break
    return reports, s_min


# ---------------------------------------------------------------------------
# the threshold between the exact-order and band regimes
# ---------------------------------------------------------------------------

def exceeds_exact_order_threshold(tau: Fraction) -> bool:
    """tau >= (sqrt(5) + 3)/2, decided exactly for rational tau."""
    tau = Fraction(tau)
    t = 2 * tau - 3
    return t > 0 and t * t >= 5


def te_inequality_holds(tau: Fraction, eps: Fraction) -> bool:
    """(tau - 1)(tau + eps - 1) > tau, the contradiction driver."""
    tau, eps = Fraction(tau), Fraction(eps)
    return (tau - 1) * (tau + eps - 1) > tau


def well_approximable_band(tau: Fraction, eps: Fraction) -> tuple[Fraction, Fraction]:
    """[tau - eps, (2 tau - 1)/(tau - 1) + eps], the sub-threshold regime."""
    tau, eps = Fraction(tau), Fraction(eps)
    if tau <= 1:
        raise InputError("need tau > 1")
    return (tau - eps, (2 * tau - 1) / (tau - 1) + eps)

"""Independent oracles the tests check the library against.

These deliberately use different mechanisms from the implementation:
block counting instead of per-digit weights for the measure, integer
power comparisons instead of log enclosures for exponent inequalities.
"""

from bisect import bisect_left
from fractions import Fraction

from cantorapprox import MissingDigitSet

ZERO = Fraction(0)
ONE = Fraction(1)


def oracle_cdf(dset: MissingDigitSet, x: Fraction, level: int = 10) -> Fraction:
    """mu([0, x]) by summing whole level-`level` blocks below x and recursing
    into the single boundary block, with geometric cycle closing."""
    if x <= 0:
        return ZERO
    if x >= 1:
        return ONE
    prefixes = dset.allowed_prefixes(level)
    prefix_set = set(prefixes)
    block_mass = Fraction(1, dset.digit_count ** level)
    scale = dset.base ** level
    acc = ZERO
    weight = ONE
    seen: dict[Fraction, tuple[Fraction, Fraction]] = {}
    while True:
        if x <= 0:
            return acc
        if x >= 1:
            return acc + weight
        prev = seen.get(x)
        if prev is not None:
            acc0, w0 = prev
            ratio = weight / w0
            return acc0 + (acc - acc0) / (1 - ratio)
        seen[x] = (acc, weight)
        k = (x * scale).__floor__()
        acc += weight * block_mass * bisect_left(prefixes, k)
        if k not in prefix_set:
            return acc
        weight *= block_mass
        x = x * scale - k


def oracle_measure(dset: MissingDigitSet, lo: Fraction, hi: Fraction,
                   level: int = 10) -> Fraction:
    if hi <= lo:
        return ZERO
    return oracle_cdf(dset, hi, level) - oracle_cdf(dset, lo, level)


def gamma_cmp(p: int, q: int) -> int:
    """Sign of log(2)/log(3) - p/q via exact integer powers (q > 0)."""
    lhs, rhs = 2 ** q, 3 ** p
    return (lhs > rhs) - (lhs < rhs)


def power_series_converges(s: Fraction, tau: Fraction, base: int, count: int) -> bool:
    """Closed-form rule for f=r^s, psi=r^-tau: convergent iff s*tau > gamma,
    decided by cross-multiplied integer powers."""
    st = Fraction(s) * Fraction(tau)
    # s*tau > log(count)/log(base)  <=>  base^(num) > count^(den)
    return base ** st.numerator > count ** st.denominator

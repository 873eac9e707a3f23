"""Finite-stage layers of the limsup set and the series dichotomy.

A layer at level n is the union of balls of radius psi(b^n) around the
(optionally reduced) b-adic rationals p/b^n lying in the fractal,
clipped to a window.  Everything here is computed with exact rationals;
irrational radii or exponents degrade gracefully to certified two-sided
bounds.

Exponents are carried symbolically as c * gamma^k where gamma is the
set's similarity exponent log(#digits)/log(base).  That keeps the
cancellations exact: b^(n*gamma) is exactly (#digits)^n, which is what
makes the headline层 identities integer-checkable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .digitsets import (CantorMeasureValue, MissingDigitSet, enumerate_centers,
                        center_count, measure_union)
from .enclosures import (Iv, LogRatioSource, RealEnclosure, iv_add, iv_div,
                         iv_exact, iv_is_exact, iv_mul, iv_scale, rational_pow)
from .errors import HypothesisViolation, InputError, PrecisionError
from .intervals import Pair, RatInterval, intersect_unions, merge_pairs
from . import intervals

_ZERO = Fraction(0)
_ONE = Fraction(1)

VALUE_BITS = 96  # working precision for inexact term values


# ---------------------------------------------------------------------------
# scalars of the form coef * gamma^gexp
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Scalar:
    """coef * gamma^gexp, gamma being the ambient set's similarity exponent."""

    coef: Fraction
    gexp: int = 0

    @staticmethod
    def of(value, gexp: int = 0) -> "Scalar":
        return Scalar(Fraction(value), gexp)

    @property
    def is_rational(self) -> bool:
        return self.gexp == 0 or self.coef == 0

    def times(self, other: "Scalar") -> "Scalar":
        return Scalar(self.coef * other.coef, self.gexp + other.gexp)

    def scale(self, q: Fraction) -> "Scalar":
        return Scalar(self.coef * q, self.gexp)

    def value_iv(self, dset: MissingDigitSet, bits: int = VALUE_BITS) -> Iv:
        if self.is_rational:
            return iv_exact(self.coef)
        exact = dset.exponent_fraction
        if exact is not None:
            return iv_exact(self.coef * exact ** self.gexp)
        enc = dset.exponent_enclosure().refined_to(Fraction(1, 1 << bits))
        g = enc.as_iv()
        powed = g
        for _ in range(abs(self.gexp) - 1):
            powed = iv_mul(powed, g)
        if self.gexp < 0:
            powed = iv_div(iv_exact(_ONE), powed)
        return iv_scale(powed, self.coef)

    @staticmethod
    def _iv_from_gamma(coef: Fraction, gexp: int, g: Iv) -> Iv:
        if coef == 0 or gexp == 0:
            return iv_exact(coef)
        powed = g
        for _ in range(abs(gexp) - 1):
            powed = iv_mul(powed, g)
        if gexp < 0:
            powed = iv_div(iv_exact(_ONE), powed)
        return iv_scale(powed, coef)

    def compare(self, other: "Scalar", dset: MissingDigitSet) -> int:
        """Exact -1/0/+1 of self - other.

        Decidable: when gamma is irrational it is transcendental (else
        base**gamma = #digits would violate the Gelfond-Schneider theorem),
        so values with different gamma powers are never equal.
        """
        if self.gexp == other.gexp or self.coef == 0 or other.coef == 0:
            a, b = self.coef, other.coef
            if (self.gexp == other.gexp or
                    (self.coef == 0 and other.gexp == 0) or
                    (other.coef == 0 and self.gexp == 0) or
                    (self.coef == 0 and other.coef == 0)):
                return (a > b) - (a < b)
            # comparing against zero: sign(coef) since gamma^m > 0
            if other.coef == 0:
                return 1 if self.coef > 0 else -1
            return -1 if other.coef > 0 else 1
        exact = dset.exponent_fraction
        if exact is not None:
            a = self.coef * exact ** self.gexp
            b = other.coef * exact ** other.gexp
            return (a > b) - (a < b)
        enc = dset.exponent_enclosure()
        while True:
            g = enc.as_iv()
            a = self._iv_from_gamma(self.coef, self.gexp, g)
            b = self._iv_from_gamma(other.coef, other.gexp, g)
            if a[1] < b[0]:
                return -1
            if a[0] > b[1]:
                return 1
            enc = enc.refine()

    def evaluate_base_power(self, dset: MissingDigitSet, bits: int = VALUE_BITS) -> Iv:
        """Enclosure (exact when possible) of base**self."""
        b = Fraction(dset.base)
        if self.coef == 0:
            return iv_exact(_ONE)
        if self.gexp == 0:
            return rational_pow(b, self.coef, bits)
        exact = dset.exponent_fraction
        if exact is not None:
            return rational_pow(b, self.coef * exact ** self.gexp, bits)
        if self.gexp == 1:
            # b^(c*gamma) = (#digits)^c exactly
            return rational_pow(Fraction(dset.digit_count), self.coef, bits)
        # rare: go through an enclosure exponent
        expo = self.value_iv(dset, bits)
        from .enclosures import pow_interval
        return pow_interval(iv_exact(b), expo, bits)


GAMMA = Scalar(_ONE, 1)


def scalar_plus(a: Scalar, b: Scalar) -> Union[Scalar, None]:
    """a + b when it stays in the c*gamma^k form (same gexp or a zero)."""
    if a.coef == 0:
        return b
    if b.coef == 0:
        return a
    if a.gexp == b.gexp:
        return Scalar(a.coef + b.coef, a.gexp)
    return None


# ---------------------------------------------------------------------------
# approximation and dimension functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerLaw:
    """psi(r) = r^-exponent."""

    exponent: Scalar


@dataclass(frozen=True)
class PowerLogLaw:
    """psi(r) = r^-power * (log r)^-log_exponent (natural log)."""

    power: Scalar
    log_exponent: Scalar


@dataclass(frozen=True)
class TableValues:
    """Explicit values at the evaluation grid points b^n, keyed by n."""

    values: Mapping[int, Fraction]


PsiKind = Union[PowerLaw, PowerLogLaw, TableValues]


@dataclass(frozen=True)
class ApproxFunction:
    kind: PsiKind
    truncation: Optional[Fraction] = None  # Psi(r) = min(truncation/r, psi(r))

    @staticmethod
    def power(tau, gexp: int = 0) -> "ApproxFunction":
        return ApproxFunction(PowerLaw(Scalar.of(tau, gexp)))

    @staticmethod
    def power_log(alpha, log_exponent: Scalar) -> "ApproxFunction":
        return ApproxFunction(PowerLogLaw(Scalar.of(alpha), log_exponent))

    @staticmethod
    def table(values: Mapping[int, Fraction]) -> "ApproxFunction":
        return ApproxFunction(TableValues(dict(values)))


def truncate_psi(psi: ApproxFunction, c) -> ApproxFunction:
    """Pointwise min with c/r; preserves divergence of the dichotomy series."""
    c = Fraction(c)
    if c <= 0:
        raise InputError("truncation constant must be positive")
    return ApproxFunction(psi.kind, c)


def psi_value(psi: ApproxFunction, dset: MissingDigitSet, n: int,
              bits: int = VALUE_BITS) -> Iv:
    """Enclosure (exact when representable) of psi(b^n), truncation applied."""
    kind = psi.kind
    if isinstance(kind, TableValues):
        if n not in kind.values:
            raise InputError(f"psi table has no value at level {n}")
        val = iv_exact(Fraction(kind.values[n]))
    elif isinstance(kind, PowerLaw):
        val = kind.exponent.scale(Fraction(-n)).evaluate_base_power(dset, bits)
    elif isinstance(kind, PowerLogLaw):
        power_part = kind.power.scale(Fraction(-n)).evaluate_base_power(dset, bits)
        u = kind.log_exponent
        if u.gexp != 0:
            exact = dset.exponent_fraction
            if exact is None:
                raise InputError("irrational log-exponent is not supported")
            u = Scalar(u.coef * exact ** u.gexp)
        from .enclosures import ln_interval, pow_interval
        logr = iv_scale(ln_interval(Fraction(dset.base), bits + 16), Fraction(n))
        val = iv_mul(power_part, pow_interval(logr, iv_exact(-u.coef), bits))
    else:
        raise InputError(f"unknown psi kind {kind!r}")
    if psi.truncation is not None:
        cap = psi.truncation * Fraction(dset.base) ** (-n)
        val = (min(val[0], cap), min(val[1], cap))
    return val


@dataclass(frozen=True)
class DimensionFunction:
    """f(r) = r^s or a table on the evaluation grid; must come with a witness
    that r^-gamma f(r) is monotonic there."""

    kind: Union[PowerLaw, TableValues]
    monotonicity_witness: bool = False

    @staticmethod
    def power(s, gexp: int = 0) -> "DimensionFunction":
        sc = Scalar.of(s, gexp)
        if sc.coef <= 0:
            raise InputError("dimension-function exponent must be positive")
        return DimensionFunction(PowerLaw(sc), monotonicity_witness=True)

    @staticmethod
    def table(values: Mapping[int, Fraction], monotonicity_witness: bool) -> "DimensionFunction":
        return DimensionFunction(TableValues(dict(values)), monotonicity_witness)


def f_of_psi(f: DimensionFunction, psi: ApproxFunction, dset: MissingDigitSet,
             n: int, bits: int = VALUE_BITS) -> Iv:
    """Enclosure of f(psi(b^n)), exploiting exact exponent algebra when possible."""
    if isinstance(f.kind, TableValues):
        if n not in f.kind.values:
            raise InputError(f"f table has no value at level {n}")
        return iv_exact(Fraction(f.kind.values[n]))
    s = f.kind.exponent
    kind = psi.kind
    if psi.truncation is None and isinstance(kind, PowerLaw):
        st = s.times(kind.exponent)
        return st.scale(Fraction(-n)).evaluate_base_power(dset, bits)
    if psi.truncation is None and isinstance(kind, PowerLogLaw):
        sa = s.times(kind.power)
        su = s.times(kind.log_exponent)
        if su.gexp != 0:
            exact = dset.exponent_fraction
            if exact is None:
                raise InputError("f(power_log psi) needs a rational combined log exponent")
            su = Scalar(su.coef * exact ** su.gexp)
        power_part = sa.scale(Fraction(-n)).evaluate_base_power(dset, bits)
        from .enclosures import ln_interval, pow_interval
        logr = iv_scale(ln_interval(Fraction(dset.base), bits + 16), Fraction(n))
        return iv_mul(power_part, pow_interval(logr, iv_exact(-su.coef), bits))
    # generic: evaluate psi then apply the power
    val = psi_value(psi, dset, n, bits)
    from .enclosures import pow_interval
    return pow_interval(val, s.value_iv(dset, bits), bits)


# ---------------------------------------------------------------------------
# window configuration and layers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WindowConfig:
    """A window B plus the level t0 below which balls outgrow the window."""

    window: RatInterval
    t0: int

    @staticmethod
    def for_window(window: RatInterval, base: int) -> "WindowConfig":
        if window.radius <= 0:
            raise InputError("window must have positive length")
        t0 = 0
        r = Fraction(1)
        while r >= window.radius:
            r /= base
            t0 += 1
        return WindowConfig(window, t0)

    @staticmethod
    def unit(base: int) -> "WindowConfig":
        return WindowConfig.for_window(RatInterval.unit(), base)


@dataclass(frozen=True)
class Layer:
    """The finite union of psi-balls at one level, clipped to the window."""

    n: int
    dset: MissingDigitSet
    window: RatInterval
    coprime: bool
    radius: Iv
    centers: tuple[Fraction, ...]
    disjoint: bool

    def ball_pairs(self, radius: Fraction) -> list[Pair]:
        w_lo, w_hi = self.window.lo, self.window.hi
        out = []
        for c in self.centers:
            lo, hi = max(c - radius, w_lo), min(c + radius, w_hi)
            if lo <= hi:
                out.append((lo, hi))
        return out

    def union_pairs(self, radius: Optional[Fraction] = None) -> list[Pair]:
        r = radius if radius is not None else self.radius[0]
        return merge_pairs(self.ball_pairs(r))


def build_layer(dset: MissingDigitSet, psi: ApproxFunction, n: int,
                cfg: WindowConfig, coprime: bool, budget: int = None) -> Layer:
    if n < 1:
        raise InputError("level must be >= 1")
    kwargs = {} if budget is None else {"budget": budget}
    radius = psi_value(psi, dset, n, VALUE_BITS)
    if radius[0] <= 0:
        raise InputError("psi must be positive on the evaluation grid")
    bn = dset.base ** n
    w_lo, w_hi = cfg.window.lo, cfg.window.hi
    centers = []
    for p in enumerate_centers(dset, n, coprime, **kwargs):
        c = Fraction(p, bn)
        if c + radius[1] >= w_lo and c - radius[1] <= w_hi:
            centers.append(c)
    disjoint = radius[1] < Fraction(1, 2 * bn)
    return Layer(n=n, dset=dset, window=cfg.window, coprime=coprime,
                 radius=radius, centers=tuple(centers), disjoint=disjoint)


def layer_measure(layer: Layer) -> CantorMeasureValue:
    """Exact measure of the ball union (bounds when the radius is inexact)."""
    lo_m = measure_union(layer.dset, layer.union_pairs(layer.radius[0]))
    if iv_is_exact(layer.radius):
        return CantorMeasureValue(lo_m, lo_m)
    hi_m = measure_union(layer.dset, layer.union_pairs(layer.radius[1]))
    return CantorMeasureValue(lo_m, hi_m)


def pairwise_measure(layer_m: Layer, layer_n: Layer) -> CantorMeasureValue:
    """Exact measure of the intersection of two layers over one window."""
    if layer_m.dset != layer_n.dset or layer_m.window != layer_n.window:
        raise InputError("layers must share their set and window")
    lo = measure_union(layer_m.dset, intersect_unions(
        layer_m.union_pairs(layer_m.radius[0]), layer_n.union_pairs(layer_n.radius[0])))
    if iv_is_exact(layer_m.radius) and iv_is_exact(layer_n.radius):
        return CantorMeasureValue(lo, lo)
    hi = measure_union(layer_m.dset, intersect_unions(
        layer_m.union_pairs(layer_m.radius[1]), layer_n.union_pairs(layer_n.radius[1])))
    return CantorMeasureValue(lo, hi)


def layer_comparator(dset: MissingDigitSet, psi: ApproxFunction, n: int,
                     window_measure: Fraction, bits: int = VALUE_BITS) -> Iv:
    """mu(B) * (psi(b^n) * b^n)^gamma, the predicted size of a layer."""
    kind = psi.kind
    if psi.truncation is None and isinstance(kind, PowerLaw):
        expo = scalar_plus(Scalar.of(n), kind.exponent.scale(Fraction(-n)))
        if expo is not None:
            val = expo.times(GAMMA).evaluate_base_power(dset, bits)
            return iv_scale(val, window_measure)
    val = psi_value(psi, dset, n, bits)
    scaled = iv_scale(val, Fraction(dset.base) ** n)
    from .enclosures import pow_interval
    g = dset.exponent_enclosure().refined_to(Fraction(1, 1 << bits))
    powed = pow_interval(scaled, g.as_iv(), bits)
    return iv_scale(powed, window_measure)


# ---------------------------------------------------------------------------
# quasi-independence scan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairRow:
    m: int
    n: int
    case: str  # "i" (forced empty) or "ii"
    mu_m: CantorMeasureValue
    mu_n: CantorMeasureValue
    mu_mn: CantorMeasureValue
    rho: Iv


@dataclass(frozen=True)
class ScanReport:
    window_measure: Fraction
    rows: tuple[PairRow, ...]
    skipped: tuple[tuple[int, int], ...]  # pairs with a null layer
    c_empirical: Optional[Iv]

    def row(self, m: int, n: int) -> PairRow:
        for r in self.rows:
            if r.m == m and r.n == n:
                return r
        raise KeyError((m, n))


def classify_pair_case(dset: MissingDigitSet, psi: ApproxFunction,
                       m: int, n: int) -> str:
    """Case "i" when b^-n >= 2 psi(b^m) forces empty intersections."""
    lhs = Fraction(dset.base) ** (-n)
    val = psi_value(psi, dset, m)
    if lhs >= 2 * val[1]:
        return "i"
    if lhs < 2 * val[0]:
        return "ii"
    raise PrecisionError(f"case split undecided for pair ({m},{n})")


def quasi_independence_scan(dset: MissingDigitSet, psi: ApproxFunction,
                            cfg: WindowConfig, n_max: int, m_min: int = 1,
                            coprime: bool = True) -> ScanReport:
    """Exact pairwise ratios rho = mu(A_m ∩ A_n) mu(B) / (mu(A_m) mu(A_n))."""
    if n_max <= m_min:
        raise InputError("need m_min < n_max")
    mu_b = measure_union(dset, [cfg.window.pair()])
    layers = {k: build_layer(dset, psi, k, cfg, coprime)
              for k in range(m_min, n_max + 1)}
    measures = {k: layer_measure(v) for k, v in layers.items()}
    rows = []
    skipped = []
    for m in range(m_min, n_max):
        for n in range(m + 1, n_max + 1):
            mm, mn = measures[m], measures[n]
            if mm.hi == 0 or mn.hi == 0:
                skipped.append((m, n))
                continue
            inter = pairwise_measure(layers[m], layers[n])
            denom = (mm.lo * mn.lo, mm.hi * mn.hi)
            rho = iv_scale(iv_div((inter.lo, inter.hi), denom), mu_b)
            rows.append(PairRow(m=m, n=n, case=classify_pair_case(dset, psi, m, n),
                                mu_m=mm, mu_n=mn, mu_mn=inter, rho=rho))
    c_emp = None
    if rows:
        c_emp = (max(r.rho[0] for r in rows), max(r.rho[1] for r in rows))
    return ScanReport(window_measure=mu_b, rows=tuple(rows),
                      skipped=tuple(skipped), c_empirical=c_emp)


# ---------------------------------------------------------------------------
# series dichotomy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesVerdict:
    partial_sums: tuple[Iv, ...]  # S_1 .. S_N
    verdict: str       # "convergent" | "divergent" | "undetermined"
    prediction: str    # "measure_zero" | "measure_full" | "not_applicable"

    @property
    def last(self) -> Iv:
        return self.partial_sums[-1]


_PREDICTION = {"convergent": "measure_zero",
               "divergent": "measure_full",
               "undetermined": "not_applicable"}


def series_term(dset: MissingDigitSet, psi: ApproxFunction, f: DimensionFunction,
                n: int, bits: int = VALUE_BITS) -> Iv:
    """f(psi(b^n)) * (b^n)^gamma; the second factor is exactly (#digits)^n."""
    return iv_scale(f_of_psi(f, psi, dset, n, bits), dset.digit_mass_pow(n))


def _analytic_verdict(dset: MissingDigitSet, psi: ApproxFunction,
                      f: DimensionFunction) -> str:
    if isinstance(f.kind, TableValues) or isinstance(psi.kind, TableValues):
        return "undetermined"
    s = f.kind.exponent
    if isinstance(psi.kind, PowerLaw):
        cmp = s.times(psi.kind.exponent).compare(GAMMA, dset)
        return "convergent" if cmp > 0 else "divergent"
    # power_log: exponential part decides unless it sits exactly on gamma,
    # in which case the log factor decides by the integral test
    kind = psi.kind
    cmp = s.times(kind.power).compare(GAMMA, dset)
    if cmp > 0:
        return "convergent"
    if cmp < 0:
        return "divergent"
    su = s.times(kind.log_exponent)
    return "convergent" if su.compare(Scalar.of(1), dset) > 0 else "divergent"


def series_classify(dset: MissingDigitSet, psi: ApproxFunction,
                    f: DimensionFunction, n_max: int) -> SeriesVerdict:
    """Partial sums plus the convergence verdict of the dichotomy series.

    Truncating psi by min(c/r, psi) changes neither side of the verdict
    (it lowers terms, and divergence survives the truncation), so the
    analytic verdict is computed for the untruncated family while the
    partial sums reflect the truncated values actually in force.
    """
    if not f.monotonicity_witness:
        raise HypothesisViolation("dimension function lacks its monotonicity witness")
    if n_max < 1:
        raise InputError("need at least one term")
    sums = []
    acc = iv_exact(_ZERO)
    undetermined_tail = False
    for n in range(1, n_max + 1):
        try:
            acc = iv_add(acc, series_term(dset, psi, f, n))
        except InputError:
            undetermined_tail = True
            break
        sums.append(acc)
    if not sums:
        raise InputError("no terms computable on the evaluation grid")
    verdict = "undetermined" if undetermined_tail else _analytic_verdict(dset, psi, f)
    return SeriesVerdict(partial_sums=tuple(sums), verdict=verdict,
                         prediction=_PREDICTION[verdict])


@dataclass(frozen=True)
class NaturalCoverTail:
    n0: int
    n_max: int
    value: Iv
    series_verdict: str


def natural_cover_tail(dset: MissingDigitSet, psi: ApproxFunction,
                       f: DimensionFunction, n0: int, n_max: int) -> NaturalCoverTail:
    """sum_{n0 <= n <= n_max} f(psi(b^n)) * #centers(n), the cover mass."""
    if n0 < 1 or n0 > n_max:
        raise InputError("need 1 <= n0 <= n_max")
    if not f.monotonicity_witness:
        raise HypothesisViolation("dimension function lacks its monotonicity witness")
    acc = iv_exact(_ZERO)
    for n in range(n0, n_max + 1):
        count = center_count(dset, n)
        acc = iv_add(acc, iv_scale(f_of_psi(f, psi, dset, n), Fraction(count)))
    try:
        verdict = _analytic_verdict(dset, psi, f)
    except InputError:
        verdict = "undetermined"
    return NaturalCoverTail(n0=n0, n_max=n_max, value=acc, series_verdict=verdict)


# ---------------------------------------------------------------------------
# Borel-Cantelli second-moment ratio
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BorelCantelliReport:
    q: int
    ratio: Iv
    union_measure: Fraction
    layer_measures: tuple[CantorMeasureValue, ...]


def borel_cantelli_ratio(dset: MissingDigitSet, psi: ApproxFunction,
                         cfg: WindowConfig, q: int,
                         coprime: bool = True) -> BorelCantelliReport:
    """(sum mu(E_s))^2 / sum_{s,t} mu(E_s ∩ E_t) with E_s the level-s layer."""
    if q < 1:
        raise InputError("need Q >= 1")
    layers = [build_layer(dset, psi, s, cfg, coprime) for s in range(1, q + 1)]
    measures = [layer_measure(l) for l in layers]
    if all(m.hi == 0 for m in measures):
        raise InputError("all layers are null: the ratio is undefined")
    num_lo = sum(m.lo for m in measures)
    num_hi = sum(m.hi for m in measures)
    den_lo = sum(m.lo for m in measures)
    den_hi = sum(m.hi for m in measures)
    for i in range(q):
        for j in range(i + 1, q):
            inter = pairwise_measure(layers[i], layers[j])
            den_lo += 2 * inter.lo
            den_hi += 2 * inter.hi
    ratio = iv_div((num_lo * num_lo, num_hi * num_hi), (den_lo, den_hi))
    union = measure_union(dset, merge_pairs(
        [p for l in layers for p in l.ball_pairs(l.radius[1])]))
    return BorelCantelliReport(q=q, ratio=ratio, union_measure=union,
                               layer_measures=tuple(measures))


# ---------------------------------------------------------------------------
# covering-exponent estimate at a single level
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoxDimensionEstimate:
    """Covering exponent of one finite-stage layer.

    This reports log(#covering intervals)/log(b^L) for the single layer
    at level n, the quantity the natural cover controls.  It is an
    empirical finite-stage trend toward gamma/tau, not a statement about
    the limsup set itself.
    """

    n: int
    level: int
    count: int
    estimate: Iv
    coprime: bool


def box_dimension_estimate(dset: MissingDigitSet, tau: Fraction, n: int,
                           coprime: bool, budget: int = None,
                           bits: int = 128) -> BoxDimensionEstimate:
    tau = Fraction(tau)
    if tau < 1:
        raise InputError("need tau >= 1")
    level = -((-tau * n).__floor__())  # ceil(tau*n)
    kwargs = {} if budget is None else {"budget": budget}
    b = dset.base
    bn = b ** n
    scale = b ** level  # counting grid
    radius = rational_pow(Fraction(b), -tau * n, bits)
    hit: set[int] = set()
    for p in enumerate_centers(dset, n, coprime, **kwargs):
        # cells [k, k+1]/scale meeting [c-r, c+r]: k in [c*scale - r*scale - 1, c*scale + r*scale]
        c_scaled = p * (scale // bn)
        k_lo_iv = (c_scaled - radius[1] * scale, c_scaled - radius[0] * scale)
        k_hi_iv = (c_scaled + radius[0] * scale, c_scaled + radius[1] * scale)
        k_first = -((-k_lo_iv[0]).__floor__()) - 1  # ceil(lo) - 1
        k_first_hi = -((-k_lo_iv[1]).__floor__()) - 1
        k_last = k_hi_iv[1].__floor__()
        k_last_lo = k_hi_iv[0].__floor__()
        if k_first != k_first_hi or k_last != k_last_lo:
            raise PrecisionError("counting boundary undecided; raise the radius precision")
        for k in range(max(k_first, 0), min(k_last, scale - 1) + 1):
            if k in hit:
                continue
            if dset.prefix_allowed(k, level):
                hit.add(k)
    count = len(hit)
    if count == 0:
        raise InputError("layer misses every basic interval at the counting level")
    if count == 1:
        est = iv_exact(_ZERO)
    else:
        src = LogRatioSource(Fraction(count), Fraction(scale))
        est = RealEnclosure.from_source(src).refined_to(Fraction(1, 1 << 48)).as_iv()
    return BoxDimensionEstimate(n=n, level=level, count=count, estimate=est,
                                coprime=coprime)

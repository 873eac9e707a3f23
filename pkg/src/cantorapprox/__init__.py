"""Exact-arithmetic toolkit for rational approximation on missing-digit
Cantor sets: exact self-similar measures, limsup-layer statistics, the
zero/full series dichotomy, and rigorous continued-fraction verification
of explicit sparse-digit numbers.

All certified computations run on exact rationals or directed-rounded
rational enclosures; every value is either exact or carries two-sided
bounds.
"""

from .digitsets import (CantorMeasureValue, MembershipResult, MissingDigitSet,
                        cantor_cdf, cantor_measure, center_count,
                        enumerate_centers, full_cover_check, measure_union,
                        membership)
from .enclosures import (AffineSource, LogRatioSource, RealEnclosure,
                         SqrtSource, canonicalize_rational, enclose_real,
                         floor_power, golden_ratio_source, iroot,
                         exact_order_threshold_source)
from .errors import (HypothesisViolation, InputError, PrecisionError,
                     ResourceBudgetError, UndecidableFloorError)
from .intervals import RatInterval
from .layers import (ApproxFunction, BorelCantelliReport, BoxDimensionEstimate,
                     DimensionFunction, Layer, NaturalCoverTail, PairRow, Scalar,
                     ScanReport, SeriesVerdict, WindowConfig,
                     borel_cantelli_ratio, box_dimension_estimate, build_layer,
                     layer_comparator, layer_measure, natural_cover_tail,
                     pairwise_measure, quasi_independence_scan, series_classify,
                     series_term, truncate_psi)
from .contfrac import (ContinuedFraction, ExponentEstimate, PrefixInterval,
                       cf_prefix_interval, continued_fraction_expand,
                       convergents_from_quotients,
                       irrationality_exponent_estimate, legendre_is_convergent,
                       prefix_interval_disjoint_from)
from .sparse import (FactorialRule, PowerRule, SparseDigitNumber,
                     TruncationReport, build_sparse_number,
                     exceeds_exact_order_threshold, te_inequality_holds,
                     truncation_report, truncation_reports,
                     well_approximable_band)

__version__ = "0.1.0"

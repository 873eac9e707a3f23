"""Batch command-line front end.

Every run emits a deterministic report: identical argv produces
byte-identical output (keys sorted, rationals as exact num/den strings
with decimal renderings).  Wall-clock timing is only included with
--timing, which is documented as non-deterministic.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from typing import Optional

from . import calibration, enclosures, render
from .contfrac import (cf_prefix_interval, continued_fraction_expand,
                       irrationality_exponent_estimate, legendre_is_convergent,
                       prefix_interval_disjoint_from)
from .digitsets import MissingDigitSet, cantor_measure, full_cover_check, membership
from .enclosures import (AffineSource, RealEnclosure, SqrtSource,
                         golden_ratio_source)
from .errors import InputError, PrecisionError, ResourceBudgetError
from .intervals import RatInterval
from .layers import (ApproxFunction, DimensionFunction, Scalar, WindowConfig,
                     borel_cantelli_ratio, box_dimension_estimate, build_layer,
                     layer_comparator, layer_measure, natural_cover_tail,
                     pairwise_measure, quasi_independence_scan, series_classify,
                     truncate_psi)
from .sparse import (FactorialRule, PowerRule, SparseDigitNumber,
                     build_sparse_number, truncation_reports)

SCHEMA_VERSION = "1"


# ---------------------------------------------------------------------------
# value parsing
# ---------------------------------------------------------------------------

def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {text!r}") from exc


def parse_scalar(text: str) -> Scalar:
    """rational | gamma | C*gamma | gamma/C | C/gamma."""
    t = text.strip()
    if t == "gamma":
        return Scalar(Fraction(1), 1)
    if t.endswith("*gamma"):
        return Scalar(parse_fraction(t[:-6]), 1)
    if t.startswith("gamma/"):
        return Scalar(1 / parse_fraction(t[6:]), 1)
    if t.endswith("/gamma"):
        return Scalar(parse_fraction(t[:-6]), -1)
    return Scalar(parse_fraction(t), 0)


def parse_set(text: str) -> MissingDigitSet:
    try:
        base_s, digits_s = text.split(":")
        return MissingDigitSet(int(base_s), tuple(int(d) for d in digits_s.split(",")))
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad set spec {text!r}; expected BASE:D1,D2,...") from exc


def parse_window(text: str) -> RatInterval:
    try:
        lo_s, hi_s = text.split(":")
    except ValueError as exc:
        raise InputError(f"bad window {text!r}; expected LO:HI") from exc
    return RatInterval.make(parse_fraction(lo_s), parse_fraction(hi_s))


def parse_table(text: str) -> dict[int, Fraction]:
    out = {}
    for item in text.split(","):
        k, v = item.split("=")
        out[int(k)] = parse_fraction(v)
    return out


def parse_psi(text: str, trunc: Optional[str]) -> ApproxFunction:
    kind, _, arg = text.partition(":")
    if kind == "pow":
        sc = parse_scalar(arg)
        psi = ApproxFunction.power(sc.coef, sc.gexp)
    elif kind == "powlog":
        alpha_s, _, beta_s = arg.partition(",")
        if not beta_s:
            raise InputError("powlog needs ALPHA,BETA")
        psi = ApproxFunction.power_log(parse_fraction(alpha_s), parse_scalar(beta_s))
    elif kind == "table":
        psi = ApproxFunction.table(parse_table(arg))
    else:
        raise InputError(f"unknown psi kind {kind!r}")
    if trunc is not None:
        psi = truncate_psi(psi, parse_fraction(trunc))
    return psi


def parse_f(text: str, table_witness: bool = True) -> DimensionFunction:
    kind, _, arg = text.partition(":")
    if kind == "pow":
        sc = parse_scalar(arg)
        return DimensionFunction.power(sc.coef, sc.gexp)
    if kind == "table":
        return DimensionFunction.table(parse_table(arg), table_witness)
    raise InputError(f"unknown f kind {kind!r}")


def build_rule(args) -> PowerRule | FactorialRule:
    if args.rule == "factorial":
        return FactorialRule()
    tau = parse_fraction(args.tau)
    lam = parse_fraction(getattr(args, "lam", "1") or "1")
    return PowerRule(tau, lam)


def build_xi(args) -> SparseDigitNumber:
    return build_sparse_number(args.base_override or 3, args.coeff, build_rule(args),
                               args.terms)


def parse_x(args):
    """The --x argument: symbolic constant, rational, or the xi construction."""
    t = args.x
    if t == "golden":
        return RealEnclosure.from_source(golden_ratio_source())
    if t == "gamma":
        dset = parse_set(args.set)
        return dset.exponent_enclosure()
    if t.startswith("sqrt:"):
        return RealEnclosure.from_source(SqrtSource(parse_fraction(t[5:])))
    if t == "xi":
        return build_xi(args)
    return parse_fraction(t)


# ---------------------------------------------------------------------------
# subcommand implementations: each returns (results, csv_rows, csv_fields)
# ---------------------------------------------------------------------------

def _psi_of(args) -> ApproxFunction:
    return parse_psi(args.psi, args.trunc)


def _window_cfg(args, dset) -> WindowConfig:
    return WindowConfig.for_window(parse_window(args.window), dset.base)


def cmd_measure(args, dset):
    iv = parse_window(args.window)
    mv = cantor_measure(dset, iv)
    results = {"window": {"lo": render.rational_json(iv.lo),
                          "hi": render.rational_json(iv.hi)},
               "measure": render.value_json(mv)}
    rows = [{"lo": render.rat_str(iv.lo), "hi": render.rat_str(iv.hi),
             "measure": render.value_csv(mv), "approx_lossy": render.lossy_float(mv.lo)}]
    return results, rows, ["lo", "hi", "measure", "approx_lossy"]


def cmd_layer(args, dset):
    cfg = _window_cfg(args, dset)
    layer = build_layer(dset, _psi_of(args), args.n, cfg, args.coprime)
    mv = layer_measure(layer)
    comp = layer_comparator(dset, _psi_of(args), args.n,
                            cantor_measure(dset, cfg.window).value)
    results = {
        "n": args.n,
        "coprime": args.coprime,
        "t0": cfg.t0,
        "ball_count": len(layer.centers),
        "centers": [render.rational_json(c) for c in layer.centers],
        "radius": render.value_json(layer.radius),
        "disjoint": layer.disjoint,
        "measure": render.value_json(mv),
        "comparator": render.value_json(comp),
    }
    rows = [{"n": args.n, "ball_count": len(layer.centers),
             "radius": render.value_csv(layer.radius),
             "measure": render.value_csv(mv),
             "comparator": render.value_csv(comp),
             "approx_lossy": render.lossy_float(mv.lo)}]
    return results, rows, ["n", "ball_count", "radius", "measure", "comparator",
                           "approx_lossy"]


def cmd_pairwise(args, dset):
    cfg = _window_cfg(args, dset)
    psi = _psi_of(args)
    lm = build_layer(dset, psi, args.m, cfg, args.coprime)
    ln_ = build_layer(dset, psi, args.n, cfg, args.coprime)
    inter = pairwise_measure(lm, ln_)
    results = {"m": args.m, "n": args.n,
               "mu_m": render.value_json(layer_measure(lm)),
               "mu_n": render.value_json(layer_measure(ln_)),
               "mu_mn": render.value_json(inter)}
    rows = [{"m": args.m, "n": args.n,
             "mu_m": render.value_csv(layer_measure(lm)),
             "mu_n": render.value_csv(layer_measure(ln_)),
             "mu_mn": render.value_csv(inter),
             "approx_lossy": render.lossy_float(inter.lo)}]
    return results, rows, ["m", "n", "mu_m", "mu_n", "mu_mn", "approx_lossy"]


def _scan_row_payload(row):
    return {"m": row.m, "n": row.n, "case": row.case,
            "mu_m": render.value_csv(row.mu_m), "mu_n": render.value_csv(row.mu_n),
            "mu_mn": render.value_csv(row.mu_mn), "rho": render.value_csv(row.rho)}


def _scan_pair_worker(packed):
    set_s, psi_s, trunc_s, window_s, m, n, coprime = packed
    dset = parse_set(set_s)
    psi = parse_psi(psi_s, trunc_s)
    cfg = WindowConfig.for_window(parse_window(window_s), dset.base)
    from .layers import PairRow, classify_pair_case
    lm = build_layer(dset, psi, m, cfg, coprime)
    ln_ = build_layer(dset, psi, n, cfg, coprime)
    mm, mn = layer_measure(lm), layer_measure(ln_)
    if mm.hi == 0 or mn.hi == 0:
        return (m, n, None)
    inter = pairwise_measure(lm, ln_)
    from .digitsets import measure_union
    mu_b = measure_union(dset, [cfg.window.pair()])
    from .enclosures import iv_div, iv_scale
    rho = iv_scale(iv_div((inter.lo, inter.hi), (mm.lo * mn.lo, mm.hi * mn.hi)), mu_b)
    return (m, n, PairRow(m=m, n=n, case=classify_pair_case(dset, psi, m, n),
                          mu_m=mm, mu_n=mn, mu_mn=inter, rho=rho))


def cmd_quasi_scan(args, dset):
    cfg = _window_cfg(args, dset)
    psi = _psi_of(args)
    if args.workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        pairs = [(args.set, args.psi, args.trunc, args.window, m, n, args.coprime)
                 for m in range(args.mmin, args.nmax)
                 for n in range(m + 1, args.nmax + 1)]
        rows = []
        skipped = []
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            for m, n, row in pool.map(_scan_pair_worker, pairs):
                if row is None:
                    skipped.append((m, n))
                else:
                    rows.append(row)
        from .digitsets import measure_union
        from .layers import ScanReport
        mu_b = measure_union(dset, [cfg.window.pair()])
        c_emp = None
        if rows:
            c_emp = (max(r.rho[0] for r in rows), max(r.rho[1] for r in rows))
        rep = ScanReport(window_measure=mu_b, rows=tuple(rows),
                         skipped=tuple(skipped), c_empirical=c_emp)
    else:
        rep = quasi_independence_scan(dset, psi, cfg, args.nmax, args.mmin,
                                      args.coprime)
    results = {
        "window_measure": render.rational_json(rep.window_measure),
        "pairs": [_scan_row_payload(r) for r in rep.rows],
        "skipped_null_pairs": [list(p) for p in rep.skipped],
        "c_empirical": render.value_json(rep.c_empirical) if rep.c_empirical else None,
    }
    rows = [_scan_row_payload(r) for r in rep.rows]
    return results, rows, ["m", "n", "case", "mu_m", "mu_n", "mu_mn", "rho"]


def cmd_series(args, dset):
    psi = _psi_of(args)
    f = parse_f(args.f)
    sv = series_classify(dset, psi, f, args.nmax)
    if hasattr(f.kind, "exponent"):
        mode = "exact-gamma" if f.kind.exponent.gexp != 0 else "rational-approximation"
    else:
        mode = "table"
    results = {
        "verdict": sv.verdict,
        "prediction": sv.prediction,
        "exponent_mode": mode,
        "partial_sums": [render.value_json(s) for s in sv.partial_sums],
    }
    rows = [{"N": i + 1, "partial_sum": render.value_csv(s),
             "approx_lossy": render.lossy_float(s[0])}
            for i, s in enumerate(sv.partial_sums)]
    return results, rows, ["N", "partial_sum", "approx_lossy"]


def cmd_tail(args, dset):
    tail = natural_cover_tail(dset, _psi_of(args), parse_f(args.f), args.n0, args.nmax)
    results = {"n0": tail.n0, "n_max": tail.n_max,
               "value": render.value_json(tail.value),
               "series_verdict": tail.series_verdict}
    rows = [{"n0": tail.n0, "n_max": tail.n_max,
             "value": render.value_csv(tail.value),
             "series_verdict": tail.series_verdict}]
    return results, rows, ["n0", "n_max", "value", "series_verdict"]


def cmd_bc_ratio(args, dset):
    cfg = _window_cfg(args, dset)
    rep = borel_cantelli_ratio(dset, _psi_of(args), cfg, args.q, args.coprime)
    results = {"Q": rep.q, "ratio": render.value_json(rep.ratio),
               "union_measure": render.rational_json(rep.union_measure),
               "layer_measures": [render.value_json(m) for m in rep.layer_measures]}
    rows = [{"Q": rep.q, "ratio": render.value_csv(rep.ratio),
             "union_measure": render.rat_str(rep.union_measure)}]
    return results, rows, ["Q", "ratio", "union_measure"]


def cmd_dim_estimate(args, dset):
    est = box_dimension_estimate(dset, parse_fraction(args.tau), args.n, args.coprime)
    results = {"n": est.n, "level": est.level, "count": est.count,
               "coprime": est.coprime, "estimate": render.value_json(est.estimate)}
    rows = [{"n": est.n, "level": est.level, "count": est.count,
             "estimate": render.value_csv(est.estimate),
             "approx_lossy": render.lossy_float(est.estimate[0])}]
    return results, rows, ["n", "level", "count", "estimate", "approx_lossy"]


# integers beyond this bit size are summarized, not printed (int->str is
# quadratic and capped by the interpreter)
RENDER_INT_BITS = 12_000


def _feasible_truncations(x: SparseDigitNumber):
    out = []
    for s in range(1, x.terms + 1):
        if x.exponent(s) * x.base.bit_length() > RENDER_INT_BITS:
            break
        try:
            p, q = x.truncation(s)
        except PrecisionError:
            break
        out.append((s, p, q))
    return out


def cmd_xi_build(args, dset):
    x = build_xi(args)
    truncs = _feasible_truncations(x)
    results = {
        "base": x.base, "coefficient": x.coefficient, "terms": x.terms,
        "rule": args.rule,
        "exponents": list(x.exponents_up_to(x.terms)),
        "truncations": [{"s": s, "p": str(p), "q": str(q)} for s, p, q in truncs],
    }
    rows = [{"s": s, "exponent": x.exponent(s), "p": p, "q": q}
            for s, p, q in truncs]
    return results, rows, ["s", "exponent", "p", "q"]


def cmd_xi_verify(args, dset):
    x = build_xi(args)
    reports, s_min = truncation_reports(x)
    depth = args.depth or x.exponent(x.terms)
    verdict = membership(x, dset, depth)
    cf = continued_fraction_expand(x, args.cf_depth)
    legendre = []
    for s in range(1, x.terms):
        p, q = x.truncation(s)
        legendre.append({"s": s, "verdict": legendre_is_convergent(p, q, x, cf)})
    rows = []
    for rep in reports:
        rows.append({
            "s": rep.s, "coprime_ok": rep.coprime_ok,
            "denominator_growth_ok": rep.denominator_growth_ok,
            "gap_bounds_ok": rep.gap_bounds_ok,
            "power_bounds_ok": rep.power_bounds_ok,
            "passes": rep.passes,
        })
    results = {
        "membership": {"depth": depth, "verdict": verdict.kind},
        "s_min": s_min,
        "truncation_checks": rows,
        "legendre": legendre,
        "cf_certified_depth": cf.certified_depth,
    }
    return results, rows, ["s", "coprime_ok", "denominator_growth_ok",
                           "gap_bounds_ok", "power_bounds_ok", "passes"]


def cmd_cf(args, dset):
    x = parse_x(args)
    cf = continued_fraction_expand(x, args.depth)
    printable = [pq for pq in cf.convergents if pq[1].bit_length() <= RENDER_INT_BITS]
    results = {
        "quotients": list(cf.quotients),
        "convergents": [{"p": str(p), "q": str(q)} for p, q in printable],
        "convergents_omitted": len(cf.convergents) - len(printable),
        "exact": cf.exact,
        "certified_depth": cf.certified_depth,
        "exhausted": cf.exhausted,
    }
    rows = [{"k": i + 1, "a": a, "p": p, "q": q}
            for i, (a, (p, q)) in enumerate(zip(cf.quotients, printable))]
    return results, rows, ["k", "a", "p", "q"]


def cmd_exponent(args, dset):
    x = parse_x(args)
    cf = continued_fraction_expand(x, args.depth)
    est = irrationality_exponent_estimate(cf, args.min_q)
    results = {
        "estimate": render.value_json((est.lo, est.hi)),
        "witnesses": [{"q": str(a), "q_next": str(b)} for a, b in est.witnesses],
        "window": est.window,
        "min_denominator": est.min_denominator,
        "cf_certified_depth": cf.certified_depth,
    }
    rows = [{"estimate": render.value_csv((est.lo, est.hi)),
             "window": est.window, "min_denominator": est.min_denominator}]
    return results, rows, ["estimate", "window", "min_denominator"]


def cmd_cf_interval(args, dset):
    quotients = [int(a) for a in args.quotients.split(",")]
    pi = cf_prefix_interval(quotients)
    disjoint = prefix_interval_disjoint_from(pi, dset, args.depth)
    results = {
        "quotients": quotients,
        "interval": {
            "lo": render.rational_json(pi.lo), "hi": render.rational_json(pi.hi),
            "lo_closed": pi.lo_closed, "hi_closed": pi.hi_closed,
        },
        "depth": args.depth,
        "disjoint_from_set": disjoint,
        "verdict": "not_in_set" if disjoint else "undetermined_at_depth",
    }
    rows = [{"quotients": ";".join(str(a) for a in quotients),
             "lo": render.rat_str(pi.lo), "hi": render.rat_str(pi.hi),
             "lo_closed": pi.lo_closed, "hi_closed": pi.hi_closed,
             "disjoint_from_set": disjoint}]
    return results, rows, ["quotients", "lo", "hi", "lo_closed", "hi_closed",
                           "disjoint_from_set"]


def cmd_full_cover(args, dset):
    window = parse_window(args.window)
    ok = full_cover_check(dset, args.n, window)
    results = {"n": args.n, "window": {"lo": render.rational_json(window.lo),
                                       "hi": render.rational_json(window.hi)},
               "full_cover": ok}
    rows = [{"n": args.n, "lo": render.rat_str(window.lo),
             "hi": render.rat_str(window.hi), "full_cover": ok}]
    return results, rows, ["n", "lo", "hi", "full_cover"]


COMMANDS = {
    "measure": cmd_measure,
    "layer": cmd_layer,
    "pairwise": cmd_pairwise,
    "quasi-scan": cmd_quasi_scan,
    "series": cmd_series,
    "tail": cmd_tail,
    "bc-ratio": cmd_bc_ratio,
    "dim-estimate": cmd_dim_estimate,
    "xi-build": cmd_xi_build,
    "xi-verify": cmd_xi_verify,
    "cf": cmd_cf,
    "exponent": cmd_exponent,
    "cf-interval": cmd_cf_interval,
    "full-cover": cmd_full_cover,
}


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--set", default="3:0,2", help="BASE:D1,D2,... (default middle thirds)")
    p.add_argument("--config", default=None, help="key=value config file")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--output", choices=("json", "csv"), default="json")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--precision-budget", type=int, default=None,
                   help="override the enclosure refinement step cap")
    p.add_argument("--timing", action="store_true",
                   help="include wall-clock timing (non-deterministic)")


def _add_psi(p):
    p.add_argument("--psi", required=True, help="pow:T | powlog:A,B | table:n=v,...")
    p.add_argument("--trunc", default=None, help="truncation constant c for min(c/r, psi)")


def _add_window(p):
    p.add_argument("--window", default="0:1", help="LO:HI window interval")
    p.add_argument("--coprime", action=argparse.BooleanOptionalAction, default=True)


def _add_xi(p):
    p.add_argument("--rule", choices=("pow", "factorial"), default="pow")
    p.add_argument("--tau", default="3")
    p.add_argument("--lam", default="1")
    p.add_argument("--coeff", type=int, default=2)
    p.add_argument("--terms", type=int, default=5)
    p.add_argument("--base-override", type=int, default=None,
                   help="base for the sparse number (defaults to 3)")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="cantorapprox",
                                  description=__doc__.splitlines()[0])
    subs = top.add_subparsers(dest="command", required=True)

    def sub(name):
        p = subs.add_parser(name)
        _add_common(p)
        return p

    p = sub("measure")
    p.add_argument("--window", required=True, help="LO:HI interval to measure")

    p = sub("layer")
    _add_psi(p); _add_window(p)
    p.add_argument("--n", type=int, required=True)

    p = sub("pairwise")
    _add_psi(p); _add_window(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub("quasi-scan")
    _add_psi(p); _add_window(p)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--mmin", type=int, default=1)

    p = sub("series")
    _add_psi(p)
    p.add_argument("--f", required=True, help="pow:S | table:n=v,...")
    p.add_argument("--nmax", type=int, required=True)

    p = sub("tail")
    _add_psi(p)
    p.add_argument("--f", required=True)
    p.add_argument("--n0", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)

    p = sub("bc-ratio")
    _add_psi(p); _add_window(p)
    p.add_argument("--q", type=int, required=True)

    p = sub("dim-estimate")
    p.add_argument("--tau", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coprime", action=argparse.BooleanOptionalAction, default=True)

    p = sub("xi-build")
    _add_xi(p)

    p = sub("xi-verify")
    _add_xi(p)
    p.add_argument("--depth", type=int, default=None,
                   help="membership depth (default: the last exponent)")
    p.add_argument("--cf-depth", type=int, default=60)

    p = sub("cf")
    _add_xi(p)
    p.add_argument("--x", required=True, help="golden | gamma | sqrt:N | xi | rational")
    p.add_argument("--depth", type=int, required=True)

    p = sub("exponent")
    _add_xi(p)
    p.add_argument("--x", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--min-q", type=int, default=2)

    p = sub("cf-interval")
    p.add_argument("--quotients", required=True, help="comma-separated positive integers")
    p.add_argument("--depth", type=int, required=True)

    p = sub("full-cover")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--window", default="0:1")

    return top


def _apply_config_file(argv: list[str]) -> list[str]:
    """Splice key=value file entries in as flags ahead of explicit ones."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    try:
        path = argv[idx + 1]
    except IndexError:
        raise InputError("--config needs a path")
    extra: list[str] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if value.lower() in ("true", "false") and key in ("coprime", "timing"):
                extra.append(f"--{key}" if value.lower() == "true" else f"--no-{key}")
            else:
                extra.extend([f"--{key}", value])
    return argv[:1] + extra + argv[1:]


def _calibration_payload() -> dict:
    env = {str(k): {"lo": render.rational_json(v[0]), "hi": render.rational_json(v[1])}
           for k, v in calibration.MU_RATIO_ENVELOPE.items()}
    return {"c_fix": render.rational_json(calibration.C_FIX),
            "mu_ratio_envelope": env}


def run_command(argv: list[str]) -> tuple[str, Optional[str]]:
    """Returns (report text, output path or None)."""
    argv = _apply_config_file(argv)
    args = build_parser().parse_args(argv)
    if args.precision_budget is not None:
        if args.precision_budget < 1:
            raise InputError("precision budget must be >= 1")
        enclosures.MAX_REFINE_STEPS = args.precision_budget
    dset = parse_set(args.set)
    start = time.monotonic()
    results, rows, fields = COMMANDS[args.command](args, dset)
    elapsed_ms = int((time.monotonic() - start) * 1000)
    if args.output == "csv":
        return render.dump_csv(rows, fields), args.out
    echo = {k: (v if isinstance(v, (int, bool, float)) or v is None else str(v))
            for k, v in sorted(vars(args).items())
            if k not in ("config", "out", "output", "timing")}
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "config_echo": echo,
        "results": results,
        "calibration_constants_used": _calibration_payload(),
        "timing_ms": elapsed_ms if args.timing else None,
    }
    return render.dump_report(report), args.out


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        text, out_path = run_command(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceBudgetError, PrecisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

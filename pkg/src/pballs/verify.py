"""Named verification suites over the (n, p) identities and bounds.

Every suite returns a list of :class:`Check` records and performs no I/O,
so the CLI and the test suite can share one implementation.  Tolerances
are fixed here, next to the grids they apply to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import moment_product_log
from .gamma_core import (
    DEFAULT_POLICY,
    TruncationPolicy,
    gamma_ratio_product,
    signed_ln_gamma,
)
from .moments import (
    Sign,
    bound_comparator,
    derivative_sign_series,
    f_endpoint,
    f_gamma,
    f_product,
    kuperberg_bound,
    per_term_minimum,
    remark_limit_check,
)
from .montecarlo import MCConfig, _stream_rng, estimate_f, estimate_f_factored, sample_ball
from .pball import as_exponent, normalized_second_moment

__all__ = ["Check", "SUITE_NAMES", "run_suite"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


def _check(name: str, passed: bool, detail: str) -> Check:
    return Check(name, bool(passed), detail)


# --------------------------------------------------------------------------
# grids

# 40 exponents spanning [1, inf], both endpoints included.
BOUND_P_GRID = (
    [1.0]
    + [1.0 + 0.05 * i for i in range(1, 21)]
    + [2.25, 2.5, 2.75, 3.0, 3.5, 4.0, 5.0, 6.5, 8.0, 10.0, 15.0, 20.0, 35.0, 60.0, 100.0]
    + [1e3, 1e4, 1e6]
    + [math.inf]
)

ROUTE_P_GRID = (1.0, 1.1, 1.25, 1.5, 1.75, 2.0)

GAMMA_RATIO_X_GRID = (0.1, 0.5, 1.0, 2.0, 10.0, 100.0)
GAMMA_RATIO_A_GRID = (-0.9, -0.5, 0.0, 0.25, 0.5, 0.9)

SIGN_T_GRID = (0.01, 0.05, 0.1, 0.2, 0.25)

INEQ3_T_GRID = (0.01, 0.25, 1.0, 10.0)
INEQ3_K_MAX = 10_000

COMPARATOR_PAIRS_LOW = (
    (1.0, 2.0), (1.0, 1.5), (1.2, 1.8), (1.5, 2.0), (1.1, 1.3),
    (1.25, 1.75), (1.4, 1.9), (1.6, 2.0), (1.05, 1.95), (1.3, 1.6),
)
COMPARATOR_PAIRS_HIGH = (
    (2.0, 3.0), (2.0, math.inf), (2.5, 4.0), (3.0, 10.0), (2.0, 2.5),
    (4.0, 8.0), (5.0, 100.0), (2.2, 6.0), (3.0, math.inf), (10.0, math.inf),
)

MC_P_GRID = (1.0, 1.4, 2.0, 3.0, math.inf)
MC_MOMENT_P_GRID = (1.0, 1.5, 2.0, 3.0, math.inf)
MC_MOMENT_N_GRID = (1, 2, 3, 5)


def _geomspace(lo: float, hi: float, count: int) -> list[float]:
    step = (math.log(hi) - math.log(lo)) / (count - 1)
    pts = [math.exp(math.log(lo) + step * i) for i in range(count)]
    pts[0], pts[-1] = lo, hi
    return pts


# --------------------------------------------------------------------------
# endpoints

def suite_endpoints() -> list[Check]:
    checks = []

    worst = 0.0
    for n in range(1, 101):
        target = n / ((n + 2) ** 2)
        got = f_gamma(n, 2.0).value
        worst = max(worst, abs(got - target) / target)
    checks.append(_check(
        "self-dual-value", worst <= 1e-12,
        f"f(n,2) vs n/(n+2)^2 for n=1..100, worst rel dev {worst:.3g}",
    ))

    worst = 0.0
    for n in range(1, 101):
        target = f_endpoint(n)
        for p in (1.0, math.inf):
            got = f_gamma(n, p).value
            worst = max(worst, abs(got - target) / target)
    checks.append(_check(
        "endpoint-value", worst <= 1e-12,
        f"f(n,1)=f(n,inf)=2n/(3(n+1)(n+2)) for n=1..100, worst rel dev {worst:.3g}",
    ))

    worst = 0.0
    for n in range(1, 21):
        target = f_endpoint(n)
        got = f_gamma(n, 1.0 + 1e-6).value
        worst = max(worst, abs(got - target) / target)
    checks.append(_check(
        "endpoint-continuity", worst <= 1e-4,
        f"f(n, 1+1e-6) vs endpoint value for n=1..20, worst rel dev {worst:.3g}",
    ))

    return checks


# --------------------------------------------------------------------------
# routes

def suite_routes(policy: TruncationPolicy = DEFAULT_POLICY) -> list[Check]:
    checks = []

    worst_excess = -math.inf
    for n in range(1, 51):
        for p in ROUTE_P_GRID:
            fg = f_gamma(n, p).value
            fp = f_product(n, p, policy)
            allowed = fp.error_estimate + 1e-10 * fg
            worst_excess = max(worst_excess, abs(fg - fp.value) - allowed)
    checks.append(_check(
        "route-equivalence", worst_excess <= 0.0,
        "gamma vs product on n=1..50 x p={1,1.1,1.25,1.5,1.75,2}, "
        f"worst dev-minus-allowance {worst_excess:.3g}",
    ))

    worst = 0.0
    for i in range(1, 21):
        n = i
        p = 1.025 + 0.0475 * (i - 1)
        a = f_gamma(n, p).value
        b = f_gamma(n, as_exponent(p).conjugate()).value
        worst = max(worst, abs(a - b) / a)
    checks.append(_check(
        "conjugate-symmetry", worst <= 1e-12,
        f"f(n,p) vs f(n,q) on 20 pairs with p in (1,2), worst rel dev {worst:.3g}",
    ))

    worst_excess = -math.inf
    cells = 0
    for x in GAMMA_RATIO_X_GRID:
        for a in GAMMA_RATIO_A_GRID:
            s = x + a
            if s <= 0.0 and s == math.floor(s):
                continue  # gamma pole, excluded by the operation's domain
            cells += 1
            if a == 0.0:
                ref_sign, ref_log = 1.0, 0.0
            else:
                s1, l1 = signed_ln_gamma(1.0 - a)
                s2, l2 = signed_ln_gamma(x + a)
                s3, l3 = signed_ln_gamma(x)
                ref_sign, ref_log = s1 * s2 * s3, l1 + l2 - l3
            got = gamma_ratio_product(x, a, policy)
            sign_ok = math.copysign(1.0, got.value) == ref_sign
            dev = abs(math.log(abs(got.value)) - ref_log) if got.value != 0.0 else math.inf
            allowed = got.tail_bound + 1e-10
            if not sign_ok:
                worst_excess = math.inf
            worst_excess = max(worst_excess, dev - allowed)
    checks.append(_check(
        "gamma-ratio-product", worst_excess <= 0.0,
        f"product vs log-gamma route on {cells} (x,a) cells, "
        f"worst log-dev-minus-bound {worst_excess:.3g}",
    ))

    return checks


# --------------------------------------------------------------------------
# monotonicity / bound / derivative signs

def _fixed_terms_product_value(n: int, t: float, terms: int) -> float:
    log_sum, _ = moment_product_log(float(n), t, 1, terms)
    return (n / 9.0) * math.exp(log_sum)


def _p_of_t(t: float) -> float:
    # root of t*p^2 - p + 1 = 0 in [1, 2], written without cancellation
    return 2.0 / (1.0 + math.sqrt(1.0 - 4.0 * t))


def _fd_derivative_sign(n: int, t: float, step: float = 1e-5) -> float:
    """Central difference of f in t; the product route (fixed term count on
    both sides, so truncation bias cancels) continues f past t = 1/4 where
    no real exponent exists."""
    if t + step <= 0.25:
        lo = f_gamma(n, _p_of_t(t - step)).value
        hi = f_gamma(n, _p_of_t(t + step)).value
    else:
        lo = _fixed_terms_product_value(n, t - step, 200_000)
        hi = _fixed_terms_product_value(n, t + step, 200_000)
    return hi - lo


def suite_monotonicity() -> list[Check]:
    checks = []

    min_margin = math.inf
    for n in range(1, 101):
        bound = kuperberg_bound(n)
        for p in BOUND_P_GRID:
            value = f_gamma(n, p).value
            min_margin = min(min_margin, bound - value)
    checks.append(_check(
        "kuperberg-bound", min_margin >= -1e-12,
        f"f <= n/(n+2)^2 + 1e-12 on n=1..100 x 40 p-values, min margin {min_margin:.3g}",
    ))

    inc_grid = [1.0 + 0.05 * i for i in range(21)]
    dec_grid = _geomspace(2.0, 100.0, 20) + [math.inf]
    ok_inc = ok_dec = True
    for n in range(2, 21):
        vals_inc = [f_gamma(n, p).value for p in inc_grid]
        ok_inc &= all(b - a > 1e-12 for a, b in zip(vals_inc, vals_inc[1:]))
        vals_dec = [f_gamma(n, p).value for p in dec_grid]
        ok_dec &= all(a - b > 1e-12 for a, b in zip(vals_dec, vals_dec[1:]))
    checks.append(_check(
        "monotone-increasing", ok_inc,
        "f strictly increasing on 21-point grid in [1,2] for n=2..20",
    ))
    checks.append(_check(
        "monotone-decreasing", ok_dec,
        "f strictly decreasing on 21-point grid in [2,100]+{inf} for n=2..20",
    ))

    worst = 0.0
    for p in (1.0, 1.3, 2.0, 5.0, math.inf):
        worst = max(worst, abs(f_gamma(1, p).value - 1.0 / 9.0) * 9.0)
    checks.append(_check(
        "constant-at-n1", worst <= 1e-12,
        f"f(1,p) = 1/9 across p grid, worst rel dev {worst:.3g}",
    ))

    series_policy = TruncationPolicy(max_terms=200_000, rel_tol=1e-8)
    sign_ok = True
    bad = []
    for n in range(2, 21):
        for t in SIGN_T_GRID:
            report = derivative_sign_series(n, t, series_policy)
            fd = _fd_derivative_sign(n, t)
            agrees = report.sign == Sign.POSITIVE and fd > 0.0
            if not agrees:
                sign_ok = False
                bad.append((n, t))
    n1 = derivative_sign_series(1, 0.2, series_policy)
    n1_ok = abs(n1.series_value) < 1e-12
    checks.append(_check(
        "derivative-sign", sign_ok and n1_ok,
        "series sign vs central difference for n=2..20, t in {0.01,0.05,0.1,0.2,0.25}"
        + (f", disagreements {bad}" if bad else "")
        + f"; n=1 series value {n1.series_value:.3g}",
    ))

    return checks


# --------------------------------------------------------------------------
# per-term inequality grid

def suite_ineq3() -> list[Check]:
    failures = []
    global_min = math.inf
    for n in range(2, 51):
        for t in INEQ3_T_GRID:
            mn, arg = per_term_minimum(n, t, INEQ3_K_MAX)
            global_min = min(global_min, mn)
            if mn <= 0.0:
                failures.append((n, t, arg, mn))
    detail = (
        f"printed per-term polynomial on k=1..{INEQ3_K_MAX}, n=2..50, "
        f"t in {INEQ3_T_GRID}, global min {global_min:.6g}"
    )
    if failures:
        detail += f"; FAILURES {failures}"
    return [_check("per-term-positivity", not failures, detail)]


# --------------------------------------------------------------------------
# limit check

def suite_remark_limit() -> list[Check]:
    worst = 0.0
    for n in range(1, 21):
        got = remark_limit_check(n, 1e6)
        worst = max(worst, abs(got - (n + 2) / 3.0))
    return [_check(
        "gamma-ratio-limit", worst <= 1e-4,
        f"ratio at q=1e6 vs (n+2)/3 for n=1..20, worst abs dev {worst:.3g}",
    )]


# --------------------------------------------------------------------------
# comparators

def suite_corollaries(policy: TruncationPolicy | None = None) -> list[Check]:
    if policy is None:
        policy = TruncationPolicy(max_terms=200_000, rel_tol=1e-10)
    doubled = policy.doubled()
    checks = []
    for label, pairs in (("forward", COMPARATOR_PAIRS_LOW), ("reversed", COMPARATOR_PAIRS_HIGH)):
        ok = True
        bad = []
        for n in (2, 5, 20):
            for r, s in pairs:
                base = bound_comparator(n, r, s, policy)
                more = bound_comparator(n, r, s, doubled)
                if not (base.verdict and more.verdict):
                    ok = False
                    bad.append((n, r, s))
        checks.append(_check(
            f"comparator-{label}", ok,
            f"10 (r,s) pairs x n in {{2,5,20}}, verdicts stable under doubled terms"
            + (f"; FAILURES {bad}" if bad else ""),
        ))
    return checks


# --------------------------------------------------------------------------
# Monte Carlo

def suite_mc(samples: int = 1_000_000, seed: int = 42, streams: int = 8) -> list[Check]:
    checks = []

    ok = True
    worst_pull = 0.0
    idx = 0
    for n in range(1, 6):
        for p in MC_P_GRID:
            est = estimate_f(n, p, MCConfig(samples, seed + idx, streams))
            idx += 1
            target = f_gamma(n, p).value
            pull = abs(est.mean - target) / est.std_error
            worst_pull = max(worst_pull, pull)
            ok &= pull <= 3.0
    checks.append(_check(
        "mc-estimate", ok,
        f"estimate_f vs closed form on n=1..5 x p={{1,1.4,2,3,inf}} "
        f"({samples} pairs), worst |pull| {worst_pull:.2f} (limit 3)",
    ))

    moments_ok = True
    membership_ok = True
    exchange_ok = True
    worst_pull = 0.0
    max_norm = 0.0
    for n in MC_MOMENT_N_GRID:
        for p in MC_MOMENT_P_GRID:
            e = as_exponent(p)
            rng_seed = seed * 1000 + idx
            idx += 1
            rng = _stream_rng(rng_seed, (0,))
            x = sample_ball(n, e, rng, size=samples)
            if math.isinf(e.p):
                norms = np.abs(x).max(axis=1)
            else:
                norms = (np.abs(x) ** e.p).sum(axis=1)
            max_norm = max(max_norm, float(norms.max()))
            membership_ok &= float(norms.max()) <= 1.0

            target = normalized_second_moment(n, e)
            sq = x[:, 0] * x[:, 0]
            mean_sq = float(sq.mean())
            se_sq = float(sq.std(ddof=1)) / math.sqrt(samples)
            pull = abs(mean_sq - target) / se_sq
            worst_pull = max(worst_pull, pull)
            moments_ok &= pull <= 4.0

            mean_1 = float(x[:, 0].mean())
            se_1 = float(x[:, 0].std(ddof=1)) / math.sqrt(samples)
            pull = abs(mean_1) / se_1
            worst_pull = max(worst_pull, pull)
            moments_ok &= pull <= 4.0

            if n >= 2:
                # club the two coordinates into one per-sample difference so
                # their (negative) correlation is priced into the band
                diff = sq - x[:, 1] * x[:, 1]
                se_diff = float(diff.std(ddof=1)) / math.sqrt(samples)
                pull = abs(float(diff.mean())) / se_diff
                exchange_ok &= pull <= 4.0
    checks.append(_check(
        "mc-sampler-moments", moments_ok,
        f"E[x1^2] vs closed form and E[x1] vs 0 at 4 s.e., worst |pull| {worst_pull:.2f}",
    ))
    checks.append(_check(
        "mc-membership", membership_ok,
        f"all sampled points inside the closed ball, max norm {max_norm:.17g}",
    ))
    checks.append(_check(
        "mc-exchangeability", exchange_ok,
        "E[x1^2] vs E[x2^2] within combined 4 s.e. bands",
    ))

    ok = True
    for n, p in ((2, 1.5), (3, 3.0)):
        direct = estimate_f(n, p, MCConfig(samples, seed + idx, streams))
        idx += 1
        factored = estimate_f_factored(n, p, MCConfig(samples, seed + idx, streams))
        idx += 1
        gap = abs(direct.mean - factored.mean)
        ok &= gap <= 3.0 * math.hypot(direct.std_error, factored.std_error)
    checks.append(_check(
        "mc-estimator-consistency", ok,
        "estimate_f vs estimate_f_factored within combined 3 s.e. bands",
    ))

    return checks


# --------------------------------------------------------------------------
# dispatch

SUITE_NAMES = (
    "routes",
    "endpoints",
    "monotonicity",
    "ineq3",
    "remark-limit",
    "corollaries",
    "mc",
    "all",
)


def run_suite(
    name: str,
    policy: TruncationPolicy | None = None,
    samples: int = 1_000_000,
    seed: int = 42,
    streams: int = 8,
) -> list[Check]:
    """Run one named suite (or 'all') and return its checks."""
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    product_policy = policy or DEFAULT_POLICY
    if name == "routes":
        return suite_routes(product_policy)
    if name == "endpoints":
        return suite_endpoints()
    if name == "monotonicity":
        return suite_monotonicity()
    if name == "ineq3":
        return suite_ineq3()
    if name == "remark-limit":
        return suite_remark_limit()
    if name == "corollaries":
        return suite_corollaries(policy)
    if name == "mc":
        return suite_mc(samples, seed, streams)
    out = []
    for suite in ("routes", "endpoints", "monotonicity", "ineq3", "remark-limit", "corollaries", "mc"):
        out.extend(run_suite(suite, policy, samples, seed, streams))
    return out

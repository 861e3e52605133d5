"""The moment functional f(n, p) of the unit p-ball, by two deterministic routes.

f(n, p) is the mean of <x, y>^2 over independent uniform points x in B_p^n
and y in B_q^n (q the Hoelder conjugate).  Routes implemented here:

* closed form:  f = n * G(3/p)G(3/q)G(1+n/p)G(1+n/q)
                     / [G(1/p)G(1/q)G(1+(n+2)/p)G(1+(n+2)/q)],
  with the exact endpoint value 2n/(3(n+1)(n+2)) at p in {1, inf};

* infinite product:  f = (n/9) * prod_k  g_k(1,t) g_k(n+2,t)
                                        / (g_k(3,t) g_k(n,t)),
  where g_k(m,t) = k^2 + mk + m^2 t and t = 1/(pq) in [0, 1/4].  The
  product telescopes to exact closed forms at t = 0 and t = 1/4.

The sign of df/dt is decided by the series of per-factor log derivatives
(``derivative_sign_series``), and the per-term polynomial inequality that
the termwise argument rests on is checked verbatim (``per_term_positivity``).
``kuperberg_check`` compares f against the conjectured ceiling n/(n+2)^2,
attained at the self-dual point p = 2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from ._kernels import ineq3_min, moment_product_log, sign_series_sum
from .gamma_core import DEFAULT_POLICY, TruncationPolicy, ln_gamma, run_truncated_log_sum
from .pball import Exponent, as_exponent, check_dimension

__all__ = [
    "Route",
    "Sign",
    "MomentResult",
    "SignReport",
    "ComparatorResult",
    "MonotonicityScan",
    "g_term",
    "f_endpoint",
    "f_gamma",
    "f_product",
    "gk_ratio_product",
    "derivative_sign_series",
    "per_term_positivity",
    "per_term_minimum",
    "monotonicity_scan",
    "kuperberg_bound",
    "kuperberg_check",
    "bound_comparator",
    "remark_limit_check",
]

# |series value| <= ZERO_TOL * (1 + sum |terms|) classifies as zero; the
# n = 1 series must land here despite rounding.
ZERO_TOL = 1e-12

# Comparison slack for monotonicity verdicts along closed-form scans.
MONOTONE_TOL = 1e-12


class Route(enum.Enum):
    GAMMA_CLOSED_FORM = "gamma_closed_form"
    INFINITE_PRODUCT = "infinite_product"
    MONTE_CARLO = "monte_carlo"


class Sign(enum.Enum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


@dataclass(frozen=True)
class MomentResult:
    """A value of f(n, p) tagged with how it was computed.

    error_estimate is an absolute bound: 0 for the exact closed forms,
    value*expm1(log tail bound) for truncated products, one standard error
    for Monte Carlo.  converged is False when a truncated product missed
    its policy target; the value and bound remain valid.
    """

    value: float
    route: Route
    error_estimate: float
    n: int
    exponent: Exponent
    converged: bool = True


@dataclass(frozen=True)
class SignReport:
    """Outcome of the derivative-sign series at one (n, t)."""

    series_value: float
    sign: Sign
    terms_used: int
    all_terms_positive: bool
    tail_bound: float


@dataclass(frozen=True)
class ComparatorResult:
    """P(tau_r) vs P(tau_s) for the two-parameter product comparator."""

    product_r: float
    product_s: float
    tau_r: float
    tau_s: float
    expected: str  # "less" on [1,2]^2 regimes, "greater" on [2,inf]^2
    verdict: bool
    tail_bound_r: float
    tail_bound_s: float


@dataclass(frozen=True)
class MonotonicityScan:
    """f values along an exponent grid plus the ordering verdict."""

    points: list
    nondecreasing: bool
    strictly_increasing: bool
    first_violation: tuple | None


def g_term(k: int, m: float, t: float) -> float:
    """The quadratic g_k(m, t) = k^2 + m*k + m^2*t (positive for k >= 1)."""
    if k != int(k) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    if m < 0.0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if t < 0.0:
        raise ValueError(f"t must be nonnegative, got {t}")
    k = float(k)
    return k * k + m * k + m * m * t


def kuperberg_bound(n) -> float:
    """The conjectured ceiling n/(n+2)^2 for f(n, .)."""
    n = check_dimension(n)
    return n / ((n + 2) ** 2)


def f_endpoint(n) -> float:
    """f(n, 1) = f(n, inf) = 2n/(3(n+1)(n+2)), as an exact integer ratio."""
    n = check_dimension(n)
    return (2 * n) / (3 * (n + 1) * (n + 2))


def f_gamma(n, p) -> MomentResult:
    """f(n, p) from the gamma closed form (exact endpoint values at t = 0)."""
    n = check_dimension(n)
    e = as_exponent(p)
    if e.is_endpoint:
        return MomentResult(f_endpoint(n), Route.GAMMA_CLOSED_FORM, 0.0, n, e)
    pp, qq = e.p, e.q
    log_f = (
        math.log(n)
        + ln_gamma(3.0 / pp)
        + ln_gamma(3.0 / qq)
        + ln_gamma(1.0 + n / pp)
        + ln_gamma(1.0 + n / qq)
        - ln_gamma(1.0 / pp)
        - ln_gamma(1.0 / qq)
        - ln_gamma(1.0 + (n + 2) / pp)
        - ln_gamma(1.0 + (n + 2) / qq)
    )
    return MomentResult(math.exp(log_f), Route.GAMMA_CLOSED_FORM, 0.0, n, e)


def _gk_log_product(n: int, t: float, policy: TruncationPolicy):
    """Truncated log of prod_k g_k(1)g_k(n+2)/(g_k(3)g_k(n)) at parameter t."""

    def chunk(k_lo: int, k_hi: int):
        return moment_product_log(float(n), t, k_lo, k_hi)

    return run_truncated_log_sum(chunk, policy)


def gk_ratio_product(n, tau: float, policy: TruncationPolicy = DEFAULT_POLICY):
    """P(tau) = prod_k g_k(1,tau)g_k(n+2,tau)/(g_k(3,tau)g_k(n,tau)).

    Telescoped exact values at the ends: P(0) = 6/((n+1)(n+2)) and
    P(1/4) = 9/(n+2)^2.  Returns (value, log tail bound, terms, confirmed).
    """
    n = check_dimension(n)
    tau = float(tau)
    if tau < 0.0:
        raise ValueError(f"tau must be nonnegative, got {tau}")
    if tau == 0.0:
        return 6.0 / ((n + 1) * (n + 2)), 0.0, 0, None
    if tau == 0.25:
        return 9.0 / ((n + 2) ** 2), 0.0, 0, None
    out = _gk_log_product(n, tau, policy)
    return math.exp(out.total), out.tail_bound, out.terms, out.confirmed


def f_product(n, p, policy: TruncationPolicy = DEFAULT_POLICY) -> MomentResult:
    """f(n, p) from the infinite product over the g_k quadratics.

    At t = 0 and t = 1/4 the telescoped closed forms are returned exactly
    (error_estimate 0).  Otherwise the truncated product is returned with
    an absolute error bound derived from the 1/k^2 decay of the log
    factors; converged=False flags a bound still above policy.rel_tol at
    the term budget.
    """
    n = check_dimension(n)
    e = as_exponent(p)
    if e.t == 0.0:
        return MomentResult(f_endpoint(n), Route.INFINITE_PRODUCT, 0.0, n, e)
    if e.t == 0.25:
        return MomentResult(n / ((n + 2) ** 2), Route.INFINITE_PRODUCT, 0.0, n, e)
    out = _gk_log_product(n, e.t, policy)
    value = (n / 9.0) * math.exp(out.total)
    error = value * math.expm1(out.tail_bound)
    converged = out.tail_bound <= policy.rel_tol and out.confirmed is not False
    return MomentResult(value, Route.INFINITE_PRODUCT, error, n, e, converged)


def derivative_sign_series(n, t: float, policy: TruncationPolicy = DEFAULT_POLICY) -> SignReport:
    """Sign of df/dt from the series of per-factor log derivatives.

    Term k is 1/g_k(1) + (n+2)^2/g_k(n+2) - 9/g_k(3) - n^2/g_k(n)
    (as produced by differentiating each log factor in t).  The series is
    identically zero for n = 1 since {1, 3} = {n, n+2} there; for n >= 2
    the sum is positive on (0, 1/4] even though individual terms need not
    be (all_terms_positive reports what was actually observed).
    """
    n = check_dimension(n)
    t = float(t)
    if not (0.0 < t <= 0.25):
        raise ValueError(f"t must lie in (0, 1/4], got {t}")

    abs_sum = 0.0
    min_term = math.inf

    def chunk(k_lo: int, k_hi: int):
        nonlocal abs_sum, min_term
        total, abs_total, mn, last = sign_series_sum(float(n), t, k_lo, k_hi)
        abs_sum += abs_total
        min_term = min(min_term, mn)
        return total, last

    out = run_truncated_log_sum(chunk, policy)
    tol = ZERO_TOL * (1.0 + abs_sum)
    if abs(out.total) <= tol:
        sign = Sign.ZERO
    elif out.total > 0.0:
        sign = Sign.POSITIVE
    else:
        sign = Sign.NEGATIVE
    return SignReport(out.total, sign, out.terms, min_term > 0.0, out.tail_bound)


def per_term_positivity(k: int, n, t: float) -> bool:
    """Check the printed per-term polynomial inequality at one (k, n, t).

    Evaluates, verbatim,
        n^2 g_k(3) g_k(n+2) [g_k(n) - g_k(1)]
          + g_k(n) [(n+2)^2 g_k(1) g_k(3) - 9 g_k(n+2)]  >  0.
    """
    n = check_dimension(n)
    if n < 2:
        raise ValueError("per-term positivity is stated for n >= 2")
    if not t > 0.0:
        raise ValueError(f"t must be positive, got {t}")
    if k != int(k) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    value, _ = ineq3_min(float(n), float(t), int(k), int(k))
    return value > 0.0


def per_term_minimum(n, t: float, k_max: int):
    """Minimum of the printed per-term polynomial over k = 1..k_max.

    Returns (min_value, argmin_k); positivity on the range holds iff
    min_value > 0.  Failures are for the caller to report, not swallow.
    """
    n = check_dimension(n)
    if n < 2:
        raise ValueError("per-term positivity is stated for n >= 2")
    if not t > 0.0:
        raise ValueError(f"t must be positive, got {t}")
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    return ineq3_min(float(n), float(t), 1, int(k_max))


def monotonicity_scan(n, grid, policy: TruncationPolicy | None = None) -> MonotonicityScan:
    """Evaluate f along an increasing exponent grid in [1, 2] and judge ordering.

    The sequence must be nondecreasing within MONOTONE_TOL; for n >= 2 it
    must be strictly increasing (gap > MONOTONE_TOL) at every step whose
    upper exponent is below 2.  ``policy`` is accepted for interface
    symmetry with the product routes; the closed form needs none.
    """
    del policy
    n = check_dimension(n)
    exps = [as_exponent(p) for p in grid]
    if len(exps) < 2:
        raise ValueError("grid must contain at least two exponents")
    ps = [e.p for e in exps]
    if any(not (1.0 <= p <= 2.0) for p in ps):
        raise ValueError(f"grid values must lie in [1, 2], got {ps}")
    if any(b <= a for a, b in zip(ps, ps[1:])):
        raise ValueError(f"grid must be strictly increasing, got {ps}")

    points = [(e, f_gamma(n, e).value) for e in exps]
    nondecreasing = True
    strict = n >= 2
    first_violation = None
    for (ea, fa), (eb, fb) in zip(points, points[1:]):
        if fb < fa - MONOTONE_TOL:
            nondecreasing = False
            strict = False
            first_violation = first_violation or (ea.p, eb.p)
        elif n >= 2 and eb.p < 2.0 and not (fb - fa > MONOTONE_TOL):
            strict = False
            first_violation = first_violation or (ea.p, eb.p)
    return MonotonicityScan(points, nondecreasing, strict, first_violation)


def kuperberg_check(n, p):
    """Whether f(n, p) respects the ceiling n/(n+2)^2, with the margin.

    Returns (ok, margin): margin = n/(n+2)^2 - f(n, p), and ok allows an
    absolute 1e-12 float cushion (the self-dual point attains equality).
    """
    n = check_dimension(n)
    bound = kuperberg_bound(n)
    value = f_gamma(n, p).value
    margin = bound - value
    return value <= bound + 1e-12, margin


def bound_comparator(n, r, s, policy: TruncationPolicy = DEFAULT_POLICY) -> ComparatorResult:
    """Compare P(R) and P(S) for exponent pairs on one side of 2.

    R = (r-1)/r^2 and S = (s-1)/s^2 (0 at infinity).  For
    1 <= r < s <= 2 the parameter increases with the exponent, so the
    expected order is P(R) < P(S); for 2 <= r < s <= inf it decreases and
    the order reverses.  Pairs straddling 2 are rejected.
    """
    n = check_dimension(n)
    if n < 2:
        raise ValueError("bound_comparator is stated for n >= 2")
    r = float(r)
    s = float(s)
    if not (1.0 <= r < s):
        raise ValueError(f"need 1 <= r < s, got r={r}, s={s}")
    if s <= 2.0:
        expected = "less"
    elif r >= 2.0:
        expected = "greater"
    else:
        raise ValueError(f"(r, s) = ({r}, {s}) straddles 2; both must lie on one side")

    def tau(x: float) -> float:
        return 0.0 if math.isinf(x) else (x - 1.0) / (x * x)

    tau_r, tau_s = tau(r), tau(s)
    p_r, bound_r, _, _ = gk_ratio_product(n, tau_r, policy)
    p_s, bound_s, _, _ = gk_ratio_product(n, tau_s, policy)
    verdict = p_r < p_s if expected == "less" else p_r > p_s
    return ComparatorResult(p_r, p_s, tau_r, tau_s, expected, verdict, bound_r, bound_s)


def remark_limit_check(n, q_large: float) -> float:
    """Gamma-ratio limit behind continuity of f at the p = 1 endpoint.

    Evaluates G(3/q) G(1+n/q) / [G(1+1/q) G((n+2)/q)]  (equivalently
    n * G(3/q)G(n/q) / [G(1/q)G((n+2)/q)]) at a large finite q; the q->inf
    limit is (n+2)/3, and the deviation decays like 1/q^2.
    """
    n = check_dimension(n)
    q_large = float(q_large)
    if not q_large >= 1e3:
        raise ValueError(f"q_large must be >= 1e3, got {q_large}")
    return math.exp(
        ln_gamma(3.0 / q_large)
        + ln_gamma(1.0 + n / q_large)
        - ln_gamma(1.0 + 1.0 / q_large)
        - ln_gamma((n + 2.0) / q_large)
    )

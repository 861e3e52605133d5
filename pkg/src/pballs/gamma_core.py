"""Reference-accuracy log-gamma/log-beta and a truncated gamma-ratio product.

The gamma ratio Gamma(1-a)*Gamma(x+a)/Gamma(x) admits the product
representation

    prod_{k>=1}  k*(k+x-1) / ((k-a)*(k+x+a-1)),    x > 0, a < 1,

whose log factors decay like 1/k^2, so the tail after K factors is O(1/K).
``gamma_ratio_product`` evaluates the truncated product under a
:class:`TruncationPolicy` and reports a certified tail bound next to the
value; ``ln_gamma`` (a Lanczos g=7 scheme) provides the independent route
the product is checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._kernels import gamma_ratio_log

__all__ = [
    "TruncationPolicy",
    "DEFAULT_POLICY",
    "ProductResult",
    "ln_gamma",
    "ln_beta",
    "signed_ln_gamma",
    "gamma_ratio_product",
]

_LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# Lanczos coefficients for g = 7, N = 9 (Godfrey's set); accurate to a few
# ulp over the positive axis.
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0.

    Raises ValueError for x <= 0 (see :func:`signed_ln_gamma` for the
    negative axis).
    """
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    if x < 0.5:
        # One recurrence step keeps the Lanczos sum in its sweet spot.
        return ln_gamma(x + 1.0) - math.log(x)
    z = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, 9):
        acc += _LANCZOS[i] / (z + i)
    base = z + 7.5
    return _LN_SQRT_2PI + (z + 0.5) * math.log(base) - base + math.log(acc)


def ln_beta(a: float, b: float) -> float:
    """log B(a, b) = ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b), for a, b > 0."""
    if not (a > 0.0 and b > 0.0):
        raise ValueError(f"ln_beta requires positive arguments, got ({a}, {b})")
    return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)


def signed_ln_gamma(x: float) -> tuple[float, float]:
    """(sign, log|Gamma(x)|) for any real x that is not a nonpositive integer.

    Negative arguments are lifted to the positive axis by the recurrence
    Gamma(x) = Gamma(x+1)/x, tracking the sign of each divisor.
    """
    x = float(x)
    if x > 0.0:
        return 1.0, ln_gamma(x)
    if x == math.floor(x):
        raise ValueError(f"Gamma pole at nonpositive integer x = {x}")
    sign = 1.0
    acc = 0.0
    s = x
    while s < 0.5:
        acc -= math.log(abs(s))
        if s < 0.0:
            sign = -sign
        s += 1.0
    return sign, acc + ln_gamma(s)


@dataclass(frozen=True)
class TruncationPolicy:
    """How many product factors to take and how to certify the tail.

    max_terms caps the total factor budget (including the doubling pass);
    rel_tol is the target bound on |log(true/truncated)|, i.e. roughly the
    relative error; confirm_by_doubling re-evaluates at twice the stopping
    index and checks the observed tail segment against the claimed bound.
    """

    max_terms: int = 1_000_000
    rel_tol: float = 1e-10
    confirm_by_doubling: bool = True

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not (0.0 < self.rel_tol < 1.0):
            raise ValueError("rel_tol must lie in (0, 1)")

    def doubled(self) -> "TruncationPolicy":
        return TruncationPolicy(2 * self.max_terms, self.rel_tol, self.confirm_by_doubling)


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class ProductResult:
    """A truncated product value plus its certified accuracy.

    tail_bound bounds |log(true/value)| (approximately the relative error).
    converged means the bound met the policy's rel_tol; when it did not,
    the value and achieved bound are still valid and returned here rather
    than raised, since downstream comparisons consume them directly.
    bound_confirmed is None when confirm_by_doubling was off or the
    doubling pass could not run within the budget.
    """

    value: float
    tail_bound: float
    terms_used: int
    converged: bool
    bound_confirmed: bool | None


@dataclass(frozen=True)
class _LogSum:
    total: float
    terms: int
    tail_bound: float
    confirmed: bool | None


_FIRST_BLOCK = 1024
_MAX_BLOCK = 1 << 18


def run_truncated_log_sum(chunk, policy: TruncationPolicy) -> _LogSum:
    """Accumulate ``chunk(k_lo, k_hi) -> (partial, last_abs)`` under a policy.

    The per-index magnitudes are assumed to decay like C/k^2, so the tail
    beyond index K is bounded by 2*K*|last term at K| (an empirical factor-2
    cushion on the C/K tail of the exact series).  Stops early once that
    bound reaches rel_tol; otherwise runs to the budget.  With
    confirm_by_doubling the budget is split so the confirmation pass at 2K
    stays inside max_terms, and the observed segment sum over (K, 2K] is
    checked against the claimed bound.
    """
    base_budget = policy.max_terms // 2 if policy.confirm_by_doubling else policy.max_terms
    base_budget = max(base_budget, 1)

    total = 0.0
    k = 0
    last = 0.0
    block = _FIRST_BLOCK
    while k < base_budget:
        hi = min(k + block, base_budget)
        partial, last = chunk(k + 1, hi)
        total += partial
        k = hi
        if 2.0 * k * last <= policy.rel_tol:
            break
        block = min(block * 4, _MAX_BLOCK)

    bound_k = 2.0 * k * last
    if not policy.confirm_by_doubling or 2 * k > policy.max_terms:
        return _LogSum(total, k, bound_k, None)

    segment = 0.0
    lo = k + 1
    while lo <= 2 * k:
        hi = min(lo + _MAX_BLOCK - 1, 2 * k)
        partial, last = chunk(lo, hi)
        segment += partial
        lo = hi + 1
    total += segment
    terms = 2 * k
    confirmed = abs(segment) <= bound_k + 1e-300
    bound = 2.0 * terms * last
    if not confirmed:
        bound = max(bound, 2.0 * abs(segment))
    return _LogSum(total, terms, bound, confirmed)


def gamma_ratio_product(x: float, a: float, policy: TruncationPolicy = DEFAULT_POLICY) -> ProductResult:
    """Truncated product evaluation of Gamma(1-a)*Gamma(x+a)/Gamma(x).

    Requires x > 0, a < 1, and x+a not a nonpositive integer (a factor
    denominator vanishes there).  The value is negative exactly when an odd
    number of early factors is negative (possible for x+a < 0).  a = 0
    short-circuits to exactly 1: every factor is identically one and a
    product of rounded ones would only accumulate noise.
    """
    x = float(x)
    a = float(a)
    if not x > 0.0:
        raise ValueError(f"gamma_ratio_product requires x > 0, got {x}")
    if not a < 1.0:
        raise ValueError(f"gamma_ratio_product requires a < 1, got {a}")
    s = x + a
    if s <= 0.0 and s == math.floor(s):
        raise ValueError(f"x + a = {s} is a nonpositive integer (gamma pole)")
    if a == 0.0:
        return ProductResult(1.0, 0.0, 0, True, None)

    negatives = 0

    def chunk(k_lo: int, k_hi: int):
        nonlocal negatives
        partial, neg, last = gamma_ratio_log(x, a, k_lo, k_hi)
        negatives += neg
        return partial, last

    out = run_truncated_log_sum(chunk, policy)
    sign = -1.0 if negatives % 2 else 1.0
    value = sign * math.exp(out.total)
    converged = out.tail_bound <= policy.rel_tol and out.confirmed is not False
    return ProductResult(value, out.tail_bound, out.terms, converged, out.confirmed)

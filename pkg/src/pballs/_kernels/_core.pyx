# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner-loop kernels.

Same contracts as the NumPy fallback module; see _fallback.py for the
factor algebra.  Scalar C loops, no NumPy dependency.
"""

from libc.math cimport fabs, log, log1p, INFINITY


def moment_product_log(double n, double t, long long k_lo, long long k_hi):
    cdef double total = 0.0
    cdef double last = 0.0
    cdef double k, den, diff
    cdef double c2 = 1.0 - 2.0 * t
    cdef double c1 = (n + 3.0) * t
    cdef double c0 = 2.0 * (2.0 * n + 1.0) * t * t
    cdef double scale = -2.0 * (n - 1.0)
    cdef long long i
    if k_hi < k_lo:
        return 0.0, 0.0
    for i in range(k_lo, k_hi + 1):
        k = <double> i
        den = (k * k + 3.0 * k + 9.0 * t) * (k * k + n * k + n * n * t)
        diff = scale * (c2 * k * k + c1 * k + c0)
        last = log1p(diff / den)
        total += last
    return total, fabs(last)


def gamma_ratio_log(double x, double a, long long k_lo, long long k_hi):
    cdef double total = 0.0
    cdef double last = 0.0
    cdef double k, den, r, fac
    cdef double shift = a * (x + a - 1.0)
    cdef long long i, neg = 0
    if k_hi < k_lo:
        return 0.0, 0, 0.0
    for i in range(k_lo, k_hi + 1):
        k = <double> i
        den = (k - a) * (k + x + a - 1.0)
        r = shift / den
        if den > 0.0 and -0.5 < r < 0.5:
            last = log1p(r)
        else:
            fac = (k * (k + x - 1.0)) / den
            if fac < 0.0:
                neg += 1
            last = log(fabs(fac))
        total += last
    return total, neg, fabs(last)


def sign_series_sum(double n, double t, long long k_lo, long long k_hi):
    cdef double total = 0.0
    cdef double abs_total = 0.0
    cdef double mn = INFINITY
    cdef double last = 0.0
    cdef double k, g1, g3, gn, gm, term
    cdef double m = n + 2.0
    cdef long long i
    if k_hi < k_lo:
        return 0.0, 0.0, INFINITY, 0.0
    for i in range(k_lo, k_hi + 1):
        k = <double> i
        g1 = k * k + k + t
        g3 = k * k + 3.0 * k + 9.0 * t
        gn = k * k + n * k + n * n * t
        gm = k * k + m * k + m * m * t
        term = (n - 1.0) * (
            ((n + 5.0) * k * k + 3.0 * m * k) / (g3 * gm)
            - ((n + 1.0) * k * k + n * k) / (g1 * gn)
        )
        total += term
        abs_total += fabs(term)
        if term < mn:
            mn = term
        last = term
    return total, abs_total, mn, fabs(last)


def ineq3_min(double n, double t, long long k_lo, long long k_hi):
    cdef double mn = INFINITY
    cdef double k, g1, g3, gn, gm, val
    cdef double m = n + 2.0
    cdef long long i, arg = k_lo
    if k_hi < k_lo:
        return INFINITY, k_lo
    for i in range(k_lo, k_hi + 1):
        k = <double> i
        g1 = k * k + k + t
        g3 = k * k + 3.0 * k + 9.0 * t
        gn = k * k + n * k + n * n * t
        gm = k * k + m * k + m * m * t
        val = n * n * g3 * gm * (gn - g1) + gn * (m * m * g1 * g3 - 9.0 * gm)
        if val < mn:
            mn = val
            arg = i
    return mn, arg

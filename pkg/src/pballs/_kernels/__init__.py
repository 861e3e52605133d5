"""Kernel backend selection: compiled extension if built, NumPy otherwise."""

from __future__ import annotations

from . import _fallback

try:
    from . import _core as _impl

    BACKEND = "compiled"
except ImportError:  # extension not built on this install
    _impl = _fallback
    BACKEND = "python"

moment_product_log = _impl.moment_product_log
gamma_ratio_log = _impl.gamma_ratio_log
sign_series_sum = _impl.sign_series_sum
ineq3_min = _impl.ineq3_min


def available_backends() -> dict:
    """Importable kernel modules keyed by backend name (for tests/benchmarks)."""
    found = {"python": _fallback}
    if BACKEND == "compiled":
        found["compiled"] = _impl
    return found

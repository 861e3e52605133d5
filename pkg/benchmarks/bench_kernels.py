"""Benchmark the compiled kernels against the NumPy fallback.

Usage:  python benchmarks/bench_kernels.py [--terms N] [--repeats R]

Times each inner-loop kernel on a representative workload for every
available backend, checks that the backends agree numerically, and prints
a small table with the speedup of the compiled extension (when built).
"""

from __future__ import annotations

import argparse
import time

from pballs._kernels import BACKEND, available_backends

WORKLOADS = (
    ("moment_product_log", lambda impl, terms: impl.moment_product_log(20.0, 0.16, 1, terms), 0),
    ("gamma_ratio_log", lambda impl, terms: impl.gamma_ratio_log(10.0, 0.9, 1, terms), 0),
    ("sign_series_sum", lambda impl, terms: impl.sign_series_sum(20.0, 0.25, 1, terms), 0),
    ("ineq3_min", lambda impl, terms: impl.ineq3_min(50.0, 10.0, 1, terms), 0),
)


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--terms", type=int, default=1_000_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = available_backends()
    print(f"active backend: {BACKEND}; available: {', '.join(backends)}")
    print(f"workload: {args.terms} terms, best of {args.repeats}")
    print()
    header = f"{'kernel':<22}" + "".join(f"{name:>14}" for name in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    for name, call, check_idx in WORKLOADS:
        results = {}
        times = {}
        for bname, impl in backends.items():
            times[bname] = _time(lambda: call(impl, args.terms), args.repeats)
            results[bname] = call(impl, args.terms)[check_idx]
        values = list(results.values())
        spread = max(abs(v - values[0]) for v in values)
        scale = max(1.0, abs(values[0]))
        if spread > 1e-9 * scale:
            raise SystemExit(f"{name}: backends disagree by {spread} ({results})")
        line = f"{name:<22}" + "".join(f"{times[b] * 1e3:>11.2f} ms" for b in backends)
        if len(backends) > 1:
            line += f"{times['python'] / times['compiled']:>9.1f}x"
        print(line)

    return 0


if __name__ == "__main__":
    raise SystemExit(main())

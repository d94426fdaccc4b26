"""Compare the numba-accelerated kernels against the pure-numpy fallbacks.

Run from the repository root:

    python3 benchmarks/bench_kernels.py

The numpy timings come from the fallback implementations directly; the numba
timings use the jitted versions (first call excluded so compilation is not
measured). Set MARCZ_NO_NUMBA=1 before importing marcz elsewhere to force the
fallback path package-wide.
"""

import time

import numpy as np

from marcz import _backend


def timeit(fn, *args, repeat=5):
    fn(*args)  # warm-up (and numba compilation)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(0)
    x = rng.standard_normal(2 ** 20)
    xi = rng.standard_normal(2 ** 14 + 2 ** 12)
    kern = rng.standard_normal(2 ** 12 + 1)
    with np.errstate(divide="ignore"):
        pw = np.arange(2 ** 20 + 1001, dtype=np.float64) ** -0.75
    pw[0] = 0.0

    cases = [
        ("ewma n=2^20", (_backend._ewma_np, x, 0.005)),
        ("running_mean n=2^20", (_backend._running_mean_np, x)),
        ("direct_conv n=2^14 m=2^12", (_backend._direct_conv_valid_np, xi, kern)),
        ("cross_sum_lag r=2^20 d=100", (_backend._cross_sum_lag_np, 100, pw, pw, 2 ** 20)),
    ]
    if _backend.backend_name() != "numba":
        print("numba backend inactive (MARCZ_NO_NUMBA set or numba missing); "
              "only numpy timings shown")
    print(f"{'kernel':32s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}")
    for name, (np_fn, *args) in cases:
        t_np = timeit(np_fn, *args)
        if _backend.backend_name() == "numba":
            nb_fn = getattr(_backend, np_fn.__name__.replace("_np", "_nb"))
            t_nb = timeit(nb_fn, *args)
            print(f"{name:32s} {t_np * 1e3:9.2f}ms {t_nb * 1e3:9.2f}ms "
                  f"{t_np / t_nb:7.2f}x")
        else:
            print(f"{name:32s} {t_np * 1e3:9.2f}ms {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()

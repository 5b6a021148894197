"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--voters 7] [--alternatives 441 1681] [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from spatial_majority import kernels


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--voters", type=int, default=7)
    ap.add_argument("--alternatives", type=int, nargs="+", default=[441, 1681, 4096])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = kernels.available_backends()
    rng = np.random.default_rng(args.seed)
    print(f"backends: {', '.join(backends)} (default {kernels.BACKEND})")
    print(f"{'kernel':<18}{'m':>7}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for m in args.alternatives:
        U = rng.standard_normal((args.voters, m))
        maj = args.voters // 2 + 1
        cases = {
            "preference_counts": lambda b: kernels.preference_counts(U, backend=b),
            "first_dominators": lambda b: kernels.first_dominators(U, maj, 0, backend=b),
            "counts_against": lambda b: kernels.counts_against(U[:, 0], U, backend=b),
        }
        for name, fn in cases.items():
            ref = fn("python")
            for b in backends:
                np.testing.assert_array_equal(fn(b), ref)
            t = {b: _best(lambda: fn(b), args.repeat) for b in backends}
            speed = t["python"] / t["cython"] if "cython" in t else float("nan")
            print(f"{name:<18}{m:>7}" + "".join(f"{t[b] * 1e3:>10.2f}ms" for b in backends)
                  + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()

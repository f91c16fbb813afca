"""Time the dense mod-p row reduction kernels against each other.

    python benchmarks/bench_kernels.py [--sizes 100 200 400] [--p 32003] [--repeat 3]
"""

import argparse
import time

import numpy as np

from hh2.linalg import _kernels


def bench(kernel, a, p, repeat):
    best = float("inf")
    piv = None
    for _ in range(repeat):
        m = a.copy()
        t0 = time.perf_counter()
        piv = _kernels.rref_modp(m, p, kernel=kernel)
        best = min(best, time.perf_counter() - t0)
    return best, len(piv)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400])
    ap.add_argument("--p", type=int, default=32003)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    kernels = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    if _kernels.HAVE_NUMBA:
        # compile outside the timed region
        _kernels.rref_modp(np.ones((2, 2), dtype=np.int64), args.p, kernel="numba")
    print(f"backend default: {_kernels.backend()}, p = {args.p}")
    print(f"{'n':>6s} " + " ".join(f"{k:>12s}" for k in kernels) + "   rank")
    for n in args.sizes:
        a = rng.integers(0, args.p, size=(n, n + n // 2), dtype=np.int64)
        # make it rank deficient so elimination is not trivial
        a[n // 2:] = (a[: n - n // 2] * 3) % args.p
        times, ranks = [], set()
        for k in kernels:
            t, r = bench(k, a, args.p, args.repeat)
            times.append(t)
            ranks.add(r)
        assert len(ranks) == 1, "kernels disagree on rank"
        print(f"{n:6d} " + " ".join(f"{t * 1000:10.1f}ms" for t in times) + f"   {ranks.pop()}")


if __name__ == "__main__":
    main()

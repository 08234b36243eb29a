"""Compare the compiled and numpy correlation-count kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--sizes 6 10 12 18]
"""
import argparse
import os
import timeit

import numpy as np

from florentine_qcss import _kernels_py
from florentine_qcss.florentine import best_florentine
from florentine_qcss.seqgen import build_qcss

try:
    from florentine_qcss import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def full_scan(impl, X, n):
    return [impl.shift_counts(X, n, tau) for tau in range(X.shape[2])]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--sizes", type=int, nargs="+", default=[6, 10, 12, 18])
    args = parser.parse_args()

    impls = {"numpy": _kernels_py}
    if _kernels_c is not None:
        impls["cython"] = _kernels_c
    else:
        print("compiled kernels not built; timing numpy only")

    print(f"{'n':>4} {'K':>6} {'backend':>8} {'best [s]':>10} {'speedup':>8}")
    for n in args.sizes:
        X = np.ascontiguousarray(build_qcss(best_florentine(n)[1]).exponent_stack(), dtype=np.int64)
        results = [full_scan(impl, X, n) for impl in impls.values()]
        assert all(np.array_equal(a, b) for r in results[1:] for a, b in zip(results[0], r))
        times = {
            name: min(timeit.repeat(lambda impl=impl: full_scan(impl, X, n), number=1, repeat=args.repeat))
            for name, impl in impls.items()
        }
        for name, t in times.items():
            print(f"{n:>4} {X.shape[0]:>6} {name:>8} {t:>10.4f} {times['numpy'] / t:>7.1f}x", flush=True)


if __name__ == "__main__":
    os.environ.setdefault("FQCSS_WORKERS", "1")
    main()

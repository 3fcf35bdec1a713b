"""Time the compiled and NumPy kernel backends on the same inputs.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--quick]

Each row reports the best of N runs per backend and the speedup of the
compiled backend. Results from the two backends are checked for equality.
"""

import argparse
import time

import numpy as np

from ssfractal.kernels import backends


def cases(quick):
    rng = np.random.default_rng(0)
    scale = 4 if quick else 1

    def weights(s, modulus):
        return rng.integers(1, modulus, size=s).astype(np.int64)

    A = 2**20 // scale - 3
    yield "cyclic_subset_counts", "s=24 A~2^20", (weights(24, A), A)
    yield "signed_zero_coefficient", "s=24 A~2^20", (weights(24, A), A)
    s = 20 - (2 if quick else 0)
    yield "subset_sums", f"s={s}", (weights(s, 10**9), 10**9)
    yield "subset_sum_histogram", f"s={s} A=4093", (weights(s, 4093), 4093)
    s = 13 - (2 if quick else 0)
    yield "weak_partition_vectors", f"s={s} A=97", (weights(s, 97), 97)


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true", help="smaller inputs")
    args = parser.parse_args()

    found = backends()
    if "cython" not in found:
        print("compiled backend not built; only the NumPy backend is available")
    names = sorted(found)
    print(f"{'kernel':26s} {'input':14s} " + " ".join(f"{n:>10s}" for n in names) + "   speedup")
    for kernel, label, inputs in cases(args.quick):
        timings, results = {}, {}
        for name in names:
            timings[name], results[name] = best_of(getattr(found[name], kernel), inputs, args.repeat)
        if len(results) == 2:
            a, b = results.values()
            assert np.array_equal(np.asarray(a), np.asarray(b)), f"{kernel}: backends disagree"
        speedup = timings["python"] / timings["cython"] if "cython" in timings else float("nan")
        cols = " ".join(f"{timings[n] * 1e3:8.1f}ms" for n in names)
        print(f"{kernel:26s} {label:14s} {cols}   {speedup:6.1f}x")


if __name__ == "__main__":
    main()

"""Compare the compiled and fallback kernel backends.

    python benchmarks/bench_kernels.py [--repeat N]

Times the two hot loops on representative workloads: window image
enumeration (used by every windowed check and by the finite-group full
shift) and the residual shortest path behind the support norm.
"""
import argparse
import itertools
import timeit

import numpy as np

from surjunct import kernels


def image_workload(k, n_sites, width, targets, seed=0):
    rng = np.random.default_rng(seed)
    gather = np.ascontiguousarray(
        [[(t + s) % n_sites for s in range(width)] for t in range(targets)], dtype=np.int64
    )
    table = rng.integers(0, k, k**width).astype(np.int64)
    return k, n_sites, gather, table


def path_workload(p, s, seed=0):
    rng = np.random.default_rng(seed)
    pairs = np.ascontiguousarray(list(itertools.combinations(range(s), 2)), dtype=np.int64)
    weights = rng.integers(1, 12, len(pairs)).astype(np.int64)
    goal = sum(((i % (p - 1)) + 1) * p**i for i in range(s))
    return p, s, goal, pairs, weights


WORKLOADS = {
    "image_codes k=2 window=16 targets=14": ("image_codes", image_workload(2, 16, 3, 14)),
    "image_codes k=2 window=20 targets=18": ("image_codes", image_workload(2, 20, 3, 18)),
    "image_codes k=4 window=8 targets=7": ("image_codes", image_workload(4, 8, 2, 7)),
    "shortest_path p=2 s=8": ("residual_shortest_path", path_workload(2, 8)),
    "shortest_path p=3 s=8": ("residual_shortest_path", path_workload(3, 8)),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.backends()
    names = sorted(backends)
    print(f"{'workload':40s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, (fn, wl) in WORKLOADS.items():
        times, results = {}, {}
        for name in names:
            f = getattr(backends[name], fn)
            results[name] = f(*wl)
            times[name] = min(timeit.repeat(lambda: f(*wl), number=1, repeat=args.repeat))
        if len(names) > 1:
            a, b = (np.asarray(results[n]) for n in names)
            assert np.array_equal(a, b), f"backends disagree on {label}"
        line = f"{label:40s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if "cython" in times:
            line += f"{times['python'] / times['cython']:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()

"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload runs on every available backend; results must agree.
"""
import argparse
import itertools
import time

import numpy as np

from zigzag_mds import kernels
from zigzag_mds.code import build_generator
from zigzag_mds.constructions import build_family


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def workloads():
    spec = build_family("A3", s=2)  # (11,8,16): 128x128 blocks
    gen = build_generator(spec)
    subsets = list(itertools.combinations(range(spec.n), spec.k))[:40]
    mats = [gen.rows_for(s) for s in subsets]

    def ranks(backend):
        return [kernels.rank(m, spec.field, backend) for m in mats]

    rng = np.random.default_rng(0)
    a = rng.integers(0, 16, (128, 128))
    b = rng.integers(0, 16, (128, 512))

    def matmul(backend):
        return kernels.matmul(a, b, spec.field, backend)

    perms = np.array(list(itertools.permutations(range(8))), dtype=np.int32)

    def costs(backend):
        return kernels.coset_costs(perms, 3, range(1, 8), backend)

    return {"rank 40 x (128x128)": ranks, "matmul 128x128 @ 128x512": matmul,
            "coset costs 40320 orderings": costs}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = sorted(kernels.BACKENDS)
    print(f"backends: {', '.join(names)} (active: {kernels.BACKEND})")
    for label, fn in workloads().items():
        timings = {}
        results = {}
        for name in names:
            timings[name], results[name] = _time(lambda: fn(name), args.repeat)
        ref = results[names[0]]
        agree = all(np.array_equal(np.asarray(ref), np.asarray(r)) for r in results.values())
        line = "  ".join(f"{n} {timings[n] * 1e3:8.2f} ms" for n in names)
        if "cython" in timings and "python" in timings:
            line += f"  speedup x{timings['python'] / timings['cython']:.1f}"
        print(f"{label:<30} {line}  {'agree' if agree else 'MISMATCH'}")


if __name__ == "__main__":
    main()

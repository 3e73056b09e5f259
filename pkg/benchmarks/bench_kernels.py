"""Compare the compiled and numpy kernels on the lattice integrals.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--threads 1]

Prints wall time per backend and case, the speedup, and the largest
disagreement between the two backends' strip integrals.
"""
import argparse
import math
import time

import numpy as np

from wignerneg.kernels import KIND_CAT, KIND_SDF, get_backend
from wignerneg.states import cat_normalization

CASES = [
    # label, kind, params, half-width, nodes per side
    ("fock n=3", KIND_SDF, [3, 0.0, 0.0, 0.0, 0.0], 9.0, 513),
    ("fock n=30", KIND_SDF, [30, 0.0, 0.0, 0.0, 0.0], 14.0, 1025),
    ("sdf n=3 s=1", KIND_SDF, [3, 1.0, math.pi / 6, 0.0, 0.0], 16.0, 1025),
    ("cat q0=2 p0=4", KIND_CAT, [2.0, 4.0, cat_normalization(2.0, 4.0).N ** 2], 9.0, 1025),
]


def _time(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    try:
        compiled = get_backend("cython")
    except ImportError:
        print("compiled backend not built; nothing to compare")
        return 1
    python = get_backend("python")

    print(f"{'case':<16}{'nodes':>10}{'cython s':>11}{'python s':>11}{'speedup':>9}{'max diff':>11}")
    for label, kind, params, half, n in CASES:
        q0 = params[3] if kind == KIND_SDF else 0.0
        p0 = params[4] if kind == KIND_SDF else params[1]
        call = (kind, np.asarray(params, float), q0 - half, q0 + half, n, p0 - half, p0 + half, n)
        tc, rc = _time(lambda: compiled.strip_integrals(*call, nthreads=args.threads), args.repeat)
        tp, rp = _time(lambda: python.strip_integrals(*call, nthreads=args.threads), args.repeat)
        diff = max(float(np.max(np.abs(np.asarray(a) - np.asarray(b)))) for a, b in zip(rc, rp))
        print(f"{label:<16}{n * n:>10}{tc:>11.3f}{tp:>11.3f}{tp / tc:>9.1f}{diff:>11.1e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

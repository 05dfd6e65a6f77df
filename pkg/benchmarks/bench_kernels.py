"""Time the numba kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--g-max 33] [--repeat 5]
"""

import argparse
import time

import numpy as np

from tetragonal import _kernels
from tetragonal.enumeration import strip_descriptors
from tetragonal.lattice import SIGMA


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(g_max):
    P = SIGMA.scale(400)
    hp = P.halfplanes
    a = np.array([h.a for h in hp], dtype=np.int64)
    b = np.array([h.b for h in hp], dtype=np.int64)
    c = np.array([h.c for h in hp], dtype=np.int64)
    verts = np.array(P.vertices, dtype=np.int64)
    rng = np.random.default_rng(0)
    dirs = rng.integers(-50, 51, size=(20000, 2)).astype(np.int64)
    desc = strip_descriptors(g_max)
    return {
        "row_ranges": lambda nb: _kernels.row_ranges(a, b, c, 0, 400, use_numba=nb),
        "directional_widths": lambda nb: _kernels.directional_widths(verts, dirs, use_numba=nb),
        "strip_candidate_mask": lambda nb: _kernels.strip_candidate_mask(desc, use_numba=nb),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--g-max", type=int, default=33)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"numba available: {_kernels.HAS_NUMBA}")
    print(f"{'kernel':<22} {'numpy [s]':>10} {'numba [s]':>10} {'speedup':>8}")
    for name, fn in cases(args.g_max).items():
        t_np = _best(lambda: fn(False), args.repeat)
        if _kernels.HAS_NUMBA:
            fn(True)  # compile
            t_nb = _best(lambda: fn(True), args.repeat)
            print(f"{name:<22} {t_np:10.5f} {t_nb:10.5f} {t_np / t_nb:8.1f}")
        else:
            print(f"{name:<22} {t_np:10.5f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()

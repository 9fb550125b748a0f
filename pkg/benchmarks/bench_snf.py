"""Time the Smith-reduction kernel under its two execution modes.

The same vectorized routine runs numba-compiled and as plain numpy; this
script reduces the package's real workload matrices (the degree-2
differentials of the partial complexes, and the image-in-kernel-basis
matrices actually handed to the kernel during an HS_1 computation) under
both modes and prints a comparison.  The exact big-integer engine is
timed on the small inputs for reference.

Usage:  python3 benchmarks/bench_snf.py [--with-matrix-3]

The first numba timing includes JIT compilation unless the cache is warm;
a warm-up call on a tiny matrix is made first so the numbers compare
steady-state throughput.
"""

import argparse
import time

import numpy as np

from symhom.algebra import builtin_algebra
from symhom.homalg import IntMatrix, matmul, smith_normal_form
from symhom.homalg._kernels import available_backends, snf_int64
from symhom.hs import build_partial_complex


def hs1_workload(name):
    """The two matrices an HS_1 computation reduces, for one algebra."""
    A = builtin_algebra(name)
    pc = build_partial_complex(A)
    out_snf = smith_normal_form(pc.d1, need_u=False, need_v=True, need_vinv=True)
    r = out_snf.rank()
    proj = IntMatrix.from_rows(out_snf.vinv.entries[r:], pc.d1.cols)
    image = matmul(proj, pc.d2)
    return [(f"{A.label} d1 ({pc.d1.rows}x{pc.d1.cols})", pc.d1, True),
            (f"{A.label} im ({image.rows}x{image.cols})", image, False)]


def time_backend(mat, backend, need_vinv, repeats=3):
    a = mat.to_numpy()
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        res = snf_int64(a, True, need_vinv, need_vinv, True, backend=backend)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
        if res is None:
            return best, "overflow"
    return best, "ok"


def time_exact(mat, repeats=1):
    t0 = time.perf_counter()
    smith_normal_form(mat, need_u=True, need_v=True, engine="exact")
    return time.perf_counter() - t0


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--with-matrix-3",
        action="store_true",
        help="include the 729x6570 reduction from HS_1(M_3(Z)) (slow)",
    )
    args = parser.parse_args()

    backends = available_backends()
    print(f"available backends: {', '.join(backends)}")
    if "numba" in backends:
        snf_int64(np.zeros((2, 2), dtype=np.int64), True, True, True, True, backend="numba")
        print("numba warmed up (JIT cache primed)")

    workloads = []
    for name in ("trunc-poly-4", "cyclic-5", "matrix-2"):
        workloads.extend(hs1_workload(name))
    if args.with_matrix_3:
        workloads.extend(hs1_workload("matrix-3"))

    header = f"{'matrix':38s} " + "".join(f"{b:>12s}" for b in backends) + f"{'exact':>12s}"
    print(header)
    print("-" * len(header))
    for label, mat, small in workloads:
        cells = []
        for backend in backends:
            dt, status = time_backend(mat, backend, need_vinv=small)
            cells.append(f"{dt * 1000:9.1f}ms" if status == "ok" else f"{status:>11s}")
        if small or max(mat.rows, mat.cols) <= 200:
            cells.append(f"{time_exact(mat) * 1000:9.1f}ms")
        else:
            cells.append(f"{'skipped':>11s}")
        print(f"{label:38s} " + "".join(f"{c:>12s}" for c in cells))


if __name__ == "__main__":
    main()

"""Benchmark the compiled kernels against the NumPy fallback.

Usage:
    python benchmarks/bench_kernels.py [--quick]

Covers the three hot paths: grid zero-counting over a prime field,
projective rank-stratum scanning, and batched monomial evaluation for the
Monte-Carlo integrand.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from graphpoly import _kernels_py as pure
from graphpoly.counting import _poly_arrays, coefficient_matrices
from graphpoly.graphs import Graph
from graphpoly.kirchhoff import psi_spanning_trees

try:
    from graphpoly import _kernels_c as compiled
except ImportError:
    compiled = None


def wheel4():
    return Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4),
                     (4, 1)])


def k4():
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def timed(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return result, best


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true",
                        help="smaller workloads")
    args = parser.parse_args()
    if compiled is None:
        print("compiled kernel not built; run pip install -e . first")
        return 1

    q_grid = 5 if args.quick else 7
    q_rank = 5 if args.quick else 7
    batch = 10**5 if args.quick else 10**6

    psi4 = psi_spanning_trees(wheel4())
    c4, e4 = _poly_arrays(psi4)
    mats, _ = coefficient_matrices(k4())
    rng = np.random.default_rng(0)
    A = rng.random((batch, 6)) * 4.0
    _, ek4 = _poly_arrays(psi_spanning_trees(k4()))

    rows = []

    r_py, t_py = timed(pure.count_zeros_set, [(c4, e4)], q_grid, 8)
    r_c, t_c = timed(compiled.count_zeros_set, [(c4, e4)], q_grid, 8)
    assert r_py == r_c
    rows.append((f"count_zeros_set wheel4 q={q_grid}", t_py, t_c))

    r_py, t_py = timed(pure.count_rank_lt, mats, q_rank, 3)
    r_c, t_c = timed(compiled.count_rank_lt, mats, q_rank, 3)
    assert r_py == r_c
    rows.append((f"count_rank_lt K4 q={q_rank}", t_py, t_c))

    r_py, t_py = timed(pure.psi_eval_batch, ek4, A)
    r_c, t_c = timed(compiled.psi_eval_batch, ek4, A)
    assert np.allclose(r_py, r_c, rtol=1e-12)
    rows.append((f"psi_eval_batch K4 n={batch}", t_py, t_c))

    width = max(len(r[0]) for r in rows)
    print(f"{'workload'.ljust(width)}  python    compiled  speedup")
    for name, t_py, t_c in rows:
        print(f"{name.ljust(width)}  {t_py*1e3:7.1f}ms {t_c*1e3:7.1f}ms "
              f"{t_py/t_c:6.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Numba vs numpy backends: per-kernel timings plus one end-to-end solve per backend.

    python benchmarks/bench_kernels.py [--n 200] [--reps 200]

The end-to-end runs use the step clock, so both backends do identical work
and must print the same best score.
"""

import argparse
import os
import subprocess
import sys
import tempfile
import time
from pathlib import Path

import numpy as np

from wvcp import _kernels
from wvcp.coloring import empty_solution
from wvcp.instance import from_edges, write_instance
from wvcp.localsearch.state import LsSolution
from wvcp.simulation import simulate_greedy


def make_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, 1)
    mask = rng.random(len(iu[0])) < p
    return from_edges(n, np.column_stack([iu[0][mask], iu[1][mask]]), rng.integers(1, 100, n), name=f"r{n}")


def best_of(fn, reps):
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(reps):
            fn()
        best = min(best, (time.perf_counter() - t0) / reps)
    return best


def kernel_table(g, reps):
    s = empty_solution(g)
    draws = np.random.default_rng(0).random(g.n)

    def completion(fn):
        return lambda: fn(g.indptr, g.indices, g.weight, g.order, s.color.copy(), s.group_max.copy(),
                          0, 0, 0, _kernels.GREEDY_RANDOM, draws)

    ls = LsSolution(g, simulate_greedy(s).color)
    tabu = np.zeros((g.n, g.n), dtype=np.int64)
    verts = np.arange(g.n, dtype=np.int64)
    act = ls.active_colors()

    def scan(fn):
        return lambda: fn(ls.weight, ls.color, ls.gamma, ls.gmax, ls.gcnt, ls.gsecond, act, tabu, 0,
                          ls.score, ls.score, 0, 1, True, verts, 0.5)

    rows = [("complete", _kernels._complete_py, getattr(_kernels, "_complete_nb", None)),
            ("scan (vectorized numpy)", _kernels._scan_py, getattr(_kernels, "_scan_nb", None)),
            ("scan (python loop)", _kernels._scan_loop, None)]
    print(f"{'kernel':<26}{'numpy/py us':>14}{'numba us':>12}{'speedup':>10}")
    for name, py, nb in rows:
        wrap = completion if name == "complete" else scan
        t_py = best_of(wrap(py), max(1, reps // 10))
        if nb is not None:
            wrap(nb)()  # compile
            t_nb = best_of(wrap(nb), reps)
            print(f"{name:<26}{t_py * 1e6:>14.1f}{t_nb * 1e6:>12.1f}{t_py / t_nb:>10.1f}x")
        else:
            print(f"{name:<26}{t_py * 1e6:>14.1f}{'-':>12}{'-':>10}")


def end_to_end(g, method, seconds):
    with tempfile.TemporaryDirectory() as d:
        col = Path(d) / f"{g.name}.col"
        write_instance(g, col)
        for flag in ("0", "1"):
            env = dict(os.environ, WVCP_NO_NUMBA=flag)
            t0 = time.perf_counter()
            out = subprocess.run(
                [sys.executable, "-m", "wvcp.harness.cli", "solve", "--instance", str(col), "--weights",
                 f"{col}.w", "--method", method, "--time-limit", str(seconds), "--seed", "1", "--clock", "step"],
                env=env, capture_output=True, text=True, check=True).stdout.strip()
            label = "numpy" if flag == "1" else "numba"
            print(f"{method:<20}{label:<7}{time.perf_counter() - t0:>8.2f}s  {out.split()[3]}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--p", type=float, default=0.1)
    ap.add_argument("--reps", type=int, default=200)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        sys.exit("numba is not installed; nothing to compare")
    g = make_graph(args.n, args.p, 0)
    print(f"graph n={g.n} m={g.m}")
    kernel_table(g, args.reps)
    print()
    for method in ("mcts+greedy-random", "tw", "mcts+afisa"):
        end_to_end(g, method, 2.0)


if __name__ == "__main__":
    main()

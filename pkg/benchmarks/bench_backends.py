"""Benchmark the compiled counting kernels against the numpy fallback.

Runs each kernel on synthetic balanced arrays of growing size, checks that
both implementations return identical results, and reports best-of-N wall
times plus the speedup factor.

Usage:
    python3 benchmarks/bench_backends.py [--repeats 5] [--seed 0]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from oametrics import _accel_py
from oametrics.backend import BACKEND, HAVE_ACCEL

if HAVE_ACCEL:
    from oametrics import _accel


def balanced_cells(rng: np.random.Generator, runs: int, levels: tuple[int, ...]) -> np.ndarray:
    """Random array with perfectly balanced columns (strength >= 1)."""
    columns = []
    for s in levels:
        if runs % s != 0:
            raise ValueError(f"{runs} runs cannot balance {s} levels")
        col = np.repeat(np.arange(s, dtype=np.int64), runs // s)
        rng.shuffle(col)
        columns.append(col)
    return np.column_stack(columns)


def best_of(repeats: int, fn, *args) -> tuple[float, object]:
    result = None
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b)) and len(a) == len(b)
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.array_equal(np.asarray(a), np.asarray(b))
    return a == b


def run_case(name: str, repeats: int, fn_fast, fn_ref, *args) -> None:
    t_ref, r_ref = best_of(repeats, fn_ref, *args)
    if fn_fast is None:
        print(f"{name:<44s} numpy {t_ref * 1e3:9.3f} ms   (no compiled backend)")
        return
    t_fast, r_fast = best_of(repeats, fn_fast, *args)
    agree = "ok" if same(r_fast, r_ref) else "MISMATCH"
    speed = t_ref / t_fast if t_fast > 0 else float("inf")
    print(
        f"{name:<44s} cython {t_fast * 1e3:9.3f} ms   "
        f"numpy {t_ref * 1e3:9.3f} ms   x{speed:6.1f}  {agree}"
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5, help="timing repetitions (best is kept)")
    parser.add_argument("--seed", type=int, default=0, help="rng seed for the synthetic arrays")
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"active backend: {BACKEND}")
    if not HAVE_ACCEL:
        print("compiled extension unavailable; timing the numpy fallback only")
    fast = _accel if HAVE_ACCEL else None

    cases = [
        ("cell_counts 4096x12, 2-level, all columns",
         balanced_cells(rng, 4096, (2,) * 12), None),
        ("cell_counts 6561x8, 3-level, all columns",
         balanced_cells(rng, 6561, (3,) * 8), None),
    ]
    for name, cells, _ in cases:
        radices = tuple(int(cells[:, j].max()) + 1 for j in range(cells.shape[1]))
        run_case(
            name, args.repeats,
            None if fast is None else fast.cell_counts, _accel_py.cell_counts,
            cells, radices,
        )

    # replicated full factorial: every projection is exactly balanced, so
    # the scan visits all subsets instead of stopping at the first witness
    levels = (2, 3, 3, 4, 4, 5)
    factorial = np.array(list(np.ndindex(levels)), dtype=np.int64)
    full = np.tile(factorial, (2, 1))
    rng.shuffle(full, axis=0)
    for t in (2, 3, 4):
        run_case(
            f"scan_balance {full.shape[0]}x{full.shape[1]} full factorial, t={t}",
            args.repeats,
            None if fast is None else fast.scan_balance, _accel_py.scan_balance,
            full, levels, t, False,
        )

    for runs in (500, 2000):
        cells = balanced_cells(rng, runs, (4,) * 10)
        run_case(
            f"coincidence_hist {runs}x10, 4-level", args.repeats,
            None if fast is None else fast.coincidence_hist, _accel_py.coincidence_hist,
            cells,
        )


if __name__ == "__main__":
    main()

"""Numpy fallback for the counting kernels.

Mirrors the compiled module in ``_accel.pyx``: same signatures, same
deterministic subset enumeration order (lexicographic), same results.
"""

import itertools
import math

import numpy as np


def cell_counts(cells, radices):
    """Frequency of every level combination of the given columns.

    Args:
        cells: (N, k) int64 array of dense level codes.
        radices: length-k sequence of level counts per column.

    Returns:
        (prod(radices),) int64 array; entry for combination (x_1, ..., x_k)
        sits at the mixed-radix index with the last column varying fastest.
    """
    cells = np.asarray(cells, dtype=np.int64)
    radices = tuple(int(s) for s in radices)
    grid = math.prod(radices)
    if cells.shape[1] == 0:
        raise ValueError("need at least one column")
    flat = np.ravel_multi_index(tuple(cells[:, j] for j in range(cells.shape[1])), radices)
    return np.bincount(flat, minlength=grid).astype(np.int64)


def scan_balance(cells, levels, t, require_exact):
    """Check every t-column projection for (near-)balance.

    Args:
        cells: (N, n) int64 array.
        levels: length-n sequence of level counts.
        t: projection size, 1 <= t <= n.
        require_exact: if true, demand all cell counts equal (strength-t
            condition); otherwise allow counts in {q, q+1} with
            q = N // grid size (maximum t-balance).

    Returns:
        (ok, witness): ok is True when every projection passes; witness is
        the lexicographically first failing column tuple, or None.
    """
    cells = np.asarray(cells, dtype=np.int64)
    N = cells.shape[0]
    for subset in itertools.combinations(range(cells.shape[1]), t):
        radices = [levels[j] for j in subset]
        grid = math.prod(radices)
        counts = cell_counts(cells[:, subset], radices)
        if require_exact:
            if N % grid != 0 or (counts != N // grid).any():
                return False, subset
        else:
            q = N // grid
            if ((counts != q) & (counts != q + 1)).any():
                return False, subset
    return True, None


def coincidence_hist(cells):
    """Histogram of pairwise coincidence counts.

    For each unordered row pair, counts in how many of the k columns the two
    rows agree; returns the (k+1,) int64 histogram of those values.
    """
    cells = np.asarray(cells, dtype=np.int64)
    N, k = cells.shape
    hist = np.zeros(k + 1, dtype=np.int64)
    for i in range(N - 1):
        delta = (cells[i + 1 :] == cells[i]).sum(axis=1)
        hist += np.bincount(delta, minlength=k + 1)
    return hist

"""Reconstruction of the 32-run, three-factor, 4-level catalog designs.

A 32-run array with three 4-level factors and strength 2 corresponds to a
4x4x4 cell-count tensor whose three two-way margins all equal 2. Among
those, the arrays with 32 distinct runs are exactly the 0/1 tensors; they
attain the smallest possible worst-projection frequency (a_3 = 1) and are
the interesting catalog. This module enumerates the 0/1 tensors and
classifies them up to isomorphism (factor reordering plus per-factor level
relabeling; run order never matters because tensors ignore it).

The classification is exact: ``tensor_key`` minimizes a 64-bit packing of
the tensor over the full 3! * (4!)^3 transformation group, so two tensors
are isomorphic if and only if their keys coincide.
"""

from __future__ import annotations

import itertools

import numpy as np

_GROUP_MAPS: np.ndarray | None = None


def margin2_matrices() -> np.ndarray:
    """All 4x4 0/1 matrices with every row and column sum equal to 2."""
    out = []
    rows = [r for r in itertools.product((0, 1), repeat=4) if sum(r) == 2]
    for combo in itertools.product(rows, repeat=4):
        mat = np.array(combo, dtype=np.uint8)
        if (mat.sum(axis=0) == 2).all():
            out.append(mat)
    return np.array(out)


def enumerate_distinct_run_tensors() -> list[np.ndarray]:
    """All 4x4x4 0/1 tensors with two-way margins 2, up to first-axis slice order.

    Slices along the first axis are required to be in nondecreasing
    lexicographic order. Any tensor can be brought to that form by a level
    relabeling of the first factor, so every isomorphism class is still
    represented.
    """
    mats = margin2_matrices()
    flat = mats.reshape(len(mats), 16).astype(np.int16)
    order = np.lexsort(flat.T[::-1])
    flat = flat[order]
    solutions = []
    for i in range(len(flat)):
        for j in range(i, len(flat)):
            rem = 2 - flat[i] - flat[j]
            if rem.min() < 0:
                continue
            lo = np.maximum(rem - 1, 0)
            hi = np.minimum(rem, 1)
            ok = np.flatnonzero(((flat >= lo) & (flat <= hi)).all(axis=1))
            ok = ok[ok >= j]
            for k in ok:
                s4 = rem - flat[k]
                # slices i <= j <= k; require the remaining slice last
                if tuple(s4) >= tuple(flat[k]):
                    solutions.append(
                        np.stack(
                            [
                                flat[i].reshape(4, 4),
                                flat[j].reshape(4, 4),
                                flat[k].reshape(4, 4),
                                s4.reshape(4, 4),
                            ]
                        ).astype(np.uint8)
                    )
    return solutions


def _group_maps() -> np.ndarray:
    """Flat index maps of all 82944 factor/level permutations of a 4x4x4 grid."""
    global _GROUP_MAPS
    if _GROUP_MAPS is None:
        base = np.arange(64).reshape(4, 4, 4)
        perms = list(itertools.permutations(range(4)))
        maps = []
        for axes in itertools.permutations(range(3)):
            transposed = np.transpose(base, axes)
            for p0 in perms:
                sub0 = transposed[list(p0)]
                for p1 in perms:
                    sub1 = sub0[:, list(p1)]
                    for p2 in perms:
                        maps.append(sub1[:, :, list(p2)].ravel())
        _GROUP_MAPS = np.array(maps, dtype=np.uint8)
    return _GROUP_MAPS


def tensor_key(tensor: np.ndarray) -> int:
    """Canonical 64-bit key of a 4x4x4 0/1 tensor under isomorphism."""
    flat = np.asarray(tensor, dtype=np.uint8).reshape(64)
    if not np.isin(flat, (0, 1)).all():
        raise ValueError("tensor entries must be 0 or 1")
    orbit = flat[_group_maps()]
    packed = np.packbits(orbit, axis=1)
    keys = np.ascontiguousarray(packed).view(">u8").ravel()
    return int(keys.min())


def key_to_tensor(key: int) -> np.ndarray:
    bits = np.unpackbits(np.frombuffer(int(key).to_bytes(8, "big"), dtype=np.uint8))
    return bits.reshape(4, 4, 4)


def tensor_to_runs(tensor: np.ndarray) -> np.ndarray:
    """Expand a 0/1 cell tensor into its sorted (32, 3) run matrix."""
    runs = np.argwhere(np.asarray(tensor) == 1)
    return runs[np.lexsort(runs.T[::-1])].astype(np.int64)


def catalog_classes() -> list[np.ndarray]:
    """Canonical representative tensors of all isomorphism classes, sorted by key.

    Runs the full enumeration and exact classification; takes on the order
    of a minute.
    """
    keys = sorted({tensor_key(t) for t in enumerate_distinct_run_tensors()})
    return [key_to_tensor(k) for k in keys]

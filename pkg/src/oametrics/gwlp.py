"""Projection frequencies and the generalized word length pattern.

For a subset of k columns, the projection frequency a_k is the sum over all
interaction model columns (normalized orthogonal coding) of the squared
column sum, divided by N^2. It is invariant to the particular normalized
orthogonal coding chosen. Summing a_k over all k-subsets gives the
generalized word length A_k; the vector (A_0, ..., A_n) is the generalized
word length pattern.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import backend
from .array import OrthogonalArray, _check_subset
from .coding import Coding, resolve_coding
from .errors import CodingError, ValidationError

# A_k below this threshold counts as zero when locating the resolution.
A_TOL = 1e-9


@dataclass(frozen=True)
class ProjectionFrequency:
    """One projection's word count.

    Attributes:
        subset: the projected columns, ascending.
        value: the nonnegative frequency a_k.
    """

    subset: tuple[int, ...]
    value: float

    @property
    def k(self) -> int:
        return len(self.subset)


@dataclass(frozen=True)
class Gwlp:
    """Generalized word length pattern A_0..A_K.

    ``resolution`` is the smallest k >= 1 with A_k above tolerance, or None
    if all computed entries vanish (in particular for full factorials when
    K = n).
    """

    values: tuple[float, ...]
    resolution: int | None

    @property
    def max_k(self) -> int:
        return len(self.values) - 1


def _a_value(oa: OrthogonalArray, cols: tuple[int, ...], coding: Coding) -> float:
    cache_key = ("a", cols, coding) if isinstance(coding, str) else None
    if cache_key is not None and cache_key in oa._cache:
        return oa._cache[cache_key]
    codings = resolve_coding(oa, cols, coding)
    for j, cset in codings.items():
        if not cset.normalized:
            raise CodingError(
                f"projection frequencies need a normalized orthogonal coding; "
                f"column {j} got scheme {cset.scheme!r}"
            )
    radices = [oa.levels[j] for j in cols]
    counts = backend.cell_counts(oa.cells[:, cols], radices)
    # Column sums of the interaction matrix, grouped by cell: contract the
    # count tensor with each factor's contrast matrix.
    tensor = counts.reshape(radices).astype(np.float64)
    for j in cols:
        tensor = np.tensordot(tensor, codings[j].coefficients, axes=([0], [0]))
    value = float((tensor**2).sum()) / oa.runs**2
    if cache_key is not None:
        oa._cache[cache_key] = value
    return value


def projection_a(oa: OrthogonalArray, subset: Sequence[int], coding: Coding = "polynomial") -> ProjectionFrequency:
    """Projection frequency a_k of one column subset.

    The coding must be normalized orthogonal (the value does not depend on
    which one); the dummy scheme is rejected.
    """
    cols = _check_subset(oa, subset)
    return ProjectionFrequency(subset=cols, value=_a_value(oa, cols, coding))


def gwlp(oa: OrthogonalArray, max_k: int | None = None, coding: Coding = "polynomial") -> Gwlp:
    """Generalized word length pattern A_0..A_{max_k} (default: up to n).

    Each A_k sums the projection frequencies of all k-subsets; the sum is
    reduced through numpy's pairwise summation for run-to-run determinism.
    """
    limit = oa.factors if max_k is None else max_k
    if not 0 <= limit <= oa.factors:
        raise ValidationError(f"max_k must be in 0..{oa.factors}, got {limit}")
    values = [1.0]
    resolution = None
    for k in range(1, limit + 1):
        terms = [
            _a_value(oa, cols, coding)
            for cols in itertools.combinations(range(oa.factors), k)
        ]
        a_k = float(np.sum(terms))
        values.append(a_k)
        if resolution is None and a_k > A_TOL:
            resolution = k
    return Gwlp(values=tuple(values), resolution=resolution)


def j_characteristics(oa: OrthogonalArray, subset: Sequence[int]) -> float:
    """Absolute J-characteristic of a subset of 2-level columns.

    With levels coded -1/+1, this is |sum over runs of the product across
    the subset|. Only defined when every chosen column has 2 levels; for a
    k-subset, a_k = (J_k / N)^2.
    """
    cols = _check_subset(oa, subset)
    for j in cols:
        if oa.levels[j] != 2:
            raise ValidationError(
                f"J-characteristics need 2-level columns; column {j} has {oa.levels[j]} levels"
            )
    signs = 2 * oa.cells[:, cols] - 1
    return float(abs(int(signs.prod(axis=1).sum())))

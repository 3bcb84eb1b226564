"""Factor contrast codings and model matrix construction.

A contrast set for an s-level factor is an s x (s-1) coefficient matrix;
row = level, column = contrast. The built-in orthogonal schemes are
normalized so each column has zero sum and sum of squares s, which makes
every main-effect and interaction model column have squared length N on a
balanced column.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .array import OrthogonalArray, _check_subset
from .errors import CodingError

SCHEMES = ("polynomial", "helmert", "dummy", "custom")

_ZERO_TOL = 1e-10


@dataclass(frozen=True)
class ContrastSet:
    """Contrast coefficients for one factor.

    Attributes:
        s: number of levels.
        scheme: one of ``SCHEMES``.
        coefficients: (s, s-1) float64 matrix, read-only.
        orthogonal: columns have zero sum and are pairwise orthogonal.
        normalized: orthogonal and every column's sum of squares equals s.
    """

    s: int
    scheme: str
    coefficients: np.ndarray
    orthogonal: bool
    normalized: bool


def _polynomial(s: int) -> np.ndarray:
    # Gram-Schmidt on 1, x, x^2, ... evaluated at levels 0..s-1; the leading
    # power coefficient stays positive, fixing the sign convention.
    x = np.arange(s, dtype=np.float64)
    basis = [np.ones(s)]
    columns = []
    for degree in range(1, s):
        v = x**degree
        for b in basis:
            v = v - (v @ b) / (b @ b) * b
        basis.append(v)
        columns.append(v * np.sqrt(s / (v @ v)))
    return np.column_stack(columns)


def _helmert(s: int) -> np.ndarray:
    # Column j compares level j+1 against the mean of levels 0..j.
    coef = np.zeros((s, s - 1))
    for j in range(s - 1):
        coef[: j + 1, j] = -1.0
        coef[j + 1, j] = j + 1
        ssq = (j + 1) + (j + 1) ** 2
        coef[:, j] *= np.sqrt(s / ssq)
    return coef


def _dummy(s: int) -> np.ndarray:
    # Treatment indicators against reference level 0; deliberately not a
    # zero-sum coding.
    coef = np.zeros((s, s - 1))
    for j in range(1, s):
        coef[j, j - 1] = 1.0
    return coef


def _classify(coef: np.ndarray, s: int) -> tuple[bool, bool]:
    col_norms = np.sqrt((coef**2).sum(axis=0))
    if (col_norms == 0).any():
        return False, False
    zero_sum = np.abs(coef.sum(axis=0)).max() <= _ZERO_TOL * np.sqrt(s) * col_norms.max()
    gram = coef.T @ coef
    off = gram - np.diag(np.diag(gram))
    pairwise = np.abs(off / np.outer(col_norms, col_norms)).max() <= _ZERO_TOL if s > 2 else True
    orthogonal = bool(zero_sum and pairwise)
    normalized = bool(orthogonal and np.allclose(np.diag(gram), s, rtol=0, atol=1e-8 * s))
    return orthogonal, normalized


@functools.lru_cache(maxsize=None)
def _builtin(s: int, scheme: str) -> ContrastSet:
    if scheme == "polynomial":
        coef = _polynomial(s)
    elif scheme == "helmert":
        coef = _helmert(s)
    elif scheme == "dummy":
        coef = _dummy(s)
    else:
        raise CodingError(f"unknown contrast scheme {scheme!r}; expected one of {SCHEMES}")
    coef.setflags(write=False)
    orthogonal, normalized = _classify(coef, s)
    return ContrastSet(s=s, scheme=scheme, coefficients=coef, orthogonal=orthogonal, normalized=normalized)


def contrasts(s: int, scheme: str = "polynomial", matrix: Sequence | None = None) -> ContrastSet:
    """Contrast set for an s-level factor.

    Args:
        s: number of levels, >= 2.
        scheme: "polynomial" (orthogonal polynomials), "helmert", "dummy"
            (treatment indicators, not orthogonal), or "custom".
        matrix: required for scheme "custom": an (s, s-1) coefficient
            matrix. It is classified as orthogonal/normalized from its
            numerical properties.
    """
    if s < 2:
        raise CodingError(f"need at least 2 levels, got {s}")
    if scheme == "custom":
        if matrix is None:
            raise CodingError("custom scheme needs a coefficient matrix")
        coef = np.array(matrix, dtype=np.float64)
        if coef.shape != (s, s - 1):
            raise CodingError(f"custom matrix must be {s}x{s - 1}, got {coef.shape}")
        coef.setflags(write=False)
        orthogonal, normalized = _classify(coef, s)
        return ContrastSet(s=s, scheme="custom", coefficients=coef, orthogonal=orthogonal, normalized=normalized)
    if matrix is not None:
        raise CodingError("coefficient matrix only applies to the custom scheme")
    return _builtin(s, scheme)


Coding = str | ContrastSet | Mapping[int, ContrastSet]


def resolve_coding(oa: OrthogonalArray, columns: Sequence[int], coding: Coding) -> dict[int, ContrastSet]:
    """Per-column contrast sets from a scheme name, a single set, or a map."""
    cols = [int(j) for j in columns]
    if isinstance(coding, str):
        return {j: contrasts(oa.levels[j], coding) for j in cols}
    if isinstance(coding, ContrastSet):
        for j in cols:
            if oa.levels[j] != coding.s:
                raise CodingError(
                    f"contrast set is for {coding.s} levels but column {j} has {oa.levels[j]}"
                )
        return {j: coding for j in cols}
    if isinstance(coding, Mapping):
        out = {}
        for j in cols:
            if j not in coding:
                raise CodingError(f"no contrast set supplied for column {j}")
            cset = coding[j]
            if cset.s != oa.levels[j]:
                raise CodingError(
                    f"contrast set for column {j} is for {cset.s} levels, expected {oa.levels[j]}"
                )
            out[j] = cset
        return out
    raise CodingError(f"cannot interpret coding argument {coding!r}")


@dataclass(frozen=True)
class ModelMatrix:
    """A run-by-column real matrix with provenance.

    Attributes:
        values: (N, d) float64 matrix.
        provenance: per column, a pair (factors, contrast_indices): which
            factors the column involves and which contrast of each. The
            intercept column, when present, carries ((), ()).
        coding_tag: the scheme name behind the columns.
    """

    values: np.ndarray
    provenance: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    coding_tag: str

    @property
    def columns(self) -> int:
        return int(self.values.shape[1])


def _tag_of(codings: Mapping[int, ContrastSet]) -> str:
    tags = sorted({c.scheme for c in codings.values()})
    return tags[0] if len(tags) == 1 else "mixed"


def main_effect_matrix(oa: OrthogonalArray, factor: int, coding: Coding = "polynomial") -> ModelMatrix:
    """Main-effect model columns of one factor: contrasts evaluated at its levels."""
    (col,) = _check_subset(oa, [factor])
    cset = resolve_coding(oa, [col], coding)[col]
    values = cset.coefficients[oa.cells[:, col]]
    provenance = tuple(((col,), (j,)) for j in range(cset.s - 1))
    return ModelMatrix(values=values, provenance=provenance, coding_tag=cset.scheme)


def interaction_matrix(oa: OrthogonalArray, subset: Sequence[int], coding: Coding = "polynomial") -> ModelMatrix:
    """Full interaction model columns of a factor subset.

    Columns are all products of one contrast column per factor. They are
    ordered with the first factor's contrast index varying fastest, so for
    three 3-level factors A, B, C the order is A1B1C1, A2B1C1, A1B2C1, ...
    """
    cols = _check_subset(oa, subset)
    if len(cols) < 2:
        raise CodingError("interaction needs at least 2 factors; use main_effect_matrix")
    return _product_matrix(oa, cols, resolve_coding(oa, cols, coding))


def _product_matrix(oa: OrthogonalArray, cols: tuple[int, ...], codings: Mapping[int, ContrastSet]) -> ModelMatrix:
    mains = {j: codings[j].coefficients[oa.cells[:, j]] for j in cols}
    widths = [codings[j].s - 1 for j in cols]
    columns = []
    provenance = []
    index = [0] * len(cols)
    total = int(np.prod(widths))
    for _ in range(total):
        col = mains[cols[0]][:, index[0]].copy()
        for pos in range(1, len(cols)):
            col *= mains[cols[pos]][:, index[pos]]
        columns.append(col)
        provenance.append((cols, tuple(index)))
        for pos in range(len(cols)):  # first factor varies fastest
            index[pos] += 1
            if index[pos] < widths[pos]:
                break
            index[pos] = 0
    return ModelMatrix(
        values=np.column_stack(columns),
        provenance=tuple(provenance),
        coding_tag=_tag_of(codings),
    )


def full_model_matrix(
    oa: OrthogonalArray,
    subset: Sequence[int],
    coding: Coding = "polynomial",
    include_intercept: bool = False,
) -> ModelMatrix:
    """Main effects plus all interactions of a factor subset.

    Blocks are ordered by (block size, lexicographic factor tuple): all main
    effects, then all two-factor interactions, and so on. Without the
    intercept, a subset of two 3-level factors yields 2 + 2 + 4 = 8 columns.
    """
    cols = _check_subset(oa, subset)
    codings = resolve_coding(oa, cols, coding)
    blocks = []
    provenance = []
    if include_intercept:
        blocks.append(np.ones((oa.runs, 1)))
        provenance.append(((), ()))
    for size in range(1, len(cols) + 1):
        for group in itertools.combinations(cols, size):
            if size == 1:
                block = main_effect_matrix(oa, group[0], codings[group[0]])
            else:
                block = _product_matrix(oa, group, codings)
            blocks.append(block.values)
            provenance.extend(block.provenance)
    return ModelMatrix(
        values=np.hstack(blocks),
        provenance=tuple(provenance),
        coding_tag=_tag_of(codings),
    )

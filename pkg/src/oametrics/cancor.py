"""Canonical correlations and per-column R-squared sums for model matrices.

Canonical correlations between two column blocks are computed as the
singular values of the cross-product of orthonormal bases of their centered
column spaces. That route is stable for the rank-deficient blocks that arise
from model matrices, and needs no invertible covariance matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coding import ModelMatrix
from .errors import CodingError, ValidationError

# relative singular value cutoff for the effective rank of a centered block
RANK_RTOL = 1e-10
# correlations this close to 1 are reported as exactly 1
ONE_TOL = 1e-8
# relative tolerance of the Y-block orthogonality check in r2_sum
ORTHO_RTOL = 1e-8


@dataclass(frozen=True)
class CancorResult:
    """Canonical correlations between two column blocks.

    ``correlations`` holds min(y_dim, x_dim) values sorted descending,
    zero-padded past the effective ranks; every value lies in [0, 1].
    """

    correlations: tuple[float, ...]
    y_dim: int
    x_dim: int
    rank_y: int
    rank_x: int

    @property
    def largest(self) -> float:
        return self.correlations[0] if self.correlations else 0.0

    @property
    def sum_of_squares(self) -> float:
        return float(sum(r**2 for r in self.correlations))


@dataclass(frozen=True)
class R2SumResult:
    """Coefficients of determination of each Y column regressed on X."""

    per_column: tuple[float, ...]
    total: float


def _as_values(block) -> np.ndarray:
    if isinstance(block, ModelMatrix):
        values = block.values
    else:
        values = np.asarray(block, dtype=np.float64)
    if values.ndim == 1:
        values = values[:, None]
    if values.ndim != 2:
        raise ValidationError("model blocks must be two-dimensional")
    return values


def _centered_basis(values: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the centered column space, rank-truncated."""
    centered = values - values.mean(axis=0)
    u, sigma, _ = np.linalg.svd(centered, full_matrices=False)
    if sigma.size == 0 or sigma[0] <= 0.0:
        return u[:, :0]
    keep = sigma > RANK_RTOL * sigma[0]
    return u[:, : int(keep.sum())]


def canonical_correlations(y, x) -> CancorResult:
    """Canonical correlations between the column blocks Y and X.

    Accepts ModelMatrix instances or plain arrays (one column per variable).
    Correlations are clamped to [0, 1] and values within 1e-8 of 1 are
    snapped to exactly 1.

    Raises:
        ValidationError: mismatched run counts, or a block with zero
            effective rank after centering (e.g. all-constant columns).
    """
    y_values = _as_values(y)
    x_values = _as_values(x)
    if y_values.shape[0] != x_values.shape[0]:
        raise ValidationError(
            f"row mismatch: Y has {y_values.shape[0]} runs, X has {x_values.shape[0]}"
        )
    q_y = _centered_basis(y_values)
    q_x = _centered_basis(x_values)
    rank_y, rank_x = q_y.shape[1], q_x.shape[1]
    if rank_y == 0 or rank_x == 0:
        raise ValidationError("zero effective rank after centering")
    sigma = np.linalg.svd(q_y.T @ q_x, compute_uv=False)
    k = min(y_values.shape[1], x_values.shape[1])
    values = np.zeros(k)
    values[: sigma.size] = np.clip(sigma, 0.0, 1.0)[:k]
    values[values > 1.0 - ONE_TOL] = 1.0
    return CancorResult(
        correlations=tuple(float(v) for v in values),
        y_dim=int(y_values.shape[1]),
        x_dim=int(x_values.shape[1]),
        rank_y=rank_y,
        rank_x=rank_x,
    )


def _check_y_orthogonality(values: np.ndarray) -> None:
    n = values.shape[0]
    norms = np.sqrt((values**2).sum(axis=0))
    if (norms == 0).any():
        raise CodingError("Y contains an all-zero column")
    sums = np.abs(values.sum(axis=0))
    if (sums > ORTHO_RTOL * np.sqrt(n) * norms).any():
        raise CodingError(
            "Y columns are not centered contrasts; per-column R^2 sums are "
            "coding-dependent under non-orthogonal codings"
        )
    gram = values.T @ values
    off = np.abs(gram - np.diag(np.diag(gram)))
    if (off > ORTHO_RTOL * np.outer(norms, norms)).any():
        raise CodingError(
            "Y columns are not pairwise orthogonal; per-column R^2 sums are "
            "coding-dependent under non-orthogonal codings"
        )


def r2_sum(y, x, check_orthogonality: bool = True) -> R2SumResult:
    """R-squared of each Y column regressed on X with intercept, plus the sum.

    With Y an orthogonal-contrast main-effect block, the total equals the
    sum of squared canonical correlations between Y and X, and, when X is
    the full model of the other factors of a projection, the projection
    frequency of that projection.

    Args:
        check_orthogonality: verify that Y's columns are zero-sum and
            pairwise orthogonal (tolerance 1e-8 relative); the sum identity
            above fails for non-orthogonal codings such as dummy coding.

    Raises:
        CodingError: Y fails the orthogonality check, or a Y column is
            constant across runs.
    """
    y_values = _as_values(y)
    x_values = _as_values(x)
    if y_values.shape[0] != x_values.shape[0]:
        raise ValidationError(
            f"row mismatch: Y has {y_values.shape[0]} runs, X has {x_values.shape[0]}"
        )
    y_centered = y_values - y_values.mean(axis=0)
    sst = (y_centered**2).sum(axis=0)
    if (sst <= 0).any():
        raise CodingError("Y contains a constant column; R^2 is undefined")
    if check_orthogonality:
        _check_y_orthogonality(y_values)
    basis = _centered_basis(x_values)
    fitted = basis.T @ y_centered
    r2 = (fitted**2).sum(axis=0) / sst
    r2 = np.clip(r2, 0.0, 1.0)
    return R2SumResult(
        per_column=tuple(float(v) for v in r2),
        total=float(r2.sum()),
    )

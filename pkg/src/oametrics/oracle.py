"""Independent cross-checks for the main computational paths.

Each oracle recomputes a quantity by a deliberately different route:
pseudoinverse regression instead of basis projection, covariance
eigenvalues instead of basis SVDs, dense model matrices under a randomly
rotated orthogonal coding instead of count-tensor contraction. They are
slower and less robust than the main paths, which is fine: when both
routes agree to 1e-8 the main path earns trust; when an oracle cannot run
(singular covariance) it declines loudly instead of guessing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .array import OrthogonalArray, _check_subset
from .cancor import canonical_correlations, r2_sum
from .coding import contrasts, full_model_matrix, main_effect_matrix
from .errors import (
    OracleDeclinedError,
    ResolutionUndefinedError,
    StrengthZeroError,
    ValidationError,
)
from .gwlp import projection_a
from .resolution import resolution_of

# fixed seed for the rotated-coding word count oracle: verification runs
# must be reproducible
DEFAULT_SEED = 271828

# agreement threshold between a main path and its oracle
MISMATCH_TOL = 1e-8


@dataclass(frozen=True)
class OracleReport:
    """Outcome of one main-vs-oracle comparison."""

    quantity: str
    context: str
    main: float
    oracle: float

    @property
    def diff(self) -> float:
        return abs(self.main - self.oracle)

    @property
    def ok(self) -> bool:
        return self.diff <= MISMATCH_TOL


def oracle_r2(y, x) -> float:
    """R-squared of y on X via full-SVD pseudoinverse regression."""
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    if x.shape[0] != y.shape[0]:
        x = x.T
    if x.shape[0] != y.shape[0]:
        raise ValidationError("row mismatch between y and X")
    sst = float(((y - y.mean()) ** 2).sum())
    if sst <= 0:
        raise ValidationError("y is constant; R^2 undefined")
    design = np.hstack([np.ones((y.shape[0], 1)), x])
    beta = np.linalg.pinv(design) @ y
    residual = y - design @ beta
    return 1.0 - float((residual**2).sum()) / sst


def oracle_cancor(y, x, cond_limit: float = 1e12) -> tuple[float, ...]:
    """Canonical correlations via covariance-matrix eigenvalues.

    Square roots of the eigenvalues of Syy^-1 Syx Sxx^-1 Sxy, sorted
    descending and truncated to min(dim_y, dim_x) values.

    Raises:
        OracleDeclinedError: a covariance matrix is singular or too badly
            conditioned for the inverse-based formula.
    """
    y = np.atleast_2d(np.asarray(y, dtype=np.float64))
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    if y.shape[0] == 1:
        y = y.T
    if x.shape[0] == 1:
        x = x.T
    if y.shape[0] != x.shape[0]:
        raise ValidationError("row mismatch between Y and X")
    n = y.shape[0]
    yc = y - y.mean(axis=0)
    xc = x - x.mean(axis=0)
    syy = yc.T @ yc / (n - 1)
    sxx = xc.T @ xc / (n - 1)
    syx = yc.T @ xc / (n - 1)
    for name, s in (("Syy", syy), ("Sxx", sxx)):
        if np.linalg.cond(s) > cond_limit:
            raise OracleDeclinedError(
                f"{name} is singular or near-singular; the inverse-based "
                "oracle does not apply"
            )
    q2 = np.linalg.solve(syy, syx) @ np.linalg.solve(sxx, syx.T)
    eigvals = np.clip(scipy.linalg.eigvals(q2).real, 0.0, 1.0)
    # eigenvalues carry O(machine eps) rounding noise; without a floor the
    # square root amplifies an exact-zero correlation into ~1e-8 artifacts
    eigvals[eigvals < 1e-12] = 0.0
    values = np.sqrt(eigvals)
    values.sort()
    k = min(y.shape[1], x.shape[1])
    return tuple(float(v) for v in values[::-1][:k])


def oracle_a_k(oa: OrthogonalArray, subset: Sequence[int], seed: int = DEFAULT_SEED) -> float:
    """Projection frequency via a dense model matrix under a rotated coding.

    Rotates each factor's polynomial contrasts by a seeded random orthogonal
    matrix (still a normalized orthogonal coding), builds the full
    interaction matrix row by row, and sums squared column sums. Agreement
    with the count-based main path also exercises coding invariance.
    """
    cols = _check_subset(oa, subset)
    rng = np.random.default_rng(seed)
    dense = np.ones((oa.runs, 1))
    for j in cols:
        base = contrasts(oa.levels[j], "polynomial").coefficients
        width = oa.levels[j] - 1
        if width == 1:
            rotation = np.array([[1.0]])
        else:
            q, r = np.linalg.qr(rng.normal(size=(width, width)))
            rotation = q * np.sign(np.diag(r))
        rotated = base @ rotation
        expanded = rotated[oa.cells[:, j]]
        dense = np.einsum("nc,nd->ndc", dense, expanded).reshape(oa.runs, -1)
    column_sums = dense.sum(axis=0)
    return float((column_sums**2).sum()) / oa.runs**2


def verify_array(
    oa: OrthogonalArray,
    max_k: int | None = None,
    seed: int = DEFAULT_SEED,
) -> list[OracleReport]:
    """Run all applicable main-vs-oracle comparisons on one array.

    Projection frequencies are compared for every subset of size 2 up to
    ``max_k`` (default: R when defined, else 2, capped at n). For subsets of
    size R, canonical correlations and per-column R^2 values are compared
    factor by factor; covariance-singular cases are skipped by the oracle
    and do not count as mismatches.
    """
    reports: list[OracleReport] = []
    try:
        R = resolution_of(oa)
    except (StrengthZeroError, ResolutionUndefinedError):
        R = None
    if max_k is None:
        max_k = R if R is not None else 2
    max_k = min(max_k, oa.factors)

    for k in range(2, max_k + 1):
        for cols in itertools.combinations(range(oa.factors), k):
            main = projection_a(oa, cols).value
            other = oracle_a_k(oa, cols, seed=seed)
            reports.append(
                OracleReport(
                    quantity="projection_a",
                    context=f"columns {cols}",
                    main=main,
                    oracle=other,
                )
            )

    if R is not None and R <= oa.factors:
        for cols in itertools.combinations(range(oa.factors), R):
            for c in cols:
                rest = tuple(j for j in cols if j != c)
                y = main_effect_matrix(oa, c)
                x = full_model_matrix(oa, rest)
                result = canonical_correlations(y, x)
                try:
                    other = oracle_cancor(y.values, x.values)
                except OracleDeclinedError:
                    continue
                for pos, (main_r, oracle_r) in enumerate(zip(result.correlations, other)):
                    reports.append(
                        OracleReport(
                            quantity="canonical_correlation",
                            context=f"factor {c} vs {rest}, r_{pos + 1}",
                            main=main_r,
                            oracle=oracle_r,
                        )
                    )
                r2 = r2_sum(y, x)
                for pos, value in enumerate(r2.per_column):
                    other_r2 = oracle_r2(y.values[:, pos], x.values)
                    reports.append(
                        OracleReport(
                            quantity="r2",
                            context=f"factor {c} contrast {pos + 1} vs {rest}",
                            main=value,
                            oracle=other_r2,
                        )
                    )
    return reports

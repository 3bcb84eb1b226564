"""Generalized resolution of orthogonal arrays with qualitative factors.

All quantities live on projections of size R = strength + 1. The aggregate
measures interpolate between R (some complete aliasing) and R + 1 (no
aliasing among R-factor projections):

* ``gr``: worst-case complete-confounding measure, driven by the largest
  projection frequency a_R scaled by the smallest level count in the
  projection.
* ``gr_ind``: worst-case individual-contrast confounding, driven by the
  largest canonical correlation between one factor's main effects and the
  interaction columns of the other R-1 factors.
* ``gr_tot``: averaged variant of ``gr`` over the factors of a projection.

Factor-wise versions condition on a factor taking part; the aggregate
values are their minima over factors.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import array
from .array import OrthogonalArray
from .cancor import canonical_correlations
from .coding import Coding, interaction_matrix, main_effect_matrix, resolve_coding
from .errors import CodingError, ResolutionUndefinedError, StrengthZeroError
from .gwlp import _a_value

# worst-projection ties within this tolerance keep the lexicographically
# earliest subset
TIE_TOL = 1e-12


@dataclass(frozen=True)
class GRBound:
    """Upper bound on gr for a symmetric s-level array.

    Attributes:
        value: the bound R + 1 - sqrt(r(s^R - r) / (N^2 (s-1))) with
            r = N mod s^R.
        remainder: that r.
        attained: whether a concrete array attains the bound (it does
            exactly when it has weak strength R); None when no array was
            supplied.
    """

    value: float
    remainder: int
    attained: bool | None = None


@dataclass(frozen=True)
class FactorResolution:
    """Factor-wise generalized resolution values for one column."""

    column: int
    levels: int
    gr_tot: float
    gr_ind: float


@dataclass(frozen=True)
class ResolutionSummary:
    """Resolution R together with all generalized resolution measures."""

    resolution: int
    gr: float
    gr_ind: float
    gr_tot: float
    per_factor: tuple[FactorResolution, ...]
    worst_projection: tuple[int, ...]
    worst_pair: tuple[int, tuple[int, ...]]
    bound: GRBound | None


def resolution_of(oa: OrthogonalArray) -> int:
    """Resolution R = strength + 1.

    Raises:
        StrengthZeroError: some single column is unbalanced.
        ResolutionUndefinedError: strength equals n (full factorial or a
            replicate of one), so no R-column projection exists.
    """
    t = array.strength(oa)
    if t == 0:
        raise StrengthZeroError(
            "array has strength 0 (an unbalanced column); resolution-based "
            "measures are undefined"
        )
    if t >= oa.factors:
        raise ResolutionUndefinedError(
            f"strength {t} equals the number of factors; resolution exceeds "
            f"{oa.factors} and no projection of size {t + 1} exists"
        )
    return t + 1


def _require_normalized(oa: OrthogonalArray, coding: Coding) -> None:
    for j, cset in resolve_coding(oa, range(oa.factors), coding).items():
        if not cset.normalized:
            raise CodingError(
                f"generalized resolution needs a normalized orthogonal coding; "
                f"column {j} got scheme {cset.scheme!r}"
            )


def _largest_cc(oa: OrthogonalArray, c: int, rest: tuple[int, ...], coding: Coding) -> float:
    key = ("r1", c, rest, coding) if isinstance(coding, str) else None
    if key is not None and key in oa._cache:
        return oa._cache[key]
    y = main_effect_matrix(oa, c, coding)
    if len(rest) == 1:
        x = main_effect_matrix(oa, rest[0], coding)
    else:
        x = interaction_matrix(oa, rest, coding)
    value = canonical_correlations(y, x).largest
    if key is not None:
        oa._cache[key] = value
    return value


def _gr_details(oa: OrthogonalArray, coding: Coding) -> tuple[int, float, tuple[int, ...]]:
    R = resolution_of(oa)
    best = -math.inf
    worst: tuple[int, ...] = ()
    for cols in itertools.combinations(range(oa.factors), R):
        s_min = min(oa.levels[j] for j in cols)
        ratio = _a_value(oa, cols, coding) / (s_min - 1)
        if ratio > best + TIE_TOL:
            best, worst = ratio, cols
    return R, R + 1 - math.sqrt(max(best, 0.0)), worst


def gr(oa: OrthogonalArray, coding: Coding = "polynomial") -> float:
    """Generalized resolution from worst-projection frequencies.

    R + 1 - sqrt(max over R-subsets of a_R / (s_min - 1)), with s_min the
    smallest level count in the subset. Equals R exactly when some factor's
    main effects are completely confounded within an R-projection.
    """
    _require_normalized(oa, coding)
    return _gr_details(oa, coding)[1]


def _gr_ind_details(oa: OrthogonalArray, coding: Coding) -> tuple[int, float, tuple[int, tuple[int, ...]]]:
    R = resolution_of(oa)
    best = -math.inf
    worst_pair: tuple[int, tuple[int, ...]] = (0, ())
    for cols in itertools.combinations(range(oa.factors), R):
        two_level = [c for c in cols if oa.levels[c] == 2]
        # a 2-level factor always yields the largest correlation in its
        # projection, so checking one of them suffices
        candidates = [min(two_level)] if two_level else list(cols)
        for c in candidates:
            rest = tuple(j for j in cols if j != c)
            r1 = _largest_cc(oa, c, rest, coding)
            if r1 > best + TIE_TOL:
                best, worst_pair = r1, (c, rest)
    return R, R + 1 - best, worst_pair


def gr_ind(oa: OrthogonalArray, coding: Coding = "polynomial") -> float:
    """Generalized resolution from worst individual canonical correlations.

    R + 1 - max over (R-subset, factor c in it) of the largest canonical
    correlation between c's main-effect columns and the interaction columns
    of the remaining R-1 factors. Never exceeds ``gr``.
    """
    _require_normalized(oa, coding)
    return _gr_ind_details(oa, coding)[1]


def gr_tot(oa: OrthogonalArray, coding: Coding = "polynomial") -> float:
    """Averaged variant of ``gr``: mean confounding over a projection's factors."""
    _require_normalized(oa, coding)
    R = resolution_of(oa)
    best = -math.inf
    for cols in itertools.combinations(range(oa.factors), R):
        a = _a_value(oa, cols, coding)
        ratio = float(np.mean([a / (oa.levels[j] - 1) for j in cols]))
        if ratio > best + TIE_TOL:
            best = ratio
    return R + 1 - math.sqrt(max(best, 0.0))


def gr_factorwise(oa: OrthogonalArray, coding: Coding = "polynomial") -> tuple[FactorResolution, ...]:
    """Factor-wise gr_tot(i) and gr_ind(i), over projections containing i."""
    _require_normalized(oa, coding)
    R = resolution_of(oa)
    out = []
    for i in range(oa.factors):
        others = [j for j in range(oa.factors) if j != i]
        best_tot = -math.inf
        best_ind = -math.inf
        for rest in itertools.combinations(others, R - 1):
            cols = tuple(sorted((i,) + rest))
            ratio = _a_value(oa, cols, coding) / (oa.levels[i] - 1)
            best_tot = max(best_tot, ratio)
            best_ind = max(best_ind, _largest_cc(oa, i, rest, coding))
        out.append(
            FactorResolution(
                column=i,
                levels=oa.levels[i],
                gr_tot=R + 1 - math.sqrt(max(best_tot, 0.0)),
                gr_ind=R + 1 - best_ind,
            )
        )
    return tuple(out)


def a_r_lower_bound(n_runs: int, levels: Sequence[int]) -> float:
    """Smallest possible worst-projection frequency for given run and level counts.

    For an R-factor projection with the given level counts, a_R is at least
    r (prod(levels) - r) / N^2 with r = N mod prod(levels); equality holds
    exactly for projections with maximum R-balance (all cell counts in
    {q, q+1}).
    """
    grid = math.prod(int(s) for s in levels)
    r = n_runs % grid
    return r * (grid - r) / n_runs**2


def gr_upper_bound(n_runs: int, s: int, R: int, oa: OrthogonalArray | None = None) -> GRBound:
    """Upper bound on ``gr`` for symmetric s-level arrays of resolution R.

    When an array is supplied, the attainment flag reports whether it meets
    the bound, which happens exactly when it has weak strength R (strength
    R-1 plus maximum R-balance). The supplied array must match n_runs and
    have all factors at s levels.
    """
    if s < 2 or R < 1 or n_runs < 1:
        raise ValueError("need n_runs >= 1, s >= 2, R >= 1")
    grid = s**R
    r = n_runs % grid
    value = R + 1 - math.sqrt(r * (grid - r) / (n_runs**2 * (s - 1)))
    attained = None
    if oa is not None:
        if oa.runs != n_runs or any(level != s for level in oa.levels):
            raise ValueError("supplied array does not match n_runs and s")
        attained = bool(array.weak_strength(oa, R))
    return GRBound(value=value, remainder=r, attained=attained)


def summarize(oa: OrthogonalArray, coding: Coding = "polynomial") -> ResolutionSummary:
    """All generalized resolution measures of one array in a single report."""
    _require_normalized(oa, coding)
    R, gr_value, worst = _gr_details(oa, coding)
    _, gr_ind_value, worst_pair = _gr_ind_details(oa, coding)
    gr_tot_value = gr_tot(oa, coding)
    per_factor = gr_factorwise(oa, coding)
    bound = None
    if len(set(oa.levels)) == 1:
        bound = gr_upper_bound(oa.runs, oa.levels[0], R, oa=oa)
    return ResolutionSummary(
        resolution=R,
        gr=gr_value,
        gr_ind=gr_ind_value,
        gr_tot=gr_tot_value,
        per_factor=per_factor,
        worst_projection=worst,
        worst_pair=worst_pair,
        bound=bound,
    )

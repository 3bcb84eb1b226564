"""Orthogonal array container, text parsing, and balance diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

import numpy as np

from . import backend
from .errors import ParseError, ValidationError


@dataclass(frozen=True, eq=False)
class OrthogonalArray:
    """A run-by-factor grid of integer levels.

    Attributes:
        cells: (N, n) int64 matrix, row = run, column = factor. Level coding
            is dense: column j takes values in {0, ..., levels[j]-1}.
        levels: number of levels per factor, each >= 2.

    Instances are immutable; the cell matrix is marked read-only. A private
    cache memoizes per-projection quantities (safe under concurrent readers:
    entries are only ever added, and recomputation is deterministic).
    """

    cells: np.ndarray
    levels: tuple[int, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        cells = np.ascontiguousarray(self.cells, dtype=np.int64)
        if cells.ndim != 2:
            raise ValidationError("cell matrix must be two-dimensional")
        levels = tuple(int(s) for s in self.levels)
        n_runs, n_factors = cells.shape
        if n_factors < 1:
            raise ValidationError("need at least one factor")
        if n_runs < 2:
            raise ValidationError(f"need at least 2 runs, got {n_runs}")
        if len(levels) != n_factors:
            raise ValidationError(
                f"got {len(levels)} level counts for {n_factors} columns"
            )
        for j, s in enumerate(levels):
            if s < 2:
                raise ValidationError(f"column {j}: need at least 2 levels, got {s}")
        if cells.min() < 0:
            raise ValidationError("negative level codes are not allowed")
        for j, s in enumerate(levels):
            top = int(cells[:, j].max())
            if top >= s:
                raise ValidationError(
                    f"column {j}: level code {top} outside 0..{s - 1}"
                )
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "levels", levels)

    @classmethod
    def from_rows(cls, rows, levels: Sequence[int] | None = None) -> "OrthogonalArray":
        """Build an array from a row iterable.

        Without an explicit ``levels`` the level counts are inferred as
        max+1 per column and dense coding is enforced: every value in
        0..max must occur. With explicit ``levels``, unobserved top levels
        are permitted (the declaration is trusted).
        """
        cells = np.ascontiguousarray(rows, dtype=np.int64)
        if cells.ndim != 2:
            raise ValidationError("rows must form a two-dimensional grid")
        if levels is None:
            if cells.size == 0:
                raise ValidationError("empty input")
            if cells.min() < 0:
                raise ValidationError("negative level codes are not allowed")
            inferred = []
            for j in range(cells.shape[1]):
                col = cells[:, j]
                s = int(col.max()) + 1
                present = np.bincount(col, minlength=s) > 0
                if not present.all():
                    missing = int(np.flatnonzero(~present)[0])
                    raise ValidationError(
                        f"column {j}: level {missing} never occurs; "
                        "declare levels explicitly or recode densely"
                    )
                inferred.append(s)
            levels = inferred
        return cls(cells, tuple(int(s) for s in levels))

    @property
    def runs(self) -> int:
        return int(self.cells.shape[0])

    @property
    def factors(self) -> int:
        return int(self.cells.shape[1])

    def take_columns(self, columns: Sequence[int]) -> "OrthogonalArray":
        """Sub-array on the given columns, in the given order."""
        cols = _check_subset(self, columns, allow_reorder=True)
        return OrthogonalArray(self.cells[:, cols], tuple(self.levels[j] for j in cols))

    def permute_rows(self, order: Sequence[int]) -> "OrthogonalArray":
        order = np.asarray(order, dtype=np.int64)
        if sorted(order.tolist()) != list(range(self.runs)):
            raise ValidationError("row order must be a permutation of 0..N-1")
        return OrthogonalArray(self.cells[order], self.levels)

    def permute_columns(self, order: Sequence[int]) -> "OrthogonalArray":
        order = list(order)
        if sorted(order) != list(range(self.factors)):
            raise ValidationError("column order must be a permutation of 0..n-1")
        return self.take_columns(order)

    def relabel_levels(self, column: int, mapping: Sequence[int]) -> "OrthogonalArray":
        """Apply a level permutation to one column."""
        s = self.levels[column]
        mapping = list(mapping)
        if sorted(mapping) != list(range(s)):
            raise ValidationError(f"mapping must be a permutation of 0..{s - 1}")
        cells = self.cells.copy()
        cells[:, column] = np.asarray(mapping, dtype=np.int64)[cells[:, column]]
        return OrthogonalArray(cells, self.levels)


@dataclass(frozen=True)
class FrequencyTable:
    """Cell counts of a projection onto a column subset.

    Attributes:
        subset: the projected columns, ascending.
        counts: map from observed level tuple to its count; combinations
            that never occur are absent (implicitly zero).
        grid_size: product of the level counts of the projected columns.
    """

    subset: tuple[int, ...]
    counts: dict
    grid_size: int

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class BalanceReport:
    """Balance diagnostics of all t-column projections.

    ``is_strength_t`` means every projection has exactly equal cell counts;
    ``has_max_t_balance`` relaxes that to counts in {q, q+1}. ``q`` and ``r``
    are quotient and remainder of N by the grid size of the reported
    projection: the witness if one exists, else the first subset.
    """

    t: int
    is_strength_t: bool
    has_max_t_balance: bool
    q: int
    r: int
    witness: tuple[int, ...] | None


def parse_oa(source: str | IO | Iterable[str], level_override: Sequence[int] | None = None) -> OrthogonalArray:
    """Parse an array from text.

    Format: one run per line, integer level codes separated by whitespace
    and/or commas; blank lines are skipped; lines starting with '#' are
    comments. A comment of the form ``# levels: s1 s2 ... sn`` declares the
    level counts; an explicit ``level_override`` argument wins over it.
    Without either, levels are inferred as max+1 per column and dense coding
    is enforced.

    Raises:
        ParseError: malformed text (non-integer token, ragged row, negative
            value, value outside declared levels, empty input), with line
            and token positions in the message.
        ValidationError: structurally valid text that violates an array
            requirement (fewer than 2 runs, fewer than 2 levels).
    """
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = [line.rstrip("\n") for line in source]

    declared: list[int] | None = list(level_override) if level_override is not None else None
    header: list[int] | None = None
    rows: list[list[int]] = []
    width: int | None = None
    row_lines: list[int] = []

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if body.lower().startswith("levels:"):
                tokens = body[len("levels:"):].replace(",", " ").split()
                try:
                    header = [int(tok) for tok in tokens]
                except ValueError:
                    raise ParseError("malformed levels header", line=lineno) from None
            continue
        tokens = line.replace(",", " ").split()
        row = []
        for pos, tok in enumerate(tokens, start=1):
            try:
                value = int(tok)
            except ValueError:
                raise ParseError(f"not an integer: {tok!r}", line=lineno, column=pos) from None
            if value < 0:
                raise ParseError(f"negative level code {value}", line=lineno, column=pos)
            row.append(value)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(
                f"ragged row: {len(row)} values, expected {width}", line=lineno
            )
        rows.append(row)
        row_lines.append(lineno)

    if not rows:
        raise ParseError("empty input: no data rows")

    levels = declared if declared is not None else header
    if levels is not None:
        if len(levels) != width:
            raise ParseError(
                f"{len(levels)} level counts declared for {width} columns"
            )
        for i, row in enumerate(rows):
            for pos, value in enumerate(row, start=1):
                if value >= levels[pos - 1]:
                    raise ParseError(
                        f"level code {value} outside 0..{levels[pos - 1] - 1}",
                        line=row_lines[i],
                        column=pos,
                    )
        return OrthogonalArray(np.asarray(rows, dtype=np.int64), tuple(levels))
    return OrthogonalArray.from_rows(np.asarray(rows, dtype=np.int64))


def _check_subset(oa: OrthogonalArray, columns: Sequence[int], allow_reorder: bool = False) -> tuple[int, ...]:
    cols = tuple(int(j) for j in columns)
    if len(cols) == 0:
        raise ValidationError("empty column subset")
    if len(set(cols)) != len(cols):
        raise ValidationError(f"repeated column in subset {cols}")
    for j in cols:
        if not 0 <= j < oa.factors:
            raise ValidationError(f"column {j} outside 0..{oa.factors - 1}")
    if not allow_reorder:
        cols = tuple(sorted(cols))
    return cols


def projection_counts(oa: OrthogonalArray, subset: Sequence[int]) -> FrequencyTable:
    """Frequency table of the projection onto a column subset."""
    cols = _check_subset(oa, subset)
    radices = [oa.levels[j] for j in cols]
    counts = backend.cell_counts(oa.cells[:, cols], radices)
    grid = math.prod(radices)
    observed = {}
    for flat in np.flatnonzero(counts):
        combo = np.unravel_index(int(flat), radices)
        observed[tuple(int(v) for v in combo)] = int(counts[flat])
    return FrequencyTable(subset=cols, counts=observed, grid_size=grid)


def strength(oa: OrthogonalArray, max_t: int | None = None) -> int:
    """Largest t such that every t-column projection is fully balanced.

    Returns 0 when some single column is unbalanced. ``max_t`` caps the
    search (useful for wide arrays); without it the search runs to n.
    """
    key = ("strength", max_t)
    if key in oa._cache:
        return oa._cache[key]
    limit = oa.factors if max_t is None else min(max_t, oa.factors)
    result = 0
    for t in range(1, limit + 1):
        ok, _ = backend.scan_balance(oa.cells, list(oa.levels), t, True)
        if not ok:
            break
        result = t
    oa._cache[key] = result
    return result


def max_t_balance(oa: OrthogonalArray, t: int) -> BalanceReport:
    """Check all t-column projections for strength-t and {q, q+1} balance."""
    if not 1 <= t <= oa.factors:
        raise ValidationError(f"t must be in 1..{oa.factors}, got {t}")
    exact_ok, _ = backend.scan_balance(oa.cells, list(oa.levels), t, True)
    near_ok, witness = backend.scan_balance(oa.cells, list(oa.levels), t, False)
    report_subset = witness if witness is not None else tuple(range(t))
    grid = math.prod(oa.levels[j] for j in report_subset)
    return BalanceReport(
        t=t,
        is_strength_t=exact_ok,
        has_max_t_balance=near_ok,
        q=oa.runs // grid,
        r=oa.runs % grid,
        witness=tuple(witness) if witness is not None else None,
    )


def weak_strength(oa: OrthogonalArray, t: int) -> bool:
    """Strength at least t-1 together with maximum t-balance."""
    if not 1 <= t <= oa.factors:
        raise ValidationError(f"t must be in 1..{oa.factors}, got {t}")
    if strength(oa, max_t=t - 1) < t - 1:
        return False
    return max_t_balance(oa, t).has_max_t_balance


def v_uniformity(oa: OrthogonalArray, subset: Sequence[int] | None = None) -> float:
    """Variance of cell counts over the full projection grid.

    Over all level combinations x of the chosen columns (default: all),
    returns mean((N_x - Nbar)^2) with Nbar = N / grid size. Zero exactly
    when the projection is fully balanced.
    """
    cols = _check_subset(oa, subset if subset is not None else range(oa.factors))
    radices = [oa.levels[j] for j in cols]
    grid = math.prod(radices)
    counts = backend.cell_counts(oa.cells[:, cols], radices)
    sum_sq = int((counts.astype(object) ** 2).sum())
    # integer-exact numerator: grid * sum(N_x^2) - N^2, then divide once
    return (grid * sum_sq - oa.runs**2) / grid**2


def coincidence_distribution(oa: OrthogonalArray, columns: Sequence[int] | None = None) -> dict[int, int]:
    """Histogram over unordered run pairs of the number of agreeing columns.

    Returns a map from coincidence count delta to the number of run pairs
    attaining it; zero-frequency deltas are omitted.
    """
    cols = _check_subset(oa, columns if columns is not None else range(oa.factors))
    hist = backend.coincidence_hist(oa.cells[:, cols])
    return {int(d): int(c) for d, c in enumerate(hist) if c > 0}

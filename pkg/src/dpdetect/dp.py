"""Exact constrained-likelihood maximization by dynamic programming.

Let ``scores[s]`` be the correlation score at candidate start ``s`` (there
are ``M = N - L + 1`` candidates) and let ``best[n][j]`` be the largest
objective achievable with ``j`` non-overlapping placements whose starts all
lie among the first ``n`` candidates. Then

    best[n][j] = max(best[n-1][j], best[max(n-L, 0)][j-1] + scores[n-1])

because a placement at start ``n-1`` forces the previous placement's start
to be at most ``n-1-L``. Row 0 holds the empty prefix: 0 for ``j = 0`` and
-inf for ``j >= 1`` (the infeasibility sentinel, which also makes the
clamped index correct for ``n < L``). The final row therefore carries the
exact optimum for every occurrence count up to ``k_max``.

The fill is vectorized per column with a running maximum, so the table
costs O(M) numpy work per occurrence count on top of one score
computation. One boolean per cell records whether the "place" branch won
strictly; ties prefer the "skip" branch, which keeps the backtracked
solution deterministic (among optima, the earliest improving position is
kept at every level).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    DetectionResult,
    InfeasibleError,
    PlacementSet,
    ValidationError,
    as_measurement,
    as_template,
)
from .xcorr import correlation_scores

__all__ = ["DpTable", "dp_solve", "dp_backtrack", "dp_detect", "dp_objective_column"]


@dataclass(frozen=True)
class DpTable:
    """Filled table of shape ``(M+1, k_max+1)`` plus the choice bits.

    ``best[n][j]`` is -inf when ``j`` placements cannot fit in the first
    ``n`` candidate positions; column 0 is identically zero.
    """

    best: np.ndarray
    choice: np.ndarray
    n_samples: int
    length: int

    @property
    def k_max(self) -> int:
        return self.best.shape[1] - 1


def dp_solve(y, x, k_max: int) -> DpTable:
    """Fill the table for every occurrence count ``j = 0 .. k_max``."""
    y = as_measurement(y)
    x = as_template(x)
    if k_max < 0:
        raise ValidationError("k_max must be non-negative")
    if y.length < x.length:
        raise ValidationError(
            f"measurement shorter than template ({y.length} < {x.length})"
        )
    scores = correlation_scores(y, x).scores
    n_pos = scores.size
    length = x.length

    best = np.full((n_pos + 1, k_max + 1), -np.inf)
    choice = np.zeros((n_pos + 1, k_max + 1), dtype=bool)
    best[:, 0] = 0.0

    # Row reached by the previous placement when placing at start n-1.
    prev_rows = np.maximum(np.arange(1, n_pos + 1) - length, 0)
    for j in range(1, k_max + 1):
        place = best[prev_rows, j - 1] + scores
        running = np.maximum.accumulate(place)
        best[1:, j] = running
        # Strict improvement over the skip branch marks a placement at n-1.
        skip = np.concatenate(([-np.inf], running[:-1]))
        choice[1:, j] = place > skip
    return DpTable(best=best, choice=choice, n_samples=y.length, length=length)


def dp_backtrack(table: DpTable, k: int) -> PlacementSet:
    """Recover one optimal placement set for ``k`` occurrences."""
    if not 0 <= k <= table.k_max:
        raise ValidationError(f"k={k} outside table range 0..{table.k_max}")
    if not np.isfinite(table.best[-1, k]):
        raise InfeasibleError(
            f"{k} placements of length {table.length} do not fit in "
            f"N={table.n_samples} under the separation constraint"
        )
    n_rows = table.best.shape[0]
    rows = np.arange(n_rows)
    starts = []
    n = n_rows - 1
    for j in range(k, 0, -1):
        # Most recent row (<= n) where the place branch strictly improved.
        placed = np.where(table.choice[: n + 1, j], rows[: n + 1], 0)
        r = int(placed.max())
        starts.append(r - 1)
        n = max(r - table.length, 0)
    starts.reverse()
    return PlacementSet(starts, table.length)


def dp_detect(y, x, k: int) -> DetectionResult:
    """Exact maximizer of the separation-constrained objective for ``k``.

    Raises :class:`InfeasibleError` when ``k`` placements cannot fit.
    """
    if k < 1:
        raise ValidationError("need at least one occurrence to detect")
    table = dp_solve(y, x, k)
    placements = dp_backtrack(table, k)
    return DetectionResult(
        placements=placements,
        objective=float(table.best[-1, k]),
        method="dp",
        k_hat=k,
    )


def dp_objective_column(table: DpTable) -> np.ndarray:
    """Final-row optima for ``j = 0 .. k_max`` (read-only copy)."""
    return table.best[-1, :].copy()

"""Detection scoring against ground truth.

An estimate counts as a true positive when its start index lies strictly
within half a template length of a truth start, with one-to-one matching.
Because truths are separated by at least ``L``, the radius-``L/2`` windows
around them are disjoint, so greedy nearest-first matching is optimal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import PlacementSet, ValidationError

__all__ = ["ScoreReport", "match_detections", "score"]


@dataclass(frozen=True)
class ScoreReport:
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float
    k_err: float


def match_detections(
    truth: PlacementSet, est: PlacementSet, length: int
) -> tuple[int, int, int]:
    """One-to-one matching of estimates to truths within radius ``L/2``.

    A pair is matchable iff ``|est - truth| < L/2`` (strict, real-valued).
    Matchable pairs are consumed in ascending-distance order. Returns
    ``(tp, fp, fn)``.
    """
    t = truth.starts.astype(float)
    e = est.starts.astype(float)
    if t.size == 0 or e.size == 0:
        return 0, int(e.size), int(t.size)
    dist = np.abs(e[:, None] - t[None, :])
    pairs = [
        (dist[i, j], i, j)
        for i in range(e.size)
        for j in range(t.size)
        if dist[i, j] < length / 2
    ]
    pairs.sort()
    used_e: set[int] = set()
    used_t: set[int] = set()
    tp = 0
    for _, i, j in pairs:
        if i in used_e or j in used_t:
            continue
        used_e.add(i)
        used_t.add(j)
        tp += 1
    return tp, int(e.size) - tp, int(t.size) - tp


def score(
    truth: PlacementSet, est: PlacementSet, length: int, k_true: int
) -> ScoreReport:
    """Precision, recall, F1 (0/0 cases defined as 0), and ``|k_hat/K - 1|``."""
    if k_true < 1:
        raise ValidationError("k_true must be >= 1")
    tp, fp, fn = match_detections(truth, est, length)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = (
        2.0 * precision * recall / (precision + recall)
        if precision + recall
        else 0.0
    )
    k_err = abs(len(est) / k_true - 1.0)
    return ScoreReport(
        tp=tp, fp=fp, fn=fn, precision=precision, recall=recall, f1=f1, k_err=k_err
    )

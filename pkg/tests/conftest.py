"""Shared independent oracles for the detector tests.

These deliberately avoid the library's scoring and table code: window sums
come from explicit dot products and optima from exhaustive enumeration, so
they can vouch for the fast paths.
"""

import itertools

import numpy as np


def window_scores(y, x):
    """Direct per-start window sums, independent of the xcorr module."""
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    length = x.size
    return np.array(
        [float(np.dot(y[s : s + length], x)) for s in range(y.size - length + 1)]
    )


def brute_force_objective(y, x, k):
    """Exhaustive maximum over all separated start sets of size ``k``.

    Returns -inf when no valid set exists.
    """
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    length = x.size
    scores = window_scores(y, x)
    n_pos = scores.size
    best = -np.inf
    for combo in itertools.combinations(range(n_pos), k):
        if any(combo[i + 1] - combo[i] < length for i in range(k - 1)):
            continue
        best = max(best, float(sum(scores[list(combo)])))
    return best


def random_instance(rng, n_max=40, l_max=6, k_max=3):
    """Small random (y, x, k) triple with a feasible k."""
    length = int(rng.integers(2, l_max + 1))
    n = int(rng.integers(max(length + 1, 8), n_max + 1))
    n_pos = n - length + 1
    k_fit = (n_pos - 1) // length + 1
    k = int(rng.integers(1, min(k_max, k_fit) + 1))
    sigma2 = float(rng.choice([0.0, 1.0]))
    y = rng.standard_normal(n) * np.sqrt(max(sigma2, 1e-12))
    if rng.random() < 0.5:
        # Plant a couple of template copies so signal-bearing cases appear.
        start = int(rng.integers(0, n_pos))
        y[start : start + length] += 1.0
    x = rng.standard_normal(length)
    return y, x, k

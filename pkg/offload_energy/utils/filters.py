import numpy as np


def mean_preserving_jitter(rng: np.random.Generator, n: int, amplitude: float) -> np.ndarray:
    """
    ``n`` relative offsets in [-amplitude, amplitude] that sum to zero.

    Offsets come in antithetic pairs (u, -u) placed at random positions; an
    odd leftover sample gets 0.
    """
    if n <= 0:
        return np.zeros(0)
    if amplitude <= 0:
        return np.zeros(n)
    half = rng.uniform(-amplitude, amplitude, size=n // 2)
    offsets = np.concatenate([half, -half, np.zeros(n % 2)])
    return offsets[rng.permutation(n)]


def step_lookup(edges, levels, t, right_limit: bool = False) -> np.ndarray:
    """
    Evaluate a piecewise-constant signal at times ``t``.

    ``levels[k]`` holds on [edges[k], edges[k+1]). With ``right_limit`` the
    value just before ``t`` is returned instead (left limit at a boundary).
    """
    edges = np.asarray(edges, dtype=float)
    levels = np.asarray(levels, dtype=float)
    side = "left" if right_limit else "right"
    idx = np.searchsorted(edges, np.asarray(t, dtype=float), side=side) - 1
    return levels[np.clip(idx, 0, levels.size - 1)]

"""Small deterministic local-search helpers shared by the search routines."""

from __future__ import annotations

import numpy as np

__all__ = ["compass_descent"]


def compass_descent(
    fn,
    x0,
    lower=0.0,
    upper=1.0,
    step0: float = 0.1,
    min_step: float = 1e-6,
):
    """Coordinate descent with a shrinking step inside a box.

    Sweeps the coordinates trying +/- step moves (clipped to the box) and
    keeps any improvement; when a full sweep fails the step halves, until
    it drops below ``min_step``.  Purely deterministic, no randomness.

    Parameters
    ----------
    fn : callable
        Objective mapping a 1-d array to a float.
    x0 : array_like
        Starting point.
    lower, upper : float or array_like
        Box bounds, broadcast against ``x0``.

    Returns
    -------
    (numpy.ndarray, float)
        The final point and its objective value.
    """
    x = np.asarray(x0, dtype=float).copy()
    lo = np.broadcast_to(np.asarray(lower, dtype=float), x.shape)
    hi = np.broadcast_to(np.asarray(upper, dtype=float), x.shape)
    np.clip(x, lo, hi, out=x)
    best = fn(x)
    step = step0
    while step >= min_step:
        improved = False
        for i in range(x.size):
            xi = x[i]
            for cand in (min(xi + step, hi[i]), max(xi - step, lo[i])):
                if cand == xi:
                    continue
                x[i] = cand
                val = fn(x)
                if val < best - 1e-15:
                    best = val
                    xi = cand
                    improved = True
                else:
                    x[i] = xi
        if not improved:
            step *= 0.5
    return x, best

"""Self-contained phase-1 simplex for equality-form feasibility problems.

Solves "find x >= 0 with A x = b" by minimizing the sum of artificial
variables.  Two backends: a vectorized float tableau for the large column
counts the hull oracle generates, and an exact Fraction tableau (Bland's
rule, no tolerances) for bit-exact certificates at small sizes.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = ["solve_feasibility", "solve_feasibility_exact"]

_PIVOT_TOL = 1e-10


def solve_feasibility(A, b, tol: float = 1e-9, max_iter: int | None = None):
    """Find x >= 0 with A x = b, or return None when infeasible.

    Phase-1 simplex on the dense tableau.  Entering column by Dantzig's
    rule with a Bland fallback after stalling to rule out cycling.

    Parameters
    ----------
    A : (m, k) array_like
    b : (m,) array_like
    tol : float
        Feasibility threshold on the residual artificial mass.

    Returns
    -------
    numpy.ndarray or None
        A basic feasible solution (at most m nonzeros), or None.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float).copy()
    m, k = A.shape
    if b.shape != (m,):
        raise ValueError(f"b has shape {b.shape}, expected ({m},)")

    A = A.copy()
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0

    # Tableau columns: k structural, m artificial, then the rhs.
    T = np.zeros((m + 1, k + m + 1))
    T[:m, :k] = A
    T[:m, k : k + m] = np.eye(m)
    T[:m, -1] = b
    # Objective row: reduced costs for minimizing the artificial sum,
    # expressed for the all-artificial starting basis.
    T[m, :k] = A.sum(axis=0)
    T[m, -1] = b.sum()

    basis = list(range(k, k + m))
    if max_iter is None:
        max_iter = 50 * (m + k)

    stalled = 0
    last_obj = T[m, -1]
    for _ in range(max_iter):
        costs = T[m, :k]
        if stalled < 30:
            j = int(np.argmax(costs))
            if costs[j] <= tol:
                break
        else:  # Bland: smallest improving index
            improving = np.nonzero(costs > tol)[0]
            if improving.size == 0:
                break
            j = int(improving[0])

        col = T[:m, j]
        rows = np.nonzero(col > _PIVOT_TOL)[0]
        if rows.size == 0:
            # Unbounded column cannot happen in phase 1; treat as blocked.
            T[m, j] = 0.0
            continue
        ratios = T[rows, -1] / col[rows]
        r = rows[int(np.argmin(ratios))]

        piv = T[r, j]
        T[r] /= piv
        colvals = T[:, j].copy()
        colvals[r] = 0.0
        T -= np.outer(colvals, T[r])
        basis[r] = j
        # Degenerate pivots leave the objective unchanged; a long run of
        # them smells like cycling, so switch to Bland's rule.
        stalled = stalled + 1 if T[m, -1] >= last_obj - 1e-15 else 0
        last_obj = T[m, -1]

    if T[m, -1] > max(tol, 1e-7 * (1.0 + abs(b).sum())):
        return None
    x = np.zeros(k)
    for row, var in enumerate(basis):
        if var < k:
            x[var] = max(T[row, -1], 0.0)
    return x


def solve_feasibility_exact(A, b):
    """Exact-rational phase-1 simplex: x >= 0 with A x = b over Fractions.

    ``A`` and ``b`` may hold ints, Fractions, or floats (floats are
    converted exactly).  Bland's rule throughout, so termination is
    guaranteed.  Returns a list of Fractions or None.
    """
    m = len(A)
    k = len(A[0]) if m else 0
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]

    T = [A[i] + [Fraction(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    cost = [sum(A[i][j] for i in range(m)) for j in range(k)]
    cost += [Fraction(0)] * m + [sum(b)]
    T.append(cost)
    basis = list(range(k, k + m))

    while True:
        j = next((jj for jj in range(k) if T[m][jj] > 0), None)
        if j is None:
            break
        rows = [i for i in range(m) if T[i][j] > 0]
        if not rows:
            T[m][j] = Fraction(0)
            continue
        r = min(rows, key=lambda i: (T[i][-1] / T[i][j], basis[i]))
        piv = T[r][j]
        T[r] = [x / piv for x in T[r]]
        for i in range(m + 1):
            if i != r and T[i][j] != 0:
                f = T[i][j]
                T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        basis[r] = j

    if T[m][-1] != 0:
        return None
    x = [Fraction(0)] * k
    for row, var in enumerate(basis):
        if var < k:
            x[var] = T[row][-1]
    return x

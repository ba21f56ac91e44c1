"""Unbounded-shared-randomness feasibility: hull membership of the winning set.

With unlimited shared randomness the reachable visit matrices are exactly
the convex hull of the deterministic ones.  A deterministic strategy acts
through its composite map c = decode o encode (closed restaurant ->
visited restaurant), which has image size at most 2; matrices with zero
diagonal additionally force c to be fixed-point free, and any hull weight
on a strategy with a fixed point would leak onto the diagonal, so only
fixed-point-free composites need enumerating.

Non-strict games constrain just the diagonal and the row sums, so
composites collapse into (pair {i,j}, count a) classes: a of the n closed
restaurants map to i, the rest to j.  Strict games pin every entry, which
needs the full composite enumeration (2^(n-2) per pair).  Both reduce to
a feasibility LP solved by the in-package simplex; n <= 5 runs on exact
rationals so the witness weights are bit-exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .classical import DeterministicStrategy
from .games import GameSpec
from .simplexlp import solve_feasibility, solve_feasibility_exact

__all__ = ["HullVerdict", "hull_membership_oracle"]

_MAX_N = 12


@dataclass(frozen=True)
class HullVerdict:
    """LP outcome: hull feasibility plus a sparse witness mixture when feasible."""

    feasible_with_unbounded_sr: bool
    weights: tuple[tuple[DeterministicStrategy, float], ...] | None
    exact: bool

    def to_json_obj(self):
        if self.weights is None:
            witness = None
        else:
            witness = [
                {
                    "encode": list(s.encode),
                    "decode": [s.decode[0] + 1, s.decode[1] + 1],
                    "weight": float(w),
                }
                for s, w in self.weights
            ]
        return {
            "feasible_with_unbounded_sr": self.feasible_with_unbounded_sr,
            "exact": self.exact,
            "witness": witness,
        }


def _strategy_for_class(n: int, i: int, j: int, count_i: int) -> DeterministicStrategy:
    """A concrete composite with image {i, j} sending exactly count_i inputs to i.

    Fixed-point freeness forces c(i)=j and c(j)=i; the remaining inputs
    are assigned deterministically (lowest indices first) so witnesses are
    reproducible.
    """
    targets = {i: j, j: i}
    spare = [k for k in range(n) if k not in (i, j)]
    for k in spare[: count_i - 1]:
        targets[k] = i
    for k in spare[count_i - 1 :]:
        targets[k] = j
    encode = tuple(0 if targets[k] == i else 1 for k in range(n))
    return DeterministicStrategy(encode=encode, decode=(i, j))


def _nonstrict_lp(spec: GameSpec, exact: bool):
    n = spec.n
    classes = [
        (i, j, a)
        for i, j in itertools.combinations(range(n), 2)
        for a in range(1, n)
    ]
    if exact:
        A = [[Fraction(0)] * len(classes) for _ in range(n + 1)]
        for col, (i, j, a) in enumerate(classes):
            A[i][col] = Fraction(a, n)
            A[j][col] = Fraction(n - a, n)
            A[n][col] = Fraction(1)
        # Rationalize the targets so they still sum to exactly 1.
        g = [Fraction(x).limit_denominator(10**12) for x in spec.gamma[:-1]]
        g.append(1 - sum(g))
        b = g + [Fraction(1)]
        w = solve_feasibility_exact(A, b)
    else:
        A = np.zeros((n + 1, len(classes)))
        for col, (i, j, a) in enumerate(classes):
            A[i, col] = a / n
            A[j, col] = (n - a) / n
            A[n, col] = 1.0
        b = np.append(spec.gamma_array(), 1.0)
        w = solve_feasibility(A, b)
    if w is None:
        return None
    witness = []
    for col, (i, j, a) in enumerate(classes):
        if w[col] > 0 if exact else w[col] > 1e-12:
            witness.append((_strategy_for_class(n, i, j, a), float(w[col])))
    return tuple(witness)


def _strict_composites(n: int):
    """All fixed-point-free composites with image of size at most 2.

    Yields (i, j, targets) with targets[k] in {i, j} for every k; c(i)=j
    and c(j)=i are forced, the other n-2 inputs are free.
    """
    for i, j in itertools.combinations(range(n), 2):
        spare = [k for k in range(n) if k not in (i, j)]
        for mask in range(1 << (n - 2)):
            targets = {i: j, j: i}
            for pos, k in enumerate(spare):
                targets[k] = i if mask >> pos & 1 else j
            yield i, j, targets


def _strict_lp(spec: GameSpec, exact: bool):
    n = spec.n
    composites = list(_strict_composites(n))
    ncols = len(composites)
    rows = n * n + 1

    if exact:
        A = [[Fraction(0)] * ncols for _ in range(rows)]
        for col, (_, _, targets) in enumerate(composites):
            for k in range(n):
                A[targets[k] * n + k][col] = Fraction(1)
            A[n * n][col] = Fraction(1)
        target = Fraction(1, n - 1)
        b = [
            Fraction(0) if m == k else target
            for m in range(n)
            for k in range(n)
        ] + [Fraction(1)]
        w = solve_feasibility_exact(A, b)
        keep = lambda x: x > 0
    else:
        A = np.zeros((rows, ncols))
        for col, (_, _, targets) in enumerate(composites):
            for k in range(n):
                A[targets[k] * n + k, col] = 1.0
            A[n * n, col] = 1.0
        b = ((1.0 - np.eye(n)) / (n - 1)).reshape(-1)
        b = np.append(b, 1.0)
        w = solve_feasibility(A, b)
        keep = lambda x: x > 1e-12

    if w is None:
        return None
    witness = []
    for col, (i, j, targets) in enumerate(composites):
        if keep(w[col]):
            encode = tuple(0 if targets[k] == i else 1 for k in range(n))
            witness.append(
                (DeterministicStrategy(encode=encode, decode=(i, j)), float(w[col]))
            )
    return tuple(witness)


def hull_membership_oracle(spec: GameSpec, exact: bool | None = None) -> HullVerdict:
    """Decide whether any winning visit matrix is a mixture of deterministic ones.

    For non-strict games the winning set is an affine slice (zero diagonal
    plus marginals), so the LP runs over (pair, count) classes; strict
    games need the full fixed-point-free composite enumeration.  Returns a
    witness distribution over deterministic strategies when feasible.

    Parameters
    ----------
    spec : GameSpec
        Game with n <= 12 (enumeration bound).
    exact : bool, optional
        Force the exact-rational backend; defaults to n <= 5.
    """
    n = spec.n
    if n > _MAX_N:
        raise ValueError(f"hull oracle enumerates composites only up to n={_MAX_N}")
    if exact is None:
        exact = n <= 5
    witness = _strict_lp(spec, exact) if spec.strict else _nonstrict_lp(spec, exact)
    if witness is None:
        return HullVerdict(feasible_with_unbounded_sr=False, weights=None, exact=exact)
    return HullVerdict(feasible_with_unbounded_sr=True, weights=witness, exact=exact)

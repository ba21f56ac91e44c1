"""Worst-case guessing game: the receiver must name the sender's input.

Three inputs, one bit of communication; the figure of merit is the
smallest diagonal entry of the guess matrix P(guess | input), i.e. the
success probability against an adversarial input.  One classical bit
caps this at 1/2, shared randomness lifts it to 2/3, and a qubit reaches
2/3 with no shared randomness at all.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import (
    CorrelatedStrategy,
    MixedStrategy,
    visit_matrix_correlated,
    visit_matrix_mixed,
)
from .optimize import compass_descent
from .quantum import Povm, QubitEffect, QubitStrategy, visit_matrix_qubit

__all__ = [
    "worst_case_success",
    "WorstCaseBound",
    "classical_worstcase_bound",
    "classical_worstcase_strategy",
    "sr_worstcase_strategy",
    "quantum_worstcase_strategy",
]


def worst_case_success(strategy) -> float:
    """Smallest diagonal of the guess matrix, over any supported strategy type."""
    if isinstance(strategy, MixedStrategy):
        p = visit_matrix_mixed(strategy).p
    elif isinstance(strategy, CorrelatedStrategy):
        p = visit_matrix_correlated(strategy).p
    elif isinstance(strategy, QubitStrategy):
        p = visit_matrix_qubit(strategy).p
    else:
        raise TypeError(f"unsupported strategy type {type(strategy).__name__}")
    return float(np.diag(p).min())


def classical_worstcase_strategy() -> MixedStrategy:
    """A mixed strategy attaining the classical optimum 1/2 exactly."""
    return MixedStrategy(alpha=(1.0, 0.0, 0.0), r=(1.0, 0.0, 0.0), q=(0.0, 0.5, 0.5))


def sr_worstcase_strategy() -> CorrelatedStrategy:
    """Three shared-randomness branches reaching worst-case success 2/3.

    Branch c sends 1 exactly on input c; the coins then pin the guess to c
    or spread it uniformly over the other two inputs.
    """
    branches = []
    for c in range(3):
        alpha = tuple(1.0 if x == c else 0.0 for x in range(3))
        r = tuple(1.0 if x == c else 0.0 for x in range(3))
        q = tuple(0.0 if x == c else 0.5 for x in range(3))
        branches.append((1.0 / 3.0, MixedStrategy(alpha=alpha, r=r, q=q)))
    return CorrelatedStrategy(branches=tuple(branches))


def quantum_worstcase_strategy() -> QubitStrategy:
    """Ring states with aligned effects: every diagonal equals 2/3.

    Unlike the game strategies (which avoid the closed restaurant), the
    effects here point along the matching state, rewarding the guess.
    """
    ang = 2.0 * np.pi * np.arange(3) / 3.0
    states = np.stack([np.sin(ang), np.zeros(3), np.cos(ang)], axis=1)
    effects = tuple(
        QubitEffect(t=1.0 / 3.0, v=states[x] / 3.0) for x in range(3)
    )
    return QubitStrategy(encodings=states, decoding=Povm(effects=effects))


@dataclass(frozen=True)
class WorstCaseBound:
    """Classical ceiling with the numeric evidence that it is tight."""

    bound: float
    numeric_max: float
    starts: int
    seed: int


def _min_diag_batch(alpha, r, q) -> np.ndarray:
    return (alpha * r + (1.0 - alpha) * q).min(axis=1)


def classical_worstcase_bound(starts: int = 20_000, seed: int = 5) -> WorstCaseBound:
    """Classical worst-case ceiling 1/2, with a seeded numeric maximization.

    The ceiling is forced by counting: the two coins r and q can each give
    more than half of the guess weight to at most one input, so some third
    input is guessed with probability at most 1/2 whatever the biases do.
    The numeric side maximizes the smallest diagonal over mixed strategies
    from `starts` samples plus coordinate ascent and must stay at or below
    the ceiling (within refinement tolerance).
    """
    rng = np.random.default_rng(seed)
    x = rng.random((starts, 7))
    r = np.stack([x[:, 3], (1 - x[:, 3]) * x[:, 4], (1 - x[:, 3]) * (1 - x[:, 4])], axis=1)
    q = np.stack([x[:, 5], (1 - x[:, 5]) * x[:, 6], (1 - x[:, 5]) * (1 - x[:, 6])], axis=1)
    vals = _min_diag_batch(x[:, :3], r, q)
    order = np.argsort(vals)[-50:]

    def negated(xv):
        alpha = np.clip(xv[:3], 0.0, 1.0)
        u1, v1 = min(max(xv[3], 0.0), 1.0), min(max(xv[4], 0.0), 1.0)
        u2, v2 = min(max(xv[5], 0.0), 1.0), min(max(xv[6], 0.0), 1.0)
        rr = np.array([u1, (1 - u1) * v1, (1 - u1) * (1 - v1)])
        qq = np.array([u2, (1 - u2) * v2, (1 - u2) * (1 - v2)])
        return -float(_min_diag_batch(alpha[None], rr[None], qq[None])[0])

    best = float(vals[order[-1]])
    for idx in order:
        _, val = compass_descent(negated, x[idx], 0.0, 1.0, step0=0.1, min_step=1e-7)
        best = max(best, -val)
    return WorstCaseBound(bound=0.5, numeric_max=best, starts=starts, seed=seed)

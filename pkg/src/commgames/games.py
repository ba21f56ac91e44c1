"""Core game definitions, visit matrices, and winning-condition verdicts.

A single-shot communication game over n restaurants: a referee closes one
restaurant uniformly at random, the sender learns which one, and the
receiver must pick a restaurant to visit.  Whatever resource connects the
two parties, the observable behaviour is a column-stochastic visit matrix
``p[visited, closed]``.  A game ``GameSpec(gamma)`` is won when the closed
restaurant is never visited and restaurant i is visited with overall
probability gamma[i]; the strict variant pins every conditional entry to
``(1 - delta_ij)/(n - 1)`` instead of just the averages.

In-memory matrices are visited-major (``p[i, j] = p(visit i | closed j)``,
columns sum to 1) because every construction consumes columns.  The JSON
interchange format is closed-major (row j lists the distribution given
closed restaurant j); the (de)serialization helpers transpose at the
boundary and carry an explicit ``"orientation"`` tag.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GameSpec",
    "VisitMatrix",
    "Verdict",
    "check_game",
    "convex_mix",
    "game_space_extreme_points",
    "uniform_game",
    "strict_game",
    "as_distribution",
    "shannon_bits",
    "DEFAULT_TOL",
]

#: Default winning tolerance.  Analytic constructions land around 1e-14;
#: 1e-9 absorbs the floating error accumulated by composed ones.
DEFAULT_TOL = 1e-9

_PROB_ATOL = 1e-12


def as_distribution(values, name: str = "distribution") -> np.ndarray:
    """Validate and return ``values`` as a probability vector (float array).

    Entries must lie in [0, 1] and sum to 1 within 1e-12.
    """
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{name} must be a nonempty 1-d sequence")
    if np.any(arr < -_PROB_ATOL) or np.any(arr > 1 + _PROB_ATOL):
        raise ValueError(f"{name} has entries outside [0, 1]: {arr}")
    total = float(arr.sum())
    if abs(total - 1.0) > max(_PROB_ATOL, 1e-12 * arr.size):
        raise ValueError(f"{name} sums to {total}, expected 1")
    return np.clip(arr, 0.0, 1.0)


def shannon_bits(weights) -> float:
    """Shannon entropy of a weight vector in bits; zero weights contribute 0."""
    w = np.asarray(weights, dtype=float)
    w = w[w > 0]
    return float(-(w * np.log2(w)).sum()) + 0.0


@dataclass(frozen=True)
class GameSpec:
    """A game: target visiting probabilities plus the strict/non-strict flag.

    Parameters
    ----------
    gamma : sequence of float
        Target marginal visiting probabilities, one per restaurant.  Must
        be a probability vector with every entry at most ``1 - 1/n`` (a
        larger target cannot be met when the restaurant itself is closed
        a 1/n fraction of the time).
    strict : bool
        When true the game demands ``p(i|j) = (1 - delta_ij)/(n - 1)``
        entrywise, which forces ``gamma`` to be uniform; construction
        rejects anything else.
    """

    gamma: tuple[float, ...]
    strict: bool = False

    def __post_init__(self):
        g = as_distribution(self.gamma, "gamma")
        n = g.size
        if n < 2:
            raise ValueError("a game needs at least 2 restaurants")
        cap = 1.0 - 1.0 / n
        if np.any(g > cap + 1e-9):
            raise ValueError(
                f"gamma {tuple(float(x) for x in g)} violates the physicality "
                f"bound max entry <= 1 - 1/n = {cap}"
            )
        if self.strict and np.any(np.abs(g - 1.0 / n) > 1e-9):
            raise ValueError("strict games require uniform gamma = 1/n")
        object.__setattr__(self, "gamma", tuple(float(x) for x in g))

    @property
    def n(self) -> int:
        return len(self.gamma)

    def gamma_array(self) -> np.ndarray:
        return np.asarray(self.gamma, dtype=float)

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "gamma": list(self.gamma), "strict": self.strict},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "GameSpec":
        d = json.loads(text)
        spec = cls(gamma=tuple(d["gamma"]), strict=bool(d.get("strict", False)))
        if "n" in d and int(d["n"]) != spec.n:
            raise ValueError(f"declared n={d['n']} but gamma has length {spec.n}")
        return spec


def uniform_game(n: int, strict: bool = False) -> GameSpec:
    """The n-restaurant game with uniform targets gamma = 1/n."""
    return GameSpec(gamma=(1.0 / n,) * n, strict=strict)


def strict_game(n: int) -> GameSpec:
    """The strict n-restaurant game: every off-diagonal entry 1/(n-1)."""
    return uniform_game(n, strict=True)


@dataclass(frozen=True)
class VisitMatrix:
    """Column-stochastic conditional visit distribution ``p[visited, closed]``.

    ``p[i, j]`` is the probability the receiver visits restaurant i given
    restaurant j is closed.  Each column is a probability vector.
    """

    p: np.ndarray

    def __post_init__(self):
        arr = np.array(self.p, dtype=float, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"visit matrix must be square, got shape {arr.shape}")
        if np.any(arr < -_PROB_ATOL) or np.any(arr > 1 + _PROB_ATOL):
            raise ValueError("visit matrix entries must lie in [0, 1]")
        colsums = arr.sum(axis=0)
        if np.any(np.abs(colsums - 1.0) > 1e-9):
            raise ValueError(f"visit matrix columns must sum to 1, got {colsums}")
        arr.flags.writeable = False
        object.__setattr__(self, "p", arr)

    @property
    def n(self) -> int:
        return self.p.shape[0]

    def marginals(self) -> np.ndarray:
        """Overall visiting probabilities under the uniform closing prior."""
        return self.p.mean(axis=1)

    def diagonal(self) -> np.ndarray:
        return np.diagonal(self.p).copy()

    def to_closed_major(self) -> np.ndarray:
        """Rows indexed by the closed restaurant (transpose of memory layout)."""
        return self.p.T.copy()

    @classmethod
    def from_closed_major(cls, rows) -> "VisitMatrix":
        """Build from a closed-major array (row j = distribution given closed j)."""
        return cls(p=np.asarray(rows, dtype=float).T)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "orientation": "closed-major",
                "p": self.to_closed_major().tolist(),
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "VisitMatrix":
        d = json.loads(text)
        orientation = d.get("orientation", "closed-major")
        if orientation != "closed-major":
            raise ValueError(f"unknown visit-matrix orientation {orientation!r}")
        vm = cls.from_closed_major(d["p"])
        if "n" in d and int(d["n"]) != vm.n:
            raise ValueError(f"declared n={d['n']} but matrix is {vm.n}x{vm.n}")
        return vm


@dataclass(frozen=True)
class Verdict:
    """Outcome of a winning-condition check.

    ``max_violation`` is the sup-norm residual over all winning conditions;
    ``witness`` names the worst violated condition when ``wins`` is false.
    """

    wins: bool
    max_violation: float
    witness: str | None = None


def check_game(spec: GameSpec, vm: VisitMatrix, tol: float = DEFAULT_TOL) -> Verdict:
    """Check whether a visit matrix wins a game.

    Non-strict: requires ``p(i|i) = 0`` for every i and marginal
    ``(1/n) sum_j p(i|j) = gamma[i]``.  Strict: requires
    ``p(i|j) = (1 - delta_ij)/(n - 1)`` entrywise.  The verdict's
    ``max_violation`` is the largest absolute deviation from any condition.

    Parameters
    ----------
    spec : GameSpec
    vm : VisitMatrix
    tol : float
        Winning tolerance; ``wins`` is true iff ``max_violation <= tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = spec.n
    if vm.n != n:
        raise ValueError(f"dimension mismatch: game has n={n}, matrix has n={vm.n}")

    violations: list[tuple[float, str]] = []
    if spec.strict:
        target = (1.0 - np.eye(n)) / (n - 1)
        dev = np.abs(vm.p - target)
        i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
        violations.append(
            (
                float(dev[i, j]),
                f"p({i + 1}|{j + 1})={vm.p[i, j]:.6g}"
                f"≠{target[i, j]:.6g}",
            )
        )
    else:
        diag = vm.diagonal()
        i = int(np.argmax(diag))
        violations.append((float(diag[i]), f"p({i + 1}|{i + 1})={diag[i]:.6g}≠0"))
        dev = np.abs(vm.marginals() - spec.gamma_array())
        i = int(np.argmax(dev))
        violations.append(
            (
                float(dev[i]),
                f"marginal({i + 1})={vm.marginals()[i]:.6g}"
                f"≠{spec.gamma[i]:.6g}",
            )
        )

    worst, witness = max(violations, key=lambda t: t[0])
    wins = worst <= tol
    return Verdict(wins=wins, max_violation=worst, witness=None if wins else witness)


def game_space_extreme_points(n: int) -> list[GameSpec]:
    """Extreme points of the physical game polytope for n restaurants.

    These are the n(n-1) arrangements placing ``(n-1)/n`` at one restaurant
    and ``1/n`` at another.  Ordered by ``itertools.permutations(range(n), 2)``,
    i.e. the game with gamma[i] = (n-1)/n and gamma[j] = 1/n appears at the
    position of the ordered pair (i, j); no deduplication (for n=2 the
    symmetric vector (1/2, 1/2) is listed twice).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    games = []
    for i, j in itertools.permutations(range(n), 2):
        g = [0.0] * n
        g[i] = (n - 1) / n
        g[j] = 1.0 / n
        games.append(GameSpec(gamma=tuple(g)))
    return games


def convex_mix(matrices: list[VisitMatrix], weights) -> VisitMatrix:
    """Entrywise convex combination of visit matrices.

    Both winning conditions are linear in the matrix, so a mixture of
    winners wins the same game.
    """
    if not matrices:
        raise ValueError("convex_mix needs at least one matrix")
    w = as_distribution(weights, "weights")
    if w.size != len(matrices):
        raise ValueError(f"{len(matrices)} matrices but {w.size} weights")
    n = matrices[0].n
    for m in matrices:
        if m.n != n:
            raise ValueError(f"dimension mismatch: {m.n} vs {n}")
    mix = sum(wk * m.p for wk, m in zip(w, matrices))
    return VisitMatrix(p=mix)

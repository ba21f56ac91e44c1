"""Regular-polygon state spaces as a family of alternative theories.

States live in the plane-embedded cone over a regular polygon with
circumradius r = sqrt(sec(pi/n)); normalized states are (x, y, 1) with
(x, y) inside the polygon.  Effects are 3-vectors acting by the dot
product; the valid ones send every polygon vertex into [0, 1], and the
extremal nonzero ones are the ray effects e_i (odd n: aligned with the
vertices; even n: aligned with the edge midpoints) together with their
complements u - e_i, the unit u = (0, 0, 1), and zero.

Indexing: arrays are 0-based; position k holds the object a 1-based
vertex count would call i = k + 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares, minimize

from .games import GameSpec, VisitMatrix

__all__ = [
    "PolygonTheory",
    "PolygonStrategy",
    "visit_matrix_polygon",
    "synth_even_gon",
    "synth_square_h3",
    "PolygonSearchResult",
    "strict_polygon_search",
    "PolygonInfeasibilityResult",
    "strict_polygon_infeasibility",
]

_ATOL = 1e-9


class PolygonTheory:
    """The n-sided polygon theory: vertex states, ray effects, complements."""

    def __init__(self, n: int):
        if n < 3:
            raise ValueError(f"polygon needs at least 3 vertices, got {n}")
        self.n = int(n)
        self.r = float(np.sqrt(1.0 / np.cos(np.pi / n)))
        idx = np.arange(1, n + 1, dtype=float)
        ang = 2.0 * np.pi * idx / n
        self.omegas = np.stack(
            [self.r * np.cos(ang), self.r * np.sin(ang), np.ones(n)], axis=1
        )
        self.unit = np.array([0.0, 0.0, 1.0])
        self.zero = np.zeros(3)
        if n % 2 == 1:
            scale = 1.0 / (1.0 + self.r**2)
            self.effects = scale * np.stack(
                [self.r * np.cos(ang), self.r * np.sin(ang), np.ones(n)], axis=1
            )
        else:
            eang = (2.0 * idx - 1.0) * np.pi / n
            self.effects = 0.5 * np.stack(
                [self.r * np.cos(eang), self.r * np.sin(eang), np.ones(n)], axis=1
            )
        self.co_effects = self.unit[None, :] - self.effects
        for arr in (self.omegas, self.effects, self.co_effects, self.unit, self.zero):
            arr.flags.writeable = False

    def extremal_effects(self) -> np.ndarray:
        """All extreme points of the effect polytope: zero, unit, rays, complements."""
        return np.concatenate(
            [[self.zero], [self.unit], self.effects, self.co_effects]
        )

    def pure_effect_table(self) -> np.ndarray:
        """Probabilities of each ray effect on each vertex state."""
        return self.effects @ self.omegas.T

    def effect_valid(self, f, atol: float = _ATOL) -> bool:
        """Is f a valid effect, i.e. does it map every state into [0, 1]?"""
        vals = self.omegas @ np.asarray(f, dtype=float)
        return bool(vals.min() >= -atol and vals.max() <= 1.0 + atol)

    def state_valid(self, s, atol: float = _ATOL) -> bool:
        """Is s a normalized state: unit component 1, (x, y) inside the polygon?"""
        s = np.asarray(s, dtype=float)
        if abs(s[2] - 1.0) > atol:
            return False
        p = self.omegas[:, :2]
        q = np.roll(p, -1, axis=0)
        cross = (q[:, 0] - p[:, 0]) * (s[1] - p[:, 1]) - (q[:, 1] - p[:, 1]) * (
            s[0] - p[:, 0]
        )
        return bool(cross.min() >= -atol * self.r)


@dataclass(frozen=True, eq=False)
class PolygonStrategy:
    """Polygon-theory strategy: one state per closed restaurant, a measurement,
    and a row-stochastic postprocessing from outcomes to restaurants."""

    theory: PolygonTheory
    states: np.ndarray
    effects: np.ndarray
    postprocess: np.ndarray | None = None

    def __post_init__(self):
        states = np.array(self.states, dtype=float)
        effects = np.array(self.effects, dtype=float)
        if states.ndim != 2 or states.shape[1] != 3:
            raise ValueError("states must have shape (n, 3)")
        if effects.ndim != 2 or effects.shape[1] != 3:
            raise ValueError("effects must have shape (n_out, 3)")
        for s in states:
            if not self.theory.state_valid(s):
                raise ValueError(f"invalid polygon state {s}")
        for f in effects:
            if not self.theory.effect_valid(f):
                raise ValueError(f"invalid polygon effect {f}")
        total = effects.sum(axis=0)
        if np.abs(total - self.theory.unit).max() > _ATOL:
            raise ValueError(f"effects do not sum to the unit: {total}")
        if self.postprocess is None:
            if effects.shape[0] != states.shape[0]:
                raise ValueError("square strategy needs one effect per restaurant")
            post = np.eye(states.shape[0])
        else:
            post = np.array(self.postprocess, dtype=float)
            if post.shape != (effects.shape[0], states.shape[0]):
                raise ValueError("postprocess must have shape (n_out, n)")
            if post.min() < -1e-12 or np.abs(post.sum(axis=1) - 1.0).max() > 1e-9:
                raise ValueError("postprocess rows must be distributions")
        for arr in (states, effects, post):
            arr.flags.writeable = False
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "effects", effects)
        object.__setattr__(self, "postprocess", post)

    @property
    def n(self) -> int:
        return self.states.shape[0]

    def to_json(self) -> str:
        return json.dumps(
            {
                "effects": [[float(x) for x in f] for f in self.effects],
                "polygon_n": self.theory.n,
                "postprocess": [[float(x) for x in row] for row in self.postprocess],
                "states": [[float(x) for x in s] for s in self.states],
            },
            sort_keys=True,
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "PolygonStrategy":
        obj = json.loads(text)
        return cls(
            theory=PolygonTheory(int(obj["polygon_n"])),
            states=obj["states"],
            effects=obj["effects"],
            postprocess=obj.get("postprocess"),
        )


def visit_matrix_polygon(strategy: PolygonStrategy) -> VisitMatrix:
    """Visit matrix p[visited, closed] of a polygon strategy."""
    born = strategy.effects @ strategy.states.T
    return VisitMatrix(p=strategy.postprocess.T @ born)


def synth_even_gon(n: int) -> PolygonStrategy:
    """Edge-midpoint strategy in the 2n-gon winning the uniform n-game exactly.

    Encoding k is the midpoint of vertices 2k and 2k+1 of the 2n-gon;
    outcome k carries (2/n) times the complement of the ray effect that
    saturates on exactly those two vertices, so the closed restaurant is
    never visited and every marginal is 1/n.
    """
    if n < 3:
        raise ValueError(f"need at least 3 restaurants, got {n}")
    theory = PolygonTheory(2 * n)
    pair = np.arange(n) * 2
    states = 0.5 * (theory.omegas[pair] + theory.omegas[pair + 1])
    effects = (2.0 / n) * theory.co_effects[pair + 1]
    return PolygonStrategy(theory=theory, states=states, effects=effects)


def synth_square_h3(spec: GameSpec) -> PolygonStrategy:
    """Square-theory strategy winning a 3-game exactly.

    One restaurant (the pivot) encodes into a mixture along the edge
    between vertices 2 and 3; the other two take the opposite corners 1
    and 4.  The measurement mixes the four ray effects pairwise with
    weight p = 3*gamma_pivot/2, and outcome 3 is split probabilistically
    between the two corner restaurants.  Each pivot choice covers part of
    the physical marginal polytope; their union covers all of it, so the
    three choices are tried in turn.
    """
    if spec.n != 3 or spec.strict:
        raise ValueError("the square construction targets non-strict 3-games")
    gamma = spec.gamma_array()
    last = None
    for c in range(3):
        a, b = (i for i in range(3) if i != c)
        p = 1.5 * gamma[c]
        if 3.0 * gamma[a] < 1.0 - p - 1e-12 or 3.0 * gamma[b] < 1.0 - p - 1e-12:
            last = f"pivot {c}: corner marginals too small"
            continue
        s_a = min(max(3.0 * gamma[a] - (1.0 - p), 0.0), 1.0)
        pr = min(p, s_a)
        rem = s_a - pr
        if p < 1.0 - 1e-15:
            q = 1.0 - min(rem / (1.0 - p), 1.0)
            r_mix = pr / p if p > 1e-15 else 0.0
        else:
            q = 0.5
            r_mix = min(s_a / p, 1.0)
        theory = PolygonTheory(4)
        states = np.zeros((3, 3))
        states[a] = theory.omegas[0]
        states[b] = theory.omegas[3]
        states[c] = q * theory.omegas[1] + (1.0 - q) * theory.omegas[2]
        e = theory.effects
        effects = np.stack([p * e[0], (1.0 - p) * e[1], p * e[2], (1.0 - p) * e[3]])
        post = np.zeros((4, 3))
        post[0, c] = 1.0
        post[1, b] = 1.0
        post[2, a] = r_mix
        post[2, b] = 1.0 - r_mix
        post[3, a] = 1.0
        return PolygonStrategy(
            theory=theory, states=states, effects=effects, postprocess=post
        )
    raise ValueError(f"no square-theory construction found for {spec.gamma}: {last}")


def _boundary_state(theory: PolygonTheory, b: float) -> np.ndarray:
    """Point on the polygon boundary at arc parameter b (edge index + fraction)."""
    b = float(b) % theory.n
    e = int(b)
    t = b - e
    return (1.0 - t) * theory.omegas[e] + t * theory.omegas[(e + 1) % theory.n]


@dataclass(frozen=True)
class PolygonSearchResult:
    """Best residual found when chasing a strict target inside a polygon theory."""

    polygon_n: int
    game_n: int
    min_residual: float
    matrix_residual: float
    validity_violation: float
    starts: int
    seed: int
    best_params: tuple[float, ...]


def strict_polygon_search(
    polygon_n: int,
    game_n: int = 4,
    starts: int = 60,
    seed: int = 7,
    maxiter: int = 500,
) -> PolygonSearchResult:
    """Multistart search for polygon states/effects hitting the strict target.

    States are parametrized on the polygon boundary (optimal encodings are
    extremal); all but the last effect are free 3-vectors, the last being
    fixed by completeness, with validity enforced through hinge penalties.
    The reported residual is the worse of the matrix sup-distance and the
    validity violation, so a small value genuinely certifies a strategy.
    """
    theory = PolygonTheory(polygon_n)
    target = (1.0 - np.eye(game_n)) / (game_n - 1)
    omegas = theory.omegas
    unit = theory.unit
    k_free = game_n - 1

    def unpack(x):
        s = np.stack([_boundary_state(theory, b) for b in x[:game_n]])
        f = x[game_n:].reshape(k_free, 3)
        f = np.vstack([f, unit - f.sum(axis=0)])
        return s, f

    def residual_parts(x):
        s, f = unpack(x)
        vals = f @ omegas.T
        violation = max(0.0, float(-vals.min()), float(vals.max() - 1.0))
        mat = float(np.abs(f @ s.T - target).max())
        return mat, violation

    def residual_vector(x):
        s, f = unpack(x)
        vals = f @ omegas.T
        hinges = np.concatenate(
            [np.clip(-vals, 0.0, None).ravel(), np.clip(vals - 1.0, 0.0, None).ravel()]
        )
        return np.concatenate([(f @ s.T - target).ravel(), 5.0 * hinges])

    def scalar_objective(x):
        r = residual_vector(x)
        return float(r @ r)

    rng = np.random.default_rng(seed)
    candidates = []
    for _ in range(starts):
        x0 = np.concatenate(
            [
                rng.uniform(0.0, polygon_n, size=game_n),
                rng.uniform(-0.6, 0.9, size=3 * k_free),
            ]
        )
        out = minimize(
            scalar_objective,
            x0,
            method="Nelder-Mead",
            options={"maxiter": maxiter, "xatol": 1e-10, "fatol": 1e-18},
        )
        candidates.append(out.x)

    candidates.sort(key=scalar_objective)
    best = None
    for x in candidates[:8]:
        polished = least_squares(residual_vector, x, max_nfev=3000).x
        mat, violation = residual_parts(polished)
        score = max(mat, violation)
        if best is None or score < best[0]:
            best = (score, mat, violation, polished)
    score, mat, violation, x = best
    return PolygonSearchResult(
        polygon_n=polygon_n,
        game_n=game_n,
        min_residual=score,
        matrix_residual=mat,
        validity_violation=violation,
        starts=starts,
        seed=seed,
        best_params=tuple(float(v) for v in x),
    )


@dataclass(frozen=True)
class PolygonInfeasibilityResult:
    """Evidence verdict: no polygon strategy found for the strict 4-game."""

    polygon_n: int
    infeasible: bool
    min_residual: float
    threshold: float
    starts: int
    seed: int


def strict_polygon_infeasibility(
    polygon_n: int, starts: int = 60, seed: int = 7, threshold: float = 1e-3
) -> PolygonInfeasibilityResult:
    """Search-based no-go check for the strict 4-game in one polygon theory.

    Evidence, not proof: infeasible means the best of `starts` polished
    multistarts stays above threshold.  The same machinery run on the
    hexagon against the strict 3-game does reach residual ~1e-12, which
    keeps the search honest.
    """
    res = strict_polygon_search(polygon_n, game_n=4, starts=starts, seed=seed)
    return PolygonInfeasibilityResult(
        polygon_n=polygon_n,
        infeasible=res.min_residual > threshold,
        min_residual=res.min_residual,
        threshold=threshold,
        starts=starts,
        seed=seed,
    )

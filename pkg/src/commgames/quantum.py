"""Qubit strategies for restaurant games, in Bloch parametrization.

The sender encodes the closed restaurant into a qubit state, the receiver
measures a POVM whose outcome is the restaurant to visit.  States are
Bloch vectors (3-vectors of length at most 1) and effects are pairs
(t, v) acting on a state s by the affine rule  probability = t + v . s,
so no complex 2x2 matrices appear anywhere.  An effect is valid iff
0 <= t - |v| and t + |v| <= 1; a POVM is complete iff its t's sum to 1
and its v's sum to the zero vector.

Synthesized strategies store the effect weight t as the exact float
negative of the diagonal Born term, so the "never visit the closed
restaurant" probability evaluates to exactly 0.0 rather than to rounding
noise; this moves the (sub-1e-15) float slack into t, where the validity
checks tolerate it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize

from .classical import MixedStrategy
from .games import GameSpec, VisitMatrix
from .optimize import compass_descent

__all__ = [
    "QubitEffect",
    "Povm",
    "QubitStrategy",
    "born_probability",
    "visit_matrix_qubit",
    "apply_noise",
    "synth_uniform_odd",
    "synth_h3_general",
    "synth_h4_symmetric",
    "synth_sic_strict",
    "h3_gamma_from_angles",
    "h3_angles_for_game",
    "h3_locus_points",
    "simulate_orthogonal_encoding",
    "simulate_projective_decoding",
    "induced_decoding",
    "noise_boundary",
    "noise_advantage_region",
    "ErrorReport",
    "error_functional",
    "FloorResult",
    "montecarlo_classical_floor",
]

_ATOL = 1e-12


def _bloch(v, name: str) -> np.ndarray:
    arr = np.array(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class QubitEffect:
    """POVM element (t, v): acts on a Bloch vector s as t + v . s."""

    t: float
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "v", _bloch(self.v, "effect vector"))
        norm = float(np.linalg.norm(self.v))
        if self.t - norm < -_ATOL or self.t + norm > 1.0 + _ATOL:
            raise ValueError(
                f"invalid effect: t={self.t}, |v|={norm} violates 0<=t-|v|, t+|v|<=1"
            )

    def born(self, state) -> float:
        return float(self.t + self.v @ np.asarray(state, dtype=float))

    def to_json_obj(self) -> dict:
        return {"t": float(self.t), "v": [float(x) for x in self.v]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "QubitEffect":
        return cls(t=float(obj["t"]), v=obj["v"])


def born_probability(state, effect: QubitEffect) -> float:
    """Outcome probability of one effect on one Bloch state."""
    return effect.born(state)


@dataclass(frozen=True, eq=False)
class Povm:
    """A complete measurement: effects whose t's sum to 1 and v's cancel."""

    effects: tuple[QubitEffect, ...]

    def __post_init__(self):
        effects = tuple(self.effects)
        object.__setattr__(self, "effects", effects)
        if len(effects) < 2:
            raise ValueError("a POVM needs at least two effects")
        tsum = sum(e.t for e in effects)
        vsum = np.sum([e.v for e in effects], axis=0)
        if abs(tsum - 1.0) > _ATOL or np.abs(vsum).max() > _ATOL:
            raise ValueError(
                f"incomplete POVM: sum t = {tsum}, |sum v| = {np.abs(vsum).max()}"
            )

    def __len__(self) -> int:
        return len(self.effects)

    def weights(self) -> np.ndarray:
        return np.array([e.t for e in self.effects])

    def vectors(self) -> np.ndarray:
        return np.stack([e.v for e in self.effects])


@dataclass(frozen=True, eq=False)
class QubitStrategy:
    """One Bloch state per closed restaurant plus a POVM guessing the visit.

    noise, when set, is a pair (eps_e, eps_d) of depolarizing rates applied
    on the fly by visit_matrix_qubit: states shrink by (1 - eps_e),
    effect vectors by (1 - eps_d).
    """

    encodings: np.ndarray
    decoding: Povm
    noise: tuple[float, float] | None = None

    def __post_init__(self):
        enc = np.array(self.encodings, dtype=float)
        if enc.ndim != 2 or enc.shape[1] != 3:
            raise ValueError("encodings must have shape (n, 3)")
        norms = np.linalg.norm(enc, axis=1)
        if np.any(norms > 1.0 + _ATOL):
            raise ValueError(f"encoding outside the Bloch ball: |s| = {norms.max()}")
        if len(self.decoding) != enc.shape[0]:
            raise ValueError("need exactly one decoding effect per restaurant")
        enc.flags.writeable = False
        object.__setattr__(self, "encodings", enc)
        if self.noise is not None:
            e, d = self.noise
            if not (0.0 <= e <= 1.0 and 0.0 <= d <= 1.0):
                raise ValueError(f"noise rates must lie in [0, 1], got {self.noise}")
            object.__setattr__(self, "noise", (float(e), float(d)))

    @property
    def n(self) -> int:
        return self.encodings.shape[0]

    def to_json(self) -> str:
        obj = {
            "encodings": [[float(x) for x in row] for row in self.encodings],
            "effects": [e.to_json_obj() for e in self.decoding.effects],
        }
        if self.noise is not None:
            obj["noise"] = {"eps_e": self.noise[0], "eps_d": self.noise[1]}
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "QubitStrategy":
        obj = json.loads(text)
        noise = None
        if "noise" in obj:
            noise = (float(obj["noise"]["eps_e"]), float(obj["noise"]["eps_d"]))
        return cls(
            encodings=obj["encodings"],
            decoding=Povm(
                effects=tuple(QubitEffect.from_json_obj(e) for e in obj["effects"])
            ),
            noise=noise,
        )


def visit_matrix_qubit(strategy: QubitStrategy) -> VisitMatrix:
    """Born-rule visit matrix p[visited, closed], applying stored noise."""
    states = strategy.encodings
    vecs = strategy.decoding.vectors()
    t = strategy.decoding.weights()
    if strategy.noise is not None:
        eps_e, eps_d = strategy.noise
        states = (1.0 - eps_e) * states
        vecs = (1.0 - eps_d) * vecs
    p = t[:, None] + np.einsum("mi,ki->mk", vecs, states)
    return VisitMatrix(p=p)


def apply_noise(strategy: QubitStrategy, eps_e: float, eps_d: float) -> QubitStrategy:
    """Bake depolarizing noise into the states and effects; clears the noise field."""
    if not (0.0 <= eps_e <= 1.0 and 0.0 <= eps_d <= 1.0):
        raise ValueError("noise rates must lie in [0, 1]")
    effects = tuple(
        QubitEffect(t=e.t, v=(1.0 - eps_d) * e.v) for e in strategy.decoding.effects
    )
    return QubitStrategy(
        encodings=(1.0 - eps_e) * strategy.encodings,
        decoding=Povm(effects=effects),
        noise=None,
    )


def _strategy_from_axes(states: np.ndarray, scaled_vecs: np.ndarray) -> QubitStrategy:
    """Assemble a strategy whose diagonal Born terms cancel exactly in floats.

    scaled_vecs holds the effect vectors; each t is set to the negative of
    the matching diagonal entry of the same einsum used at evaluation time.
    """
    gram = np.einsum("mi,ki->mk", scaled_vecs, states)
    t = -np.diag(gram).copy()
    effects = tuple(
        QubitEffect(t=float(t[m]), v=scaled_vecs[m]) for m in range(len(t))
    )
    return QubitStrategy(encodings=states, decoding=Povm(effects=effects))


def synth_uniform_odd(n: int) -> QubitStrategy:
    """Ring strategy winning the uniform game for odd n, impossible classically.

    States point along n evenly spaced directions in the x-z plane; effect
    m is (1/n)(1 - direction_m . sigma), so the closed restaurant is never
    guessed and every marginal is exactly 1/n.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and at least 3, got {n}")
    ang = 2.0 * np.pi * np.arange(n) / n
    states = np.stack([np.sin(ang), np.zeros(n), np.cos(ang)], axis=1)
    return _strategy_from_axes(states, -states / n)


def synth_sic_strict() -> QubitStrategy:
    """Tetrahedron strategy hitting the strict 4-game target exactly.

    The four Bloch directions pair at inner product -1/3, so every
    off-diagonal Born value is (1 + 1/3)/4 = 1/3.
    """
    s2 = 2.0 * np.sqrt(2.0) / 3.0
    azim = 2.0 * np.pi * np.array([0.0, 1.0, -1.0]) / 3.0
    states = np.concatenate(
        [
            [[0.0, 0.0, 1.0]],
            np.stack(
                [s2 * np.cos(azim), s2 * np.sin(azim), np.full(3, -1.0 / 3.0)], axis=1
            ),
        ]
    )
    return _strategy_from_axes(states, -states / 4.0)


def synth_h4_symmetric(gamma1: float) -> QubitStrategy:
    """Closed-form strategy for the 4-game (gamma1, rest equal).

    One state at the pole, three at polar angle theta spaced 120 degrees
    apart in azimuth; effect k is (alpha_k/2)(1 - state_k . sigma) with
    alpha_1 = 8*gamma1/(3 + 4*gamma1) and cos(theta) = -alpha_1/(2 - alpha_1).
    Valid for 0 < gamma1 <= 3/4.
    """
    if not 0.0 < gamma1 <= 0.75:
        raise ValueError(f"gamma1 must lie in (0, 3/4], got {gamma1}")
    a1 = 8.0 * gamma1 / (3.0 + 4.0 * gamma1)
    a_rest = (2.0 - a1) / 3.0
    ct = -a1 / (2.0 - a1)
    st = np.sqrt(max(0.0, 1.0 - ct * ct))
    azim = 2.0 * np.pi * np.array([0.0, 1.0, -1.0]) / 3.0
    states = np.concatenate(
        [
            [[0.0, 0.0, 1.0]],
            np.stack([st * np.cos(azim), st * np.sin(azim), np.full(3, ct)], axis=1),
        ]
    )
    alphas = np.array([a1, a_rest, a_rest, a_rest])
    return _strategy_from_axes(states, -(alphas / 2.0)[:, None] * states)


def h3_gamma_from_angles(theta2: float, theta3: float) -> np.ndarray:
    """Marginals of the two-angle 3-game family at (theta2, theta3).

    States sit at the pole and at angles theta2 (one side) and theta3 (the
    other side) in the x-z plane; the POVM weights alpha are fixed by
    completeness.  Requires theta2 + theta3 > pi so all weights are positive.
    """
    t2, t3 = float(theta2), float(theta3)
    d = np.sin(t2 + t3) - np.sin(t2) - np.sin(t3)
    if d >= 0.0:
        raise ValueError("degenerate angles: need 0 < theta2, theta3 < pi")
    a1 = 2.0 * np.sin(t2 + t3) / d
    a2 = -2.0 * np.sin(t3) / d
    a3 = -2.0 * np.sin(t2) / d
    g1 = a1 / 6.0 * (2.0 - np.cos(t2) - np.cos(t3))
    g2 = a2 / 6.0 * (2.0 - np.cos(t2) - np.cos(t2 + t3))
    g3 = a3 / 6.0 * (2.0 - np.cos(t3) - np.cos(t2 + t3))
    return np.array([g1, g2, g3])


_EDGE = 1e-9


def _theta3_on_locus(theta2: float, gamma1: float) -> float | None:
    """Angle theta3 placing the family on the constant-gamma1 locus, if any."""
    lo = np.pi - theta2 + _EDGE
    hi = np.pi - _EDGE
    if lo >= hi:
        return None

    def f(t3):
        return h3_gamma_from_angles(theta2, t3)[0] - gamma1

    flo, fhi = f(lo), f(hi)
    if flo > 0.0 or fhi < 0.0:
        if abs(flo) < 1e-13:
            return lo
        if abs(fhi) < 1e-13:
            return hi
        return None
    return float(brentq(f, lo, hi, xtol=1e-14))


def h3_angles_for_game(spec: GameSpec) -> tuple[float, float]:
    """Angles (theta2, theta3) whose family marginals match the 3-game target.

    Solved by a bracketed root search for theta2 along the constant-gamma1
    locus (theta3 resolved by an inner bracketed search), with a direct
    2-angle minimization as fallback.  Interior targets only: every
    marginal must be strictly between 0 and 2/3.
    """
    if spec.n != 3 or spec.strict:
        raise ValueError("the two-angle family targets non-strict 3-games")
    gamma = spec.gamma_array()
    if np.any(gamma < 1e-9) or np.any(gamma > 2.0 / 3.0 - 1e-9):
        raise ValueError(
            "boundary target: some marginal is 0 or 2/3, which is classically"
            " winnable; no interior two-angle solution"
        )
    g1, g2 = float(gamma[0]), float(gamma[1])

    # theta2 range where the inner locus solve can reach gamma1.
    lo2 = _EDGE
    cap = 3.0 - 6.0 * g1
    if cap < 1.0:
        lo2 = float(np.arccos(max(-1.0, cap))) + 1e-7
    hi2 = np.pi - _EDGE

    def outer(t2):
        t3 = _theta3_on_locus(t2, g1)
        if t3 is None:
            return None
        return h3_gamma_from_angles(t2, t3)[1] - g2

    grid = np.linspace(lo2, hi2, 257)
    vals = [(t2, outer(t2)) for t2 in grid]
    vals = [(t2, v) for t2, v in vals if v is not None]
    for (ta, fa), (tb, fb) in zip(vals, vals[1:]):
        if fa == 0.0:
            return ta, _theta3_on_locus(ta, g1)
        if fa * fb < 0.0:
            t2 = float(brentq(lambda t: outer(t), ta, tb, xtol=1e-13))
            return t2, _theta3_on_locus(t2, g1)

    # Fallback: free minimization over both angles.
    def resid(x):
        t2 = min(max(x[0], _EDGE), np.pi - _EDGE)
        t3 = min(max(x[1], np.pi - t2 + _EDGE), np.pi - _EDGE)
        g = h3_gamma_from_angles(t2, t3)
        return (g[0] - gamma[0]) ** 2 + (g[1] - gamma[1]) ** 2

    best = None
    starts = [(2.0 * np.pi / 3.0, 2.0 * np.pi / 3.0)]
    if vals:
        t2b = min(vals, key=lambda p: abs(p[1]))[0]
        starts.append((t2b, _theta3_on_locus(t2b, g1) or 2.0 * np.pi / 3.0))
    for x0 in starts:
        out = minimize(resid, x0, method="Nelder-Mead", options={"xatol": 1e-13, "fatol": 1e-26})
        if best is None or out.fun < best.fun:
            best = out
    if best.fun > 1e-20:
        raise ValueError(f"no two-angle solution found for {spec.gamma}")
    t2 = min(max(best.x[0], _EDGE), np.pi - _EDGE)
    t3 = min(max(best.x[1], np.pi - t2 + _EDGE), np.pi - _EDGE)
    return float(t2), float(t3)


def _h3_strategy_from_angles(theta2: float, theta3: float) -> QubitStrategy:
    t2, t3 = theta2, theta3
    d = np.sin(t2 + t3) - np.sin(t2) - np.sin(t3)
    alphas = np.array(
        [2.0 * np.sin(t2 + t3) / d, -2.0 * np.sin(t3) / d, -2.0 * np.sin(t2) / d]
    )
    states = np.array(
        [
            [0.0, 0.0, 1.0],
            [-np.sin(t2), 0.0, np.cos(t2)],
            [np.sin(t3), 0.0, np.cos(t3)],
        ]
    )
    return _strategy_from_axes(states, -(alphas / 2.0)[:, None] * states)


def synth_h3_general(spec: GameSpec) -> QubitStrategy:
    """Qubit strategy winning any interior 3-game exactly.

    Tries the three cyclic role assignments in turn, since the two-angle
    solver anchors the first restaurant at the pole.
    """
    gamma = spec.gamma_array()
    last_err = None
    for shift in range(3):
        perm = [(i + shift) % 3 for i in range(3)]  # position of i in permuted target
        try:
            t2, t3 = h3_angles_for_game(GameSpec(gamma=tuple(gamma[perm])))
        except ValueError as err:
            last_err = err
            continue
        solved = _h3_strategy_from_angles(t2, t3)
        if shift == 0:
            return solved
        states = solved.encodings[perm]
        effects = tuple(solved.decoding.effects[j] for j in perm)
        return QubitStrategy(encodings=states, decoding=Povm(effects=effects))
    raise ValueError(f"no qubit solution found for {spec.gamma}") from last_err


def h3_locus_points(gamma1: float, num: int = 65) -> list[dict]:
    """Sampled constant-gamma1 locus: angles, marginals, midpoint of the off-pole states.

    Rows are dicts with theta2, theta3, gamma2, gamma3, and the x/z
    coordinates of the midpoint of the two off-pole states; used by the
    locus sweep to trace how the family moves as gamma2 varies.
    """
    rows = []
    for t2 in np.linspace(_EDGE, np.pi - _EDGE, num):
        t3 = _theta3_on_locus(float(t2), gamma1)
        if t3 is None:
            continue
        g = h3_gamma_from_angles(t2, t3)
        rows.append(
            {
                "theta2": float(t2),
                "theta3": float(t3),
                "gamma2": float(g[1]),
                "gamma3": float(g[2]),
                "mid_x": float((-np.sin(t2) + np.sin(t3)) / 2.0),
                "mid_z": float((np.cos(t2) + np.cos(t3)) / 2.0),
                "residual": float(abs(g[0] - gamma1)),
            }
        )
    return rows


def simulate_orthogonal_encoding(
    strategy: QubitStrategy, atol: float = 1e-9
) -> MixedStrategy:
    """Classical mixed strategy reproducing a two-valued (antipodal) encoding.

    Requires every encoding to equal +axis or -axis for one common axis;
    the sender's bias becomes the axis choice and the receiver's two coins
    are the Born rows of the two axis states.
    """
    enc = strategy.encodings
    norms = np.linalg.norm(enc, axis=1)
    if norms.max() <= atol:
        raise ValueError("all encodings vanish; no axis to read off")
    axis = enc[int(np.argmax(norms))]
    alpha = []
    for row in enc:
        if np.abs(row - axis).max() <= atol:
            alpha.append(1.0)
        elif np.abs(row + axis).max() <= atol:
            alpha.append(0.0)
        else:
            raise ValueError("encodings are not all aligned with a common axis")
    effs = strategy.decoding.effects
    r = [e.born(axis) for e in effs]
    q = [e.born(-axis) for e in effs]
    return MixedStrategy(alpha=tuple(alpha), r=tuple(r), q=tuple(q))


def simulate_projective_decoding(
    encodings,
    basis: tuple[QubitEffect, QubitEffect],
    postprocess,
    atol: float = 1e-9,
) -> MixedStrategy:
    """Classical mixed strategy reproducing a binary measurement plus postprocessing.

    basis is a complete two-effect measurement; postprocess is a (2, n) row
    of conditional distributions over restaurants given the binary outcome.
    The sender's bias is the first outcome's Born probability and the two
    coins are the postprocessing rows.
    """
    e0, e1 = basis
    if abs(e0.t + e1.t - 1.0) > atol or np.abs(e0.v + e1.v).max() > atol:
        raise ValueError("basis effects do not form a complete binary measurement")
    h = np.asarray(postprocess, dtype=float)
    if h.ndim != 2 or h.shape[0] != 2:
        raise ValueError("postprocess must have shape (2, n)")
    enc = np.asarray(encodings, dtype=float)
    alpha = tuple(min(max(e0.born(s), 0.0), 1.0) for s in enc)
    return MixedStrategy(alpha=alpha, r=tuple(h[0]), q=tuple(h[1]))


def induced_decoding(
    basis: tuple[QubitEffect, QubitEffect], postprocess
) -> Povm:
    """POVM equivalent to measuring a binary basis and postprocessing the outcome."""
    e0, e1 = basis
    h = np.asarray(postprocess, dtype=float)
    effects = tuple(
        QubitEffect(
            t=float(h[0, m] * e0.t + h[1, m] * e1.t),
            v=h[0, m] * e0.v + h[1, m] * e1.v,
        )
        for m in range(h.shape[1])
    )
    return Povm(effects=effects)


def noise_boundary(eps_e: float, eps_d: float) -> float:
    """Combined depolarizing weight eps_e + eps_d - eps_e*eps_d.

    The noisy ring strategy keeps its advantage over every classical
    strategy exactly while this value stays below 1/2.
    """
    return eps_e + eps_d - eps_e * eps_d


def noise_advantage_region(num: int = 101) -> list[tuple[float, float, float, bool]]:
    """Grid rows (eps_e, eps_d, boundary_value, advantage) over [0, 1]^2."""
    grid = np.linspace(0.0, 1.0, num)
    rows = []
    for e in grid:
        for d in grid:
            b = noise_boundary(float(e), float(d))
            rows.append((float(e), float(d), b, b < 0.5))
    return rows


@dataclass(frozen=True)
class ErrorReport:
    """Breakdown of the visit-error functional for one visit matrix.

    value is the mean over restaurants of (closed-restaurant visit
    probability) + (marginal deviation squared); the two per-restaurant
    term tuples reproduce it exactly.
    """

    value: float
    diagonal: tuple[float, ...]
    marginal_penalty: tuple[float, ...]


def error_functional(vm: VisitMatrix) -> ErrorReport:
    """Visit-error functional: diagonal leakage plus squared marginal deviation."""
    n = vm.p.shape[0]
    diag = np.diag(vm.p)
    marg = vm.p.mean(axis=1)
    pen = (marg - 1.0 / n) ** 2
    return ErrorReport(
        value=float((diag.sum() + pen.sum()) / n),
        diagonal=tuple(float(x) for x in diag),
        marginal_penalty=tuple(float(x) for x in pen),
    )


def _floor_batch(alpha, r, q) -> np.ndarray:
    """Vectorized error functional over batches of mixed strategies (n = 3)."""
    abar = alpha.mean(axis=1, keepdims=True)
    diag = (alpha * r + (1.0 - alpha) * q).sum(axis=1)
    marg = abar * r + (1.0 - abar) * q
    pen = ((marg - 1.0 / 3.0) ** 2).sum(axis=1)
    return (diag + pen) / 3.0


def _square_to_simplex(u, v) -> np.ndarray:
    """Map the unit square onto the 3-simplex: (u, (1-u)v, (1-u)(1-v))."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.stack([u, (1.0 - u) * v, (1.0 - u) * (1.0 - v)], axis=-1)


def _floor_single(x) -> float:
    alpha = np.clip(x[:3], 0.0, 1.0)
    r = _square_to_simplex(min(max(x[3], 0.0), 1.0), min(max(x[4], 0.0), 1.0))
    q = _square_to_simplex(min(max(x[5], 0.0), 1.0), min(max(x[6], 0.0), 1.0))
    return float(_floor_batch(alpha[None, :], r[None, :], q[None, :])[0])


@dataclass(frozen=True)
class FloorResult:
    """Monte Carlo floor of the error functional over no-SR classical strategies."""

    raw_sample_min: float
    refined_min: float
    min_error: float
    strategy: MixedStrategy
    samples: int
    seed: int


def montecarlo_classical_floor(
    samples: int = 1_000_000, seed: int = 0, refine_top: int = 100
) -> FloorResult:
    """Sampled minimum of the error functional over 3-game mixed strategies.

    Draws (bias triple, two receiver coins) uniformly from the 7-cube,
    mapping coin squares onto the simplex, then refines the best
    refine_top samples by coordinate descent.  Deterministic for fixed
    seed: the stream is chunked by SeedSequence.spawn, so the result does
    not depend on chunk scheduling.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    root = np.random.SeedSequence(seed)
    chunk = 100_000
    nchunks = (samples + chunk - 1) // chunk
    seeds = root.spawn(nchunks)

    keep = max(refine_top, 1)
    pool_x: list[np.ndarray] = []
    pool_val: list[float] = []
    drawn = 0
    for ss in seeds:
        rng = np.random.default_rng(ss)
        b = min(chunk, samples - drawn)
        drawn += b
        x = rng.random((b, 7))
        vals = _floor_batch(
            x[:, :3],
            _square_to_simplex(x[:, 3], x[:, 4]),
            _square_to_simplex(x[:, 5], x[:, 6]),
        )
        order = np.argsort(vals)[:keep]
        for idx in order:
            pool_val.append(float(vals[idx]))
            pool_x.append(x[idx].copy())

    order = np.argsort(pool_val)[:keep]
    raw_min = float(pool_val[int(order[0])])
    best_val = raw_min
    best_x = pool_x[int(order[0])]
    for idx in order:
        x, val = compass_descent(
            _floor_single, pool_x[int(idx)], 0.0, 1.0, step0=0.1, min_step=1e-6
        )
        if val < best_val:
            best_val = val
            best_x = x

    alpha = np.clip(best_x[:3], 0.0, 1.0)
    r = _square_to_simplex(best_x[3], best_x[4])
    q = _square_to_simplex(best_x[5], best_x[6])
    strategy = MixedStrategy(alpha=tuple(alpha), r=tuple(r), q=tuple(q))
    return FloorResult(
        raw_sample_min=raw_min,
        refined_min=best_val,
        min_error=min(raw_min, best_val),
        strategy=strategy,
        samples=samples,
        seed=seed,
    )

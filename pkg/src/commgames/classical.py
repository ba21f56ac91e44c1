"""Classical strategies over a one-bit channel, with and without shared randomness.

A deterministic strategy is an encode table (closed restaurant -> bit) plus
a decode table (bit -> restaurant).  A mixed strategy lets the sender flip
a per-restaurant biased coin over the bit and the receiver hold one visit
distribution per received bit; its visit matrix is
``p(m|k) = alpha[k] * r[m] + (1 - alpha[k]) * q[m]``.  A correlated
strategy is a weighted family of mixed strategies indexed by a shared
random label; its cost in shared randomness is the entropy of the weights.

Winnability of a game by a mixed strategy reduces to a finite partition
search: the zero-diagonal condition forces every restaurant into one of
three classes (always triggers bit 1, always triggers bit 0, or is never
visited), and once the classes are fixed the marginal conditions pin the
receiver's coins, leaving a single interval test on the class masses.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np

from .games import (
    GameSpec,
    VisitMatrix,
    as_distribution,
    check_game,
    game_space_extreme_points,
    shannon_bits,
)

__all__ = [
    "DeterministicStrategy",
    "MixedStrategy",
    "CorrelatedStrategy",
    "PartitionCertificate",
    "FeasibilityReport",
    "visit_matrix_deterministic",
    "visit_matrix_mixed",
    "visit_matrix_correlated",
    "mixed_feasibility",
    "mixed_feasibility_report",
    "mixed_strategy_from_certificate",
    "extreme_game_strategy",
    "synth_sr_strategy",
    "strict_sr_protocol",
    "sr_amount",
]


@dataclass(frozen=True)
class DeterministicStrategy:
    """Encode table (one bit per closed restaurant) and decode table (bit -> restaurant).

    Restaurants are 0-based in memory; JSON uses 1-based restaurant numbers.
    """

    encode: tuple[int, ...]
    decode: tuple[int, int]

    def __post_init__(self):
        n = len(self.encode)
        if n < 2:
            raise ValueError("encode table needs at least 2 entries")
        if any(b not in (0, 1) for b in self.encode):
            raise ValueError("encode table entries must be bits")
        if len(self.decode) != 2 or any(not 0 <= d < n for d in self.decode):
            raise ValueError("decode table must map both bits into range(n)")
        object.__setattr__(self, "encode", tuple(int(b) for b in self.encode))
        object.__setattr__(self, "decode", tuple(int(d) for d in self.decode))

    @property
    def n(self) -> int:
        return len(self.encode)

    def composite(self) -> tuple[int, ...]:
        """The closed-restaurant -> visited-restaurant map decode(encode(k))."""
        return tuple(self.decode[b] for b in self.encode)

    def to_mixed(self) -> "MixedStrategy":
        n = self.n
        alpha = tuple(1.0 if b == 0 else 0.0 for b in self.encode)
        r = np.zeros(n)
        r[self.decode[0]] = 1.0
        q = np.zeros(n)
        q[self.decode[1]] = 1.0
        return MixedStrategy(alpha=alpha, r=tuple(r), q=tuple(q))

    def to_json(self) -> str:
        return json.dumps(
            {
                "encode": list(self.encode),
                "decode": [self.decode[0] + 1, self.decode[1] + 1],
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "DeterministicStrategy":
        d = json.loads(text)
        return cls(
            encode=tuple(d["encode"]),
            decode=(int(d["decode"][0]) - 1, int(d["decode"][1]) - 1),
        )


@dataclass(frozen=True)
class MixedStrategy:
    """Per-restaurant coin bias for the sender plus two visit coins for the receiver.

    ``alpha[k]`` is the probability of sending bit 0 when restaurant k is
    closed; ``r`` and ``q`` are the receiver's visit distributions on
    receiving bit 0 and bit 1 respectively.
    """

    alpha: tuple[float, ...]
    r: tuple[float, ...]
    q: tuple[float, ...]

    def __post_init__(self):
        a = np.asarray(self.alpha, dtype=float)
        if a.ndim != 1 or np.any(a < -1e-12) or np.any(a > 1 + 1e-12):
            raise ValueError("alpha entries must lie in [0, 1]")
        r = as_distribution(self.r, "r")
        q = as_distribution(self.q, "q")
        if not (a.size == r.size == q.size):
            raise ValueError("alpha, r, q must share one length")
        object.__setattr__(self, "alpha", tuple(float(x) for x in np.clip(a, 0, 1)))
        object.__setattr__(self, "r", tuple(float(x) for x in r))
        object.__setattr__(self, "q", tuple(float(x) for x in q))

    @property
    def n(self) -> int:
        return len(self.alpha)

    def to_json(self) -> str:
        return json.dumps(
            {"alpha": list(self.alpha), "q": list(self.q), "r": list(self.r)},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "MixedStrategy":
        d = json.loads(text)
        return cls(alpha=tuple(d["alpha"]), r=tuple(d["r"]), q=tuple(d["q"]))


@dataclass(frozen=True)
class CorrelatedStrategy:
    """Weighted branches of mixed strategies selected by a shared random label.

    Construction normalizes the weights and drops zero-weight branches.
    """

    branches: tuple[tuple[float, MixedStrategy], ...]

    def __post_init__(self):
        if not self.branches:
            raise ValueError("a correlated strategy needs at least one branch")
        weights = np.asarray([w for w, _ in self.branches], dtype=float)
        if np.any(weights < -1e-12):
            raise ValueError("branch weights must be nonnegative")
        total = weights.sum()
        if total <= 0:
            raise ValueError("branch weights must not all vanish")
        weights = weights / total
        n = self.branches[0][1].n
        kept = []
        for w, s in zip(weights, (s for _, s in self.branches)):
            if s.n != n:
                raise ValueError("all branches must share one n")
            if w > 0:
                kept.append((float(w), s))
        object.__setattr__(self, "branches", tuple(kept))

    @property
    def n(self) -> int:
        return self.branches[0][1].n

    @property
    def sr_bits(self) -> float:
        """Shared randomness consumed, in bits: entropy of the branch weights."""
        return shannon_bits([w for w, _ in self.branches])

    def to_json(self) -> str:
        return json.dumps(
            {
                "branches": [
                    {"strategy": json.loads(s.to_json()), "weight": w}
                    for w, s in self.branches
                ]
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "CorrelatedStrategy":
        d = json.loads(text)
        branches = tuple(
            (float(b["weight"]), MixedStrategy.from_json(json.dumps(b["strategy"])))
            for b in d["branches"]
        )
        return cls(branches=branches)


def visit_matrix_mixed(s: MixedStrategy) -> VisitMatrix:
    """Visit matrix of a mixed strategy: column k is ``alpha[k]*r + (1-alpha[k])*q``."""
    a = np.asarray(s.alpha)
    r = np.asarray(s.r)
    q = np.asarray(s.q)
    return VisitMatrix(p=np.outer(r, a) + np.outer(q, 1.0 - a))


def visit_matrix_deterministic(s: DeterministicStrategy) -> VisitMatrix:
    return visit_matrix_mixed(s.to_mixed())


def visit_matrix_correlated(s: CorrelatedStrategy) -> VisitMatrix:
    """Weight-averaged visit matrix over the branches."""
    p = sum(w * visit_matrix_mixed(b).p for w, b in s.branches)
    return VisitMatrix(p=p)


def sr_amount(s: CorrelatedStrategy) -> float:
    """Bits of shared randomness a correlated strategy consumes."""
    return s.sr_bits


@dataclass(frozen=True)
class PartitionCertificate:
    """Witness that a game is mixed-winnable.

    ``X`` collects the restaurants whose closure makes the sender emit
    bit 1, ``Y`` those that trigger bit 0, and ``Z`` the never-visited
    (zero-target) rest.  ``r``/``q`` are the receiver coins the marginal
    conditions force, and ``alpha_bar_z`` is the (free) bit-0 bias used on
    ``Z``.  Index sets are 0-based in memory and 1-based in JSON.
    """

    X: frozenset[int]
    Y: frozenset[int]
    Z: frozenset[int]
    r: tuple[float, ...]
    q: tuple[float, ...]
    alpha_bar_z: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "X": sorted(i + 1 for i in self.X),
                "Y": sorted(i + 1 for i in self.Y),
                "Z": sorted(i + 1 for i in self.Z),
                "alpha_bar_z": self.alpha_bar_z,
                "q": list(self.q),
                "r": list(self.r),
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "PartitionCertificate":
        d = json.loads(text)
        return cls(
            X=frozenset(i - 1 for i in d["X"]),
            Y=frozenset(i - 1 for i in d["Y"]),
            Z=frozenset(i - 1 for i in d["Z"]),
            r=tuple(d["r"]),
            q=tuple(d["q"]),
            alpha_bar_z=float(d["alpha_bar_z"]),
        )


@dataclass(frozen=True)
class FeasibilityReport:
    """Full outcome of the partition search.

    ``boundary_indeterminate`` flags games where no partition passes the
    equality test at ``tol`` but some partition misses it by less than the
    reporting band, so the verdict would flip under a slightly looser
    tolerance.  ``best_gap`` is the smallest interval violation over all
    partitions (0 when feasible).
    """

    certificate: PartitionCertificate | None
    feasible: bool
    boundary_indeterminate: bool
    partitions_checked: int
    best_gap: float


def _partition_gap(gamma: np.ndarray, X: tuple[int, ...], size_y: int, size_z: int):
    """Distance of sum(gamma[X]) from the admissible interval, and alpha_bar_z."""
    n = gamma.size
    mass_x = float(gamma[list(X)].sum())
    lo = size_y / n
    hi = (size_y + size_z) / n
    if mass_x < lo:
        return lo - mass_x, 0.0
    if mass_x > hi:
        return mass_x - hi, 1.0
    alpha_bar_z = 0.0 if size_z == 0 else (n * mass_x - size_y) / size_z
    return 0.0, min(max(alpha_bar_z, 0.0), 1.0)


def mixed_feasibility_report(
    spec: GameSpec, tol: float = 1e-9, band: float = 1e-6
) -> FeasibilityReport:
    """Decide mixed-strategy winnability by exhaustive partition search.

    Enumerates every split of the positive-target set into nonempty X
    (bit-1 triggers) and Y (bit-0 triggers), with Z fixed to the
    zero-target set.  A split wins iff ``sum(gamma[X])`` falls in
    ``[|Y|/n, (|Y|+|Z|)/n]``: the left end is the all-bit-0 mass the
    receiver's 0-coin must account for, and Z restaurants may push the
    mass anywhere in the interval through their free bias.

    Parameters
    ----------
    spec : GameSpec
        Must be non-strict.
    tol : float
        Acceptance tolerance on the interval test.
    band : float
        Reporting band for near-misses (boundary-indeterminate games).
    """
    if spec.strict:
        raise ValueError("mixed_feasibility handles non-strict games only")
    gamma = spec.gamma_array()
    n = spec.n
    positive = tuple(i for i in range(n) if gamma[i] > tol)
    zero = tuple(i for i in range(n) if gamma[i] <= tol)
    a = len(positive)

    best_gap = math.inf
    checked = 0
    hit: tuple[tuple[int, ...], tuple[int, ...], float] | None = None
    for mask in range(1, (1 << a) - 1):
        X = tuple(positive[i] for i in range(a) if mask >> i & 1)
        Y = tuple(positive[i] for i in range(a) if not mask >> i & 1)
        checked += 1
        gap, alpha_bar_z = _partition_gap(gamma, X, len(Y), len(zero))
        if gap < best_gap:
            best_gap = gap
        if gap <= tol and hit is None:
            hit = (X, Y, alpha_bar_z)

    if hit is None:
        return FeasibilityReport(
            certificate=None,
            feasible=False,
            boundary_indeterminate=best_gap <= band,
            partitions_checked=checked,
            best_gap=best_gap,
        )

    X, Y, alpha_bar_z = hit
    mass_x = gamma[list(X)].sum()
    mass_y = gamma[list(Y)].sum()
    r = np.zeros(n)
    r[list(X)] = gamma[list(X)] / mass_x
    q = np.zeros(n)
    q[list(Y)] = gamma[list(Y)] / mass_y
    cert = PartitionCertificate(
        X=frozenset(X),
        Y=frozenset(Y),
        Z=frozenset(zero),
        r=tuple(r),
        q=tuple(q),
        alpha_bar_z=float(alpha_bar_z),
    )
    return FeasibilityReport(
        certificate=cert,
        feasible=True,
        boundary_indeterminate=False,
        partitions_checked=checked,
        best_gap=0.0,
    )


def mixed_feasibility(spec: GameSpec, tol: float = 1e-9) -> PartitionCertificate | None:
    """Certificate of mixed winnability, or None when no partition works."""
    return mixed_feasibility_report(spec, tol=tol).certificate


def mixed_strategy_from_certificate(
    cert: PartitionCertificate, spec: GameSpec
) -> MixedStrategy:
    """Concrete mixed strategy realized by a partition certificate.

    Sender bias: 0 on X, 1 on Y, the certificate's free bias on Z.  The
    resulting visit matrix passes ``check_game`` for the certified game.
    """
    n = spec.n
    alpha = np.empty(n)
    for i in cert.X:
        alpha[i] = 0.0
    for i in cert.Y:
        alpha[i] = 1.0
    for i in cert.Z:
        alpha[i] = cert.alpha_bar_z
    return MixedStrategy(alpha=tuple(alpha), r=cert.r, q=cert.q)


def extreme_game_strategy(n: int, major: int, minor: int) -> DeterministicStrategy:
    """Deterministic winner of the extreme game gamma[major]=(n-1)/n, gamma[minor]=1/n.

    The sender emits bit 0 exactly when the major restaurant is closed;
    the receiver visits the minor one on bit 0 and the major one on bit 1.
    """
    if major == minor or not (0 <= major < n and 0 <= minor < n):
        raise ValueError("major and minor must be distinct restaurants in range(n)")
    encode = tuple(0 if k == major else 1 for k in range(n))
    return DeterministicStrategy(encode=encode, decode=(minor, major))


def _synth_sr_n3(spec: GameSpec) -> CorrelatedStrategy:
    """Two-branch decomposition for n=3 with at most one bit of shared randomness.

    Writes gamma as w * u + (1 - w) * v with u on the facet where the
    largest target equals 2/3 and v on the facet where it vanishes; both
    facet games are mixed-winnable, so two branches suffice and the label
    entropy is at most 1 bit.
    """
    gamma = spec.gamma_array()

    # The pivot restaurant i (the one pinned to 2/3 on the heavy facet) is
    # not always the argmax: its window can be emptied by another target
    # sitting close to 2/3.  Some pivot always works, so try them all.
    chosen = None
    for i in sorted(range(3), key=lambda t: -gamma[t]):
        w = 1.5 * gamma[i]
        if w >= 1.0 - 1e-12:
            # gamma already sits on the 2/3 facet; one branch does it.
            cert = mixed_feasibility(spec)
            if cert is None:
                raise ValueError(f"facet game unexpectedly infeasible: {spec.gamma}")
            branch = mixed_strategy_from_certificate(cert, spec)
            return CorrelatedStrategy(branches=((1.0, branch),))
        if w <= 1e-12:
            continue
        # Feasible window for the u-coordinates of the two other
        # restaurants: v = (gamma - w*u)/(1-w) must stay within [0, 2/3].
        j, k = (t for t in range(3) if t != i)
        lo_j = max(0.0, (gamma[j] - (1.0 - w) * (2.0 / 3.0)) / w)
        hi_j = min(1.0 / 3.0, gamma[j] / w)
        lo_k = max(0.0, (gamma[k] - (1.0 - w) * (2.0 / 3.0)) / w)
        hi_k = min(1.0 / 3.0, gamma[k] / w)
        # Need u[j] + u[k] = 1/3 with both inside their windows.
        lo = max(lo_j, 1.0 / 3.0 - hi_k)
        hi = min(hi_j, 1.0 / 3.0 - lo_k)
        if lo <= hi + 1e-12:
            chosen = (i, j, k, w, min(max(lo, 0.0), hi))
            break
    if chosen is None:
        # Should not happen for a physical target; fall back to a single
        # branch when the game happens to be mixed-winnable outright.
        cert = mixed_feasibility(spec)
        if cert is None:
            raise ValueError(f"no facet split found for {spec.gamma}")
        branch = mixed_strategy_from_certificate(cert, spec)
        return CorrelatedStrategy(branches=((1.0, branch),))

    i, j, k, w, uj = chosen
    u = np.zeros(3)
    v = np.zeros(3)
    u[i] = 2.0 / 3.0
    u[j] = uj
    u[k] = 1.0 / 3.0 - uj
    v[:] = (gamma - w * u) / (1.0 - w)
    v = np.clip(v, 0.0, 2.0 / 3.0)
    v[i] = 0.0

    branches = []
    for weight, g in ((w, u), (1.0 - w, v)):
        facet = GameSpec(gamma=tuple(g / g.sum()))
        cert = mixed_feasibility(facet, tol=1e-7)
        if cert is None:
            raise ValueError(f"facet game unexpectedly infeasible: {facet.gamma}")
        branches.append((weight, mixed_strategy_from_certificate(cert, facet)))
    return CorrelatedStrategy(branches=tuple(branches))


def _decompose_over_extremes(gamma: np.ndarray) -> list[tuple[int, int, float]]:
    """Write gamma as a convex combination of extreme games.

    Returns (major, minor, weight) triples.  Solved as a small LP
    feasibility problem over the n(n-1) extreme points; a basic solution
    keeps at most n of them.
    """
    from .simplexlp import solve_feasibility

    n = gamma.size
    pairs = list(itertools.permutations(range(n), 2))
    A = np.zeros((n, len(pairs)))
    for col, (i, j) in enumerate(pairs):
        A[i, col] = (n - 1) / n
        A[j, col] = 1.0 / n
    w = solve_feasibility(A, gamma)
    if w is None:
        raise ValueError(f"gamma {tuple(gamma)} is not in the physical game polytope")
    out = []
    for col, (i, j) in enumerate(pairs):
        if w[col] > 1e-12:
            out.append((i, j, float(w[col])))
    return out


def synth_sr_strategy(spec: GameSpec) -> CorrelatedStrategy:
    """Shared-randomness strategy winning any physical non-strict game.

    Decomposes the target vector over the extreme points of the game
    polytope and plays the deterministic winner of the drawn extreme game
    on each branch.  For n=3 a dedicated two-branch construction keeps the
    shared randomness at one bit or less.
    """
    if spec.strict:
        raise ValueError("synth_sr_strategy handles non-strict games; "
                         "see strict_sr_protocol")
    if spec.n == 3:
        return _synth_sr_n3(spec)
    branches = tuple(
        (weight, extreme_game_strategy(spec.n, major, minor).to_mixed())
        for major, minor, weight in _decompose_over_extremes(spec.gamma_array())
    )
    return CorrelatedStrategy(branches=branches)


def _strict_partition_branches_n4() -> tuple[tuple[float, MixedStrategy], ...]:
    """The three balanced-partition branches whose equal mixture is strict-perfect."""
    partitions = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))
    branches = []
    for X, Y in partitions:
        alpha = tuple(1.0 if k in X else 0.0 for k in range(4))
        r = tuple(0.5 if m in Y else 0.0 for m in range(4))
        q = tuple(0.5 if m in X else 0.0 for m in range(4))
        branches.append((1.0 / 3.0, MixedStrategy(alpha=alpha, r=r, q=q)))
    return tuple(branches)


def strict_sr_protocol(n: int) -> CorrelatedStrategy:
    """Shared-randomness protocol winning the strict n-restaurant game exactly.

    The shared label is uniform over n-1 branches, so the cost is
    log2(n-1) bits.  On branch k the sender emits bit 0 exactly when the
    closed restaurant lies above k; the receiver visits k on bit 0 and
    k+1 on bit 1.  Averaged over branches every other restaurant is
    visited with probability 1/(n-1).  For n=4 the equivalent
    balanced-partition mixture is returned.
    """
    if n < 3:
        raise ValueError("the strict protocol needs n >= 3")
    if n == 4:
        return CorrelatedStrategy(branches=_strict_partition_branches_n4())
    branches = []
    for k in range(n - 1):
        alpha = tuple(1.0 if m > k else 0.0 for m in range(n))
        r = tuple(1.0 if m == k else 0.0 for m in range(n))
        q = tuple(1.0 if m == k + 1 else 0.0 for m in range(n))
        branches.append((1.0 / (n - 1), MixedStrategy(alpha=alpha, r=r, q=q)))
    return CorrelatedStrategy(branches=tuple(branches))

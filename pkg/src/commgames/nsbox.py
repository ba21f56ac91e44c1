"""No-signaling boxes, the CHSH functional, and the four-cup pair game.

A two-input/two-output no-signaling box is fixed by eight numbers: the
marginal one-probabilities m_x (first party) and n_y (second party) and
the joint one-probabilities c_xy.  No-signaling holds by construction;
the box is a valid probability table iff every c_xy obeys the Frechet
bounds max(0, m_x + n_y - 1) <= c_xy <= min(m_x, n_y).

The cup game: one of the six cup pairs from {1, 2, 3, 4} is drawn, the
sender learns it and transmits a single bit m, the receiver lifts cup
2m + 1 + b (1-based) using its box output b, and the round is won when
the lifted cup belongs to the drawn pair.  Pairs {1,2} and {3,4} are won
by the message alone; each remaining pair is won exactly when the box
produces the right output pattern, giving the six closed-form pair
probabilities below and the average (8 + chsh) / 12.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

__all__ = [
    "NsBox",
    "pr_box",
    "CupGameOutcome",
    "cup_game_success",
    "classical_cup_bound",
]


@dataclass(frozen=True)
class NsBox:
    """No-signaling box: marginals (m0, m1), (n0, n1) and joints c_xy."""

    m0: float
    m1: float
    n0: float
    n1: float
    c00: float
    c01: float
    c10: float
    c11: float

    def __post_init__(self):
        for name in ("m0", "m1", "n0", "n1", "c00", "c01", "c10", "c11"):
            val = getattr(self, name)
            if not 0.0 <= val <= 1.0:
                raise ValueError(f"{name}={val} outside [0, 1]")
        tol = 1e-12
        for x in (0, 1):
            for y in (0, 1):
                m = getattr(self, f"m{x}")
                n = getattr(self, f"n{y}")
                c = getattr(self, f"c{x}{y}")
                if c < max(0.0, m + n - 1.0) - tol or c > min(m, n) + tol:
                    raise ValueError(
                        f"c{x}{y}={c} violates the Frechet bounds for m{x}={m}, n{y}={n}"
                    )

    def table(self) -> np.ndarray:
        """Rows (x, y) in order 00, 01, 10, 11; columns (a, b) = 11, 10, 01, 00."""
        rows = []
        for x in (0, 1):
            for y in (0, 1):
                m = getattr(self, f"m{x}")
                n = getattr(self, f"n{y}")
                c = getattr(self, f"c{x}{y}")
                rows.append([c, m - c, n - c, 1.0 - m - n + c])
        return np.array(rows)

    def prob(self, a: int, b: int, x: int, y: int) -> float:
        """P(a, b | x, y)."""
        col = {(1, 1): 0, (1, 0): 1, (0, 1): 2, (0, 0): 3}[(a, b)]
        return float(self.table()[2 * x + y, col])

    def chsh(self) -> float:
        """CHSH value with the sign on the (0,1) input pair.

        Closed form in the eight parameters; equals the correlator sum
        E00 - E01 + E10 + E11 computed from the table.
        """
        return 2.0 + 4.0 * (
            self.c00 - self.c01 + self.c10 + self.c11 - self.m1 - self.n0
        )

    def correlator_chsh(self) -> float:
        """CHSH recomputed from the probability table, as a cross-check."""
        t = self.table()
        corr = t[:, 0] - t[:, 1] - t[:, 2] + t[:, 3]
        return float(corr[0] - corr[1] + corr[2] + corr[3])

    def to_json(self) -> str:
        return json.dumps(
            {
                "c00": self.c00,
                "c01": self.c01,
                "c10": self.c10,
                "c11": self.c11,
                "m0": self.m0,
                "m1": self.m1,
                "n0": self.n0,
                "n1": self.n1,
            },
            sort_keys=True,
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "NsBox":
        obj = json.loads(text)
        return cls(**{k: float(obj[k]) for k in
                      ("m0", "m1", "n0", "n1", "c00", "c01", "c10", "c11")})


def pr_box() -> NsBox:
    """Extremal box: perfect correlation except anti-correlation at (x, y) = (0, 1).

    Reaches CHSH = 4 (in the convention above) and wins the cup game with
    certainty.
    """
    return NsBox(m0=0.5, m1=0.5, n0=0.5, n1=0.5, c00=0.5, c01=0.0, c10=0.5, c11=0.5)


@dataclass(frozen=True)
class CupGameOutcome:
    """Per-pair success probabilities of the box protocol and their average."""

    p12: float
    p13: float
    p14: float
    p23: float
    p24: float
    p34: float
    average: float


def cup_game_success(box: NsBox) -> CupGameOutcome:
    """Evaluate the box protocol on all six cup pairs.

    The message-only pairs {1,2} and {3,4} always succeed; the other four
    need specific output pairs, read off the box table.  The average obeys
    average = (8 + chsh) / 12 exactly.
    """
    p13 = box.prob(0, 0, 0, 0) + box.prob(1, 0, 0, 1)
    p24 = box.prob(1, 1, 0, 0) + box.prob(0, 1, 0, 1)
    p14 = box.prob(0, 0, 1, 0) + box.prob(1, 1, 1, 1)
    p23 = box.prob(1, 1, 1, 0) + box.prob(0, 0, 1, 1)
    avg = (2.0 + p13 + p14 + p23 + p24) / 6.0
    return CupGameOutcome(
        p12=1.0, p13=p13, p14=p14, p23=p23, p24=p24, p34=1.0, average=avg
    )


def classical_cup_bound() -> float:
    """Best deterministic one-bit success at the cup game, by exhaustion.

    Enumerates all 2^6 pair-to-message encodings and 4^2 message-to-cup
    decodings; a round is won when the lifted cup belongs to the drawn
    pair.  The maximum is 5/6: the two reachable cups can touch at most
    five of the six pairs.
    """
    pairs = list(itertools.combinations(range(1, 5), 2))
    best = 0
    for decode in itertools.product(range(1, 5), repeat=2):
        # Optimal encoding decouples per pair: pick the better message.
        wins = sum(
            max(cup in pair for cup in decode) for pair in pairs
        )
        best = max(best, wins)
    # The decoupled optimum is also the exhaustive-encoding optimum, but
    # run the full product anyway to keep the bound assumption-free.
    best_full = 0
    for decode in itertools.product(range(1, 5), repeat=2):
        for encode_bits in itertools.product((0, 1), repeat=6):
            wins = sum(
                decode[m] in pair for m, pair in zip(encode_bits, pairs)
            )
            best_full = max(best_full, wins)
    assert best_full == best
    return best_full / 6.0

"""Unbounded-shared-randomness hull membership."""

import numpy as np
from numpy.testing import assert_allclose

from commgames import (
    GameSpec,
    check_game,
    hull_membership_oracle,
    mixed_feasibility,
    strict_game,
    uniform_game,
    visit_matrix_deterministic,
)


def random_physical_game(rng, n):
    while True:
        g = rng.dirichlet(np.ones(n))
        if g.max() <= 1.0 - 1.0 / n:
            return GameSpec(gamma=tuple(g))


def reconstructed_matrix(verdict, n):
    p = np.zeros((n, n))
    for strategy, weight in verdict.weights:
        p += float(weight) * visit_matrix_deterministic(strategy).p
    return p


def test_uniform_games_always_in_hull():
    for n in range(2, 9):
        verdict = hull_membership_oracle(uniform_game(n))
        assert verdict.feasible_with_unbounded_sr
        p = reconstructed_matrix(verdict, n)
        assert_allclose(p.mean(axis=1), np.full(n, 1 / n), atol=1e-9)
        assert_allclose(np.diag(p), np.zeros(n), atol=1e-12)


def test_strict_games_in_hull_with_exact_witness():
    for n in (3, 4, 5):
        verdict = hull_membership_oracle(strict_game(n))
        assert verdict.feasible_with_unbounded_sr
        assert verdict.exact
        p = reconstructed_matrix(verdict, n)
        assert_allclose(p, (1.0 - np.eye(n)) / (n - 1), atol=1e-12)


def test_hull_contains_every_mixed_winnable_game():
    rng = np.random.default_rng(53)
    hits = 0
    for _ in range(40):
        a = rng.uniform(0.05, 0.45)
        c = rng.uniform(0.05, 0.45)
        spec = GameSpec(gamma=(a, 0.5 - a, c, 0.5 - c))
        if mixed_feasibility(spec) is not None:
            hits += 1
            assert hull_membership_oracle(spec).feasible_with_unbounded_sr
    assert hits == 40


def test_hull_covers_the_physical_polytope():
    rng = np.random.default_rng(59)
    for n in (3, 4, 5):
        for _ in range(20):
            spec = random_physical_game(rng, n)
            verdict = hull_membership_oracle(spec)
            assert verdict.feasible_with_unbounded_sr
            p = reconstructed_matrix(verdict, n)
            assert check_game(spec, _as_visit_matrix(p), tol=1e-9).wins


def _as_visit_matrix(p):
    from commgames import VisitMatrix

    # tiny float drift from weight rounding is cleaned by renormalizing columns
    p = np.clip(p, 0.0, None)
    return VisitMatrix(p=p / p.sum(axis=0, keepdims=True))


def test_exactness_flag_by_size():
    assert hull_membership_oracle(uniform_game(5)).exact
    assert not hull_membership_oracle(uniform_game(6)).exact
    # forcing float mode on a small instance still answers correctly
    verdict = hull_membership_oracle(uniform_game(4), exact=False)
    assert verdict.feasible_with_unbounded_sr and not verdict.exact


def test_witness_json_layout():
    obj = hull_membership_oracle(uniform_game(3)).to_json_obj()
    assert set(obj) == {"feasible_with_unbounded_sr", "exact", "witness"}
    for entry in obj["witness"]:
        assert set(entry) == {"encode", "decode", "weight"}
        assert all(b in (0, 1) for b in entry["encode"])
        assert all(1 <= d <= 3 for d in entry["decode"])
        assert entry["weight"] > 0
    total = sum(e["weight"] for e in obj["witness"])
    assert_allclose(total, 1.0, atol=1e-9)

"""Game specifications, visit matrices, and the win predicate."""

import itertools

import numpy as np
import pytest
from numpy.testing import assert_allclose

from commgames import (
    GameSpec,
    VisitMatrix,
    check_game,
    convex_mix,
    extreme_game_strategy,
    game_space_extreme_points,
    shannon_bits,
    strict_game,
    uniform_game,
    visit_matrix_deterministic,
)


def random_physical_game(rng, n):
    """Random marginal vector inside the physical polytope."""
    while True:
        g = rng.dirichlet(np.ones(n))
        if g.max() <= 1.0 - 1.0 / n:
            return GameSpec(gamma=tuple(g))


def test_gamespec_validation():
    with pytest.raises(ValueError):
        GameSpec(gamma=(0.5, 0.6))  # does not sum to 1
    with pytest.raises(ValueError):
        GameSpec(gamma=(-0.1, 0.6, 0.5))
    with pytest.raises(ValueError):
        GameSpec(gamma=(0.8, 0.1, 0.1))  # above the 1 - 1/n cap
    with pytest.raises(ValueError):
        GameSpec(gamma=(1.0,))  # n >= 2
    with pytest.raises(ValueError):
        GameSpec(gamma=(0.5, 0.25, 0.25), strict=True)  # strict must be uniform
    spec = GameSpec(gamma=(2 / 3, 1 / 3, 0.0))
    assert spec.n == 3 and not spec.strict


def test_gamespec_constructors():
    u = uniform_game(5)
    assert u.n == 5 and not u.strict
    assert_allclose(u.gamma, np.full(5, 0.2), atol=1e-15)
    s = strict_game(4)
    assert s.strict
    assert_allclose(s.gamma, np.full(4, 0.25), atol=1e-15)


def test_gamespec_json_roundtrip():
    for spec in [uniform_game(4), strict_game(3), GameSpec(gamma=(0.6, 0.3, 0.1))]:
        back = GameSpec.from_json(spec.to_json())
        assert back.strict == spec.strict
        assert_allclose(back.gamma, spec.gamma, atol=0)
    with pytest.raises(ValueError):
        GameSpec.from_json('{"n": 4, "gamma": [0.5, 0.5], "strict": false}')


def test_visit_matrix_validation():
    with pytest.raises(ValueError):
        VisitMatrix(p=np.array([[0.5, 0.5], [0.6, 0.5]]))  # column sum
    with pytest.raises(ValueError):
        VisitMatrix(p=np.array([[1.2, 0.0], [-0.2, 1.0]]))  # negative entry
    with pytest.raises(ValueError):
        VisitMatrix(p=np.ones((2, 3)) / 2)  # non-square


def test_visit_matrix_json_is_closed_major():
    p = np.array([[0.0, 0.2, 0.7], [0.5, 0.0, 0.3], [0.5, 0.8, 0.0]])
    vm = VisitMatrix(p=p)
    obj = vm.to_json()
    assert '"orientation": "closed-major"' in obj
    back = VisitMatrix.from_json(obj)
    assert_allclose(back.p, p, atol=1e-15)
    # the serialized rows are columns of the in-memory layout
    import json

    rows = np.asarray(json.loads(obj)["p"])
    assert_allclose(rows, p.T, atol=1e-15)
    assert_allclose(vm.marginals(), p.mean(axis=1), atol=1e-15)
    assert_allclose(vm.diagonal(), np.zeros(3), atol=0)


def test_check_game_wins_and_witnesses():
    p = np.array([[0.0, 0.2, 0.7], [0.5, 0.0, 0.3], [0.5, 0.8, 0.0]])
    vm = VisitMatrix(p=p)
    spec = GameSpec(gamma=tuple(p.mean(axis=1)))
    verdict = check_game(spec, vm)
    assert verdict.wins and verdict.witness is None
    assert verdict.max_violation <= 1e-15

    bad = check_game(uniform_game(3), VisitMatrix(p=np.eye(3)))
    assert not bad.wins
    assert bad.max_violation == 1.0
    assert bad.witness == "p(1|1)=1≠0"

    off = check_game(uniform_game(3), vm)  # diag fine, marginals off
    assert not off.wins
    assert off.witness.startswith("marginal(")


def test_check_game_strict_target():
    n = 4
    target = (1.0 - np.eye(n)) / (n - 1)
    assert check_game(strict_game(n), VisitMatrix(p=target)).wins
    skew = target.copy()
    skew[1, 0] += 0.01
    skew[2, 0] -= 0.01
    verdict = check_game(strict_game(n), VisitMatrix(p=skew))
    assert not verdict.wins
    assert "≠" in verdict.witness
    assert_allclose(verdict.max_violation, 0.01, atol=1e-12)


def test_check_game_dimension_mismatch():
    with pytest.raises(ValueError):
        check_game(uniform_game(3), VisitMatrix(p=(1 - np.eye(4)) / 3))


def test_convex_mix_matches_manual_average():
    rng = np.random.default_rng(11)
    mats = []
    for _ in range(3):
        cols = rng.dirichlet(np.ones(4), size=4).T
        mats.append(VisitMatrix(p=cols))
    w = rng.dirichlet(np.ones(3))
    mixed = convex_mix(mats, w)
    manual = sum(wi * m.p for wi, m in zip(w, mats))
    assert_allclose(mixed.p, manual, atol=1e-15)


def test_extreme_points_match_deterministic_wins():
    for n in (3, 4, 5):
        specs = game_space_extreme_points(n)
        pairs = list(itertools.permutations(range(n), 2))
        assert len(specs) == n * (n - 1) == len(pairs)
        for spec, (major, minor) in zip(specs, pairs):
            g = np.asarray(spec.gamma)
            assert_allclose(g[major], (n - 1) / n, atol=1e-12)
            assert_allclose(g[minor], 1 / n, atol=1e-12)
            vm = visit_matrix_deterministic(extreme_game_strategy(n, major, minor))
            assert check_game(spec, vm).wins


def test_shannon_bits():
    assert shannon_bits([0.5, 0.5]) == 1.0
    one_branch = shannon_bits([1.0])
    assert one_branch == 0.0 and not np.signbit(one_branch)
    assert_allclose(shannon_bits([1 / 3] * 3), np.log2(3), atol=1e-12)

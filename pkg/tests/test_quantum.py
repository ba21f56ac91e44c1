"""Bloch-vector qubit strategies, noise, locus synthesis, and the error floor."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from commgames import (
    GameSpec,
    Povm,
    QubitEffect,
    QubitStrategy,
    VisitMatrix,
    apply_noise,
    born_probability,
    check_game,
    error_functional,
    h3_gamma_from_angles,
    h3_locus_points,
    induced_decoding,
    montecarlo_classical_floor,
    noise_advantage_region,
    noise_boundary,
    simulate_orthogonal_encoding,
    simulate_projective_decoding,
    strict_game,
    synth_h3_general,
    synth_h4_symmetric,
    synth_sic_strict,
    synth_uniform_odd,
    uniform_game,
    visit_matrix_mixed,
    visit_matrix_qubit,
)


def random_povm(rng, n):
    t = rng.dirichlet(np.ones(n))
    v = rng.normal(size=(n, 3))
    v -= v.mean(axis=0)
    # one global scale keeps the zero-sum property while meeting every cap
    caps = 0.9 * np.minimum(t, 1.0 - t)
    v *= np.min(caps / np.linalg.norm(v, axis=1))
    return Povm(effects=tuple(QubitEffect(t=float(t[m]), v=v[m]) for m in range(n)))


def random_states(rng, n):
    s = rng.normal(size=(n, 3))
    s /= np.linalg.norm(s, axis=1, keepdims=True)
    return s * rng.uniform(0.0, 1.0, size=(n, 1)) ** (1 / 3)


def test_effect_validation():
    with pytest.raises(ValueError):
        QubitEffect(t=0.2, v=np.array([0.3, 0.0, 0.0]))  # t - |v| < 0
    with pytest.raises(ValueError):
        QubitEffect(t=0.9, v=np.array([0.2, 0.0, 0.0]))  # t + |v| > 1
    e = QubitEffect(t=0.5, v=np.array([0.0, 0.0, 0.5]))
    assert_allclose(born_probability(np.array([0.0, 0.0, 1.0]), e), 1.0, atol=1e-15)
    assert_allclose(born_probability(np.array([0.0, 0.0, -1.0]), e), 0.0, atol=1e-15)


def test_povm_completeness_enforced():
    good = QubitEffect(t=0.5, v=np.array([0.0, 0.0, 0.5]))
    comp = QubitEffect(t=0.5, v=np.array([0.0, 0.0, -0.5]))
    Povm(effects=(good, comp))
    with pytest.raises(ValueError):
        Povm(effects=(good, good))


def test_strategy_json_roundtrip_with_noise():
    s = synth_uniform_odd(3)
    noisy = QubitStrategy(encodings=s.encodings, decoding=s.decoding,
                          noise=(0.1, 0.25))
    back = QubitStrategy.from_json(noisy.to_json())
    assert back.noise == (0.1, 0.25)
    assert_allclose(back.encodings, s.encodings, atol=1e-15)
    assert_allclose(visit_matrix_qubit(back).p, visit_matrix_qubit(noisy).p, atol=1e-15)
    plain = QubitStrategy.from_json(s.to_json())
    assert plain.noise is None


def test_ring_strategies_have_exactly_zero_diagonal():
    for n in (3, 5, 7):
        vm = visit_matrix_qubit(synth_uniform_odd(n))
        assert np.max(np.abs(np.diag(vm.p))) == 0.0
        assert_allclose(vm.marginals(), np.full(n, 1 / n), atol=1e-12)
        assert check_game(uniform_game(n), vm, tol=1e-12).wins
    with pytest.raises(ValueError):
        synth_uniform_odd(4)


def test_sic_strict_tetrahedron():
    s = synth_sic_strict()
    vm = visit_matrix_qubit(s)
    assert np.max(np.abs(np.diag(vm.p))) == 0.0
    off = vm.p[~np.eye(4, dtype=bool)]
    assert_allclose(off, np.full(12, 1 / 3), atol=1e-12)
    weights = [e.t for e in s.decoding.effects]
    vecs = np.array([e.v for e in s.decoding.effects])
    assert abs(sum(weights) - 1.0) < 1e-12
    assert np.max(np.abs(vecs.sum(axis=0))) < 1e-12
    assert check_game(strict_game(4), vm, tol=1e-12).wins


def test_h4_symmetric_pinned_constants():
    s = synth_h4_symmetric(0.4)
    # a weighted antipodal projector alpha*(1 - s.n)/2 has t = alpha/2
    alpha = 2.0 * np.array([e.t for e in s.decoding.effects])
    assert_allclose(alpha[0], 16 / 23, atol=1e-12)
    assert_allclose(alpha[1:], (2 - 16 / 23) / 3, atol=1e-12)
    cos = s.encodings[1] @ s.encodings[0]
    assert_allclose(cos, -8 / 15, atol=1e-12)
    spec = GameSpec(gamma=(0.4, 0.2, 0.2, 0.2))
    assert check_game(spec, visit_matrix_qubit(s), tol=1e-9).wins
    for g1 in (0.1, 0.3, 0.5, 0.7):
        spec = GameSpec(gamma=(g1, (1 - g1) / 3, (1 - g1) / 3, (1 - g1) / 3))
        assert check_game(spec, visit_matrix_qubit(synth_h4_symmetric(g1)), tol=1e-9).wins
    with pytest.raises(ValueError):
        synth_h4_symmetric(0.0)
    with pytest.raises(ValueError):
        synth_h4_symmetric(0.76)


def test_h3_synthesis_hits_random_interior_games():
    rng = np.random.default_rng(71)
    done = 0
    while done < 40:
        g = rng.dirichlet(np.ones(3))
        if g.min() < 0.02 or g.max() > 2 / 3 - 0.02:
            continue
        spec = GameSpec(gamma=tuple(g))
        s = synth_h3_general(spec)
        assert check_game(spec, visit_matrix_qubit(s), tol=1e-9).wins
        done += 1


def test_h3_symmetric_point_reduces_to_the_ring():
    s = synth_h3_general(uniform_game(3))
    vm = visit_matrix_qubit(s)
    assert check_game(uniform_game(3), vm, tol=1e-9).wins
    gram = s.encodings @ s.encodings.T
    assert_allclose(gram[~np.eye(3, dtype=bool)], np.full(6, -0.5), atol=1e-6)


def test_h3_boundary_games_rejected():
    with pytest.raises(ValueError):
        synth_h3_general(GameSpec(gamma=(2 / 3, 1 / 6, 1 / 6)))
    with pytest.raises(ValueError):
        synth_h3_general(GameSpec(gamma=(0.0, 0.5, 0.5)))
    with pytest.raises(ValueError):
        synth_h3_general(uniform_game(4))


def test_h3_locus_points_fields_and_accuracy():
    pts = h3_locus_points(0.4, num=17)
    # the grid is trimmed to the solvable arc, never padded
    assert 8 <= len(pts) <= 17
    for row in pts:
        assert set(row) == {"theta2", "theta3", "gamma2", "gamma3",
                            "mid_x", "mid_z", "residual"}
        assert row["residual"] < 1e-9
        assert_allclose(row["gamma2"] + row["gamma3"], 0.6, atol=1e-9)
        g = h3_gamma_from_angles(row["theta2"], row["theta3"])
        assert_allclose(g[0], 0.4, atol=1e-7)


def test_noise_parameter_equals_baked_in_noise():
    rng = np.random.default_rng(73)
    base = synth_uniform_odd(5)
    for eps_e, eps_d in [(0.0, 0.0), (0.3, 0.0), (0.0, 0.45), (0.2, 0.7),
                         tuple(rng.uniform(0, 1, 2))]:
        on_the_fly = QubitStrategy(encodings=base.encodings, decoding=base.decoding,
                                   noise=(eps_e, eps_d))
        baked = apply_noise(base, eps_e, eps_d)
        assert baked.noise is None
        assert_allclose(visit_matrix_qubit(on_the_fly).p,
                        visit_matrix_qubit(baked).p, atol=1e-14)


def test_noisy_ring_diagonal_law():
    for eps_e in np.linspace(0, 1, 7):
        for eps_d in np.linspace(0, 1, 7):
            noisy = apply_noise(synth_uniform_odd(3), eps_e, eps_d)
            vm = visit_matrix_qubit(noisy)
            b = noise_boundary(eps_e, eps_d)
            assert_allclose(b, eps_e + eps_d - eps_e * eps_d, atol=1e-15)
            assert_allclose(np.diag(vm.p), np.full(3, b / 3), atol=1e-14)
            assert_allclose(vm.marginals(), np.full(3, 1 / 3), atol=1e-14)


def test_noise_advantage_region_rows():
    rows = noise_advantage_region(num=11)
    assert len(rows) == 121
    for eps_e, eps_d, value, advantage in rows:
        assert_allclose(value, noise_boundary(eps_e, eps_d), atol=1e-15)
        assert advantage == (value < 0.5)
    # the advantage region is exactly the area under the boundary curve
    assert sum(adv for *_x, adv in rows) == sum(
        1 for e, d, v, _a in rows if v < 0.5)


def test_orthogonal_encodings_reduce_to_one_bit():
    rng = np.random.default_rng(79)
    for _ in range(80):
        n = int(rng.integers(2, 6))
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        signs = rng.integers(0, 2, size=n) * 2 - 1
        states = np.outer(signs, axis)
        strategy = QubitStrategy(encodings=states, decoding=random_povm(rng, n))
        mixed = simulate_orthogonal_encoding(strategy)
        assert_allclose(visit_matrix_mixed(mixed).p,
                        visit_matrix_qubit(strategy).p, atol=1e-14)
    skew = QubitStrategy(encodings=random_states(rng, 3),
                         decoding=random_povm(rng, 3))
    with pytest.raises(ValueError):
        simulate_orthogonal_encoding(skew)


def test_projective_decodings_reduce_to_one_bit():
    rng = np.random.default_rng(83)
    for _ in range(80):
        n = int(rng.integers(2, 6))
        states = random_states(rng, n)
        t0 = rng.uniform(0.1, 0.9)
        v0 = rng.normal(size=3)
        v0 *= 0.9 * min(t0, 1 - t0) / np.linalg.norm(v0)
        e0 = QubitEffect(t=t0, v=v0)
        e1 = QubitEffect(t=1 - t0, v=-v0)
        post = rng.dirichlet(np.ones(n), size=2)
        mixed = simulate_projective_decoding(states, (e0, e1), post)
        full = QubitStrategy(encodings=states,
                             decoding=induced_decoding((e0, e1), post))
        assert_allclose(visit_matrix_mixed(mixed).p,
                        visit_matrix_qubit(full).p, atol=1e-14)
    bad = (QubitEffect(t=0.5, v=np.zeros(3)), QubitEffect(t=0.4, v=np.zeros(3)))
    with pytest.raises(ValueError):
        simulate_projective_decoding(random_states(rng, 3), bad,
                                     np.full((2, 3), 1 / 3))


def test_error_functional_pinned_values():
    ring = error_functional(visit_matrix_qubit(synth_uniform_odd(3)))
    assert ring.value < 1e-16
    ident = error_functional(VisitMatrix(p=np.eye(3)))
    assert_allclose(ident.value, 1.0, atol=1e-15)
    p = np.array([[0.06, 0.47, 0.47], [0.47, 0.0, 0.53], [0.47, 0.53, 0.0]])
    single = error_functional(VisitMatrix(p=p))
    assert_allclose(single.value, 0.02, atol=1e-15)
    assert_allclose(single.diagonal, (0.06, 0.0, 0.0), atol=1e-15)
    assert_allclose(single.marginal_penalty, (0.0, 0.0, 0.0), atol=1e-15)


def test_montecarlo_floor_small_run():
    res = montecarlo_classical_floor(samples=50_000, seed=0)
    assert_allclose(res.refined_min, 1 / 18, atol=1e-9)
    assert res.min_error == res.refined_min
    assert 0.05 < res.raw_sample_min < 0.15
    again = montecarlo_classical_floor(samples=50_000, seed=0)
    assert again.raw_sample_min == res.raw_sample_min
    assert again.refined_min == res.refined_min
    vm = visit_matrix_mixed(res.strategy)
    assert_allclose(error_functional(vm).value, res.refined_min, atol=1e-9)

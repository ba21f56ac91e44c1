"""Worst-case guessing game: name the closed restaurant, judged on the worst input."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from commgames import (
    classical_worstcase_bound,
    classical_worstcase_strategy,
    quantum_worstcase_strategy,
    sr_worstcase_strategy,
    visit_matrix_correlated,
    visit_matrix_mixed,
    visit_matrix_qubit,
    worst_case_success,
)


def test_classical_achiever_hits_one_half():
    s = classical_worstcase_strategy()
    assert worst_case_success(s) == 0.5
    expected = np.array([[1.0, 0.0, 0.0], [0.0, 0.5, 0.5], [0.0, 0.5, 0.5]])
    assert_allclose(visit_matrix_mixed(s).p, expected, atol=1e-15)


def test_sr_achiever_hits_two_thirds_exactly():
    s = sr_worstcase_strategy()
    assert_allclose(worst_case_success(s), 2 / 3, atol=1e-15)
    vm = visit_matrix_correlated(s)
    assert_allclose(np.diag(vm.p), np.full(3, 2 / 3), atol=1e-15)


def test_quantum_achiever_hits_two_thirds():
    s = quantum_worstcase_strategy()
    assert_allclose(worst_case_success(s), 2 / 3, atol=1e-12)
    vm = visit_matrix_qubit(s)
    assert_allclose(np.diag(vm.p), np.full(3, 2 / 3), atol=1e-12)
    assert_allclose(vm.p[~np.eye(3, dtype=bool)], np.full(6, 1 / 6), atol=1e-12)


def test_numeric_classical_search_respects_the_ceiling():
    res = classical_worstcase_bound(starts=4000, seed=5)
    assert res.bound == 0.5
    assert res.numeric_max <= 0.5 + 1e-9
    assert res.numeric_max >= 0.5 - 1e-4
    again = classical_worstcase_bound(starts=4000, seed=5)
    assert again.numeric_max == res.numeric_max


def test_worst_case_success_rejects_unknown_types():
    with pytest.raises(TypeError):
        worst_case_success(object())

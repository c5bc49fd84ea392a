from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given

from specbound.exceptions import InputError, ParameterError
from specbound.linalg import ComplexMatrix, eigenvalues, operator_norm, singular_values
from specbound.models import (
    ExpClassParams,
    exp_class_matrix,
    exp_class_profile,
    gauge,
    haar_unitary,
    make_rng,
    profile_gauge,
    random_pair,
    trial_seed,
    weighted_shift_pair,
)
from specbound.test.strategies import seeds


def test_weighted_shift_for_two_dimensions() -> None:
    a, b = weighted_shift_pair(2, 0.3)
    assert np.array_equal(a.entries, [[0, 0], [1, 0]])
    assert np.array_equal(b.entries, [[0, 0.3], [1, 0]])


def test_weighted_shift_structure() -> None:
    eps = 0.01
    a, b = weighted_shift_pair(5, eps)
    expected = np.zeros((5, 5))
    expected[1, 0] = 1
    expected[2, 1] = expected[3, 2] = expected[4, 3] = eps
    assert np.array_equal(a.entries, expected)
    expected[0, 4] = eps
    assert np.array_equal(b.entries, expected)

    assert list(eigenvalues(a)) == [0] * 5
    assert operator_norm(a - b) == pytest.approx(eps, rel=1e-15)
    for m in (a, b):
        assert singular_values(m)[0] == pytest.approx(1, rel=1e-15)
    assert singular_values(b)[1] == pytest.approx(eps, rel=1e-12)
    assert singular_values(a)[1] <= singular_values(b)[1] * (1 + 1e-12)


def test_weighted_shift_spectrum_of_b() -> None:
    _, b = weighted_shift_pair(5, 0.01)
    moduli = np.abs(eigenvalues(b).points)
    assert moduli == pytest.approx(np.full(5, 0.01**0.8), rel=1e-10)
    assert moduli[0] == pytest.approx(0.025119, abs=1e-6)


@pytest.mark.parametrize("n, eps", [(1, 0.1), (3, 0.0), (3, 1.0), (3, -0.5), (3, math.nan)])
def test_weighted_shift_rejects_invalid_arguments(n: int, eps: float) -> None:
    with pytest.raises(InputError):
        weighted_shift_pair(n, eps)


def test_random_pair_without_perturbation() -> None:
    a, b = random_pair(4, 9, 0.0)
    assert np.array_equal(a.entries, b.entries)


@pytest.mark.parametrize("delta", [1e-3, 0.1, 2.0])
def test_random_pair_difference_has_norm_delta(delta: float) -> None:
    a, b = random_pair(6, 5, delta)
    assert operator_norm(a - b) == pytest.approx(delta, rel=1e-12)


@given(seeds)
def test_random_pair_is_deterministic(seed: int) -> None:
    first = random_pair(3, seed, 0.1)
    second = random_pair(3, seed, 0.1)
    for x, y in zip(first, second):
        assert x.entries.tobytes() == y.entries.tobytes()


def test_random_pair_entries_lie_in_the_scaled_disk() -> None:
    a, _ = random_pair(9, 1, 0.0)
    assert np.all(np.abs(a.entries) <= 1 / 3)


def test_random_pair_rejects_invalid_arguments() -> None:
    with pytest.raises(InputError):
        random_pair(0, 1, 0.1)
    with pytest.raises(InputError):
        random_pair(2, 1, -0.1)
    with pytest.raises(InputError):
        random_pair(2, -1, 0.1)


def test_trial_seed_is_an_xor() -> None:
    assert trial_seed(42, 0) == 42
    assert trial_seed(42, 42) == 0
    assert trial_seed(0b1010, 0b0110) == 0b1100


def test_haar_unitary_is_unitary() -> None:
    u = haar_unitary(5, make_rng(3)).entries
    assert np.allclose(u.conj().T @ u, np.eye(5), atol=1e-13)


def test_exp_class_matrix_profile() -> None:
    p = ExpClassParams(1.0, 1.0, 1.0)
    m = exp_class_matrix(p, 5, 0)
    assert singular_values(m).values == pytest.approx(np.exp(-np.arange(1, 6)), rel=1e-13)
    assert gauge(m, 1.0, 1.0) == pytest.approx(1.0, rel=1e-12)


def test_exp_class_matrix_of_one_dimension() -> None:
    m = exp_class_matrix(ExpClassParams(0.5, 2.0, 3.0), 1, 4)
    assert singular_values(m)[0] == pytest.approx(3 * math.exp(-0.5), rel=1e-14)


@pytest.mark.parametrize("a, alpha, m", [(0.5, 1.0, 1.0), (1.0, 0.5, 2.0), (0.2, 2.0, 0.1)])
def test_exp_class_matrix_gauge(a: float, alpha: float, m: float) -> None:
    p = ExpClassParams(a, alpha, m)
    matrix = exp_class_matrix(p, 8, 11)
    s = singular_values(matrix).values
    assert np.all(np.diff(s) < 0)
    assert s == pytest.approx(p.envelope(8), rel=1e-12)
    assert gauge(matrix, a, alpha) == pytest.approx(m, rel=1e-12)


def test_exp_class_profile_has_certified_tail() -> None:
    p = ExpClassParams(1.0, 1.0, 1.0)
    profile = exp_class_profile(p, 5)
    assert profile.values == pytest.approx(np.exp(-np.arange(1, 6)), rel=1e-15)
    rest = float(np.sum(np.exp(-np.arange(6, 200))))
    # The integral from 5 bounds the sum from 6.
    assert profile.tail_sum == pytest.approx(math.exp(-5), rel=1e-12)
    assert profile.tail_sum >= rest
    assert profile_gauge(profile, 1.0, 1.0) == pytest.approx(1.0, rel=1e-14)


def test_gauge_examples() -> None:
    assert gauge(ComplexMatrix.zeros(3), 1.0, 1.0) == 0
    s = np.exp(-np.arange(1, 5))
    assert gauge(ComplexMatrix.diag(s), 1.0, 1.0) == pytest.approx(1.0, rel=1e-14)
    assert gauge(ComplexMatrix.diag([0.5, 0.0]), 1.0, 1.0) == pytest.approx(0.5 * math.e)
    with pytest.raises(ParameterError):
        gauge(ComplexMatrix.zeros(2), 0.0, 1.0)


@pytest.mark.parametrize("a, alpha, m", [(0.0, 1.0, 1.0), (1.0, -1.0, 1.0), (1.0, 1.0, math.inf)])
def test_exp_class_params_validation(a: float, alpha: float, m: float) -> None:
    with pytest.raises(ParameterError):
        ExpClassParams(a, alpha, m)


def test_gauge_of_large_matrix_is_only_bounded_below() -> None:
    p = ExpClassParams(1.0, 1.0, 1.0)
    matrix = exp_class_matrix(p, 40, 7)
    # Round-off in the trailing singular values inflates the weighted maximum.
    assert gauge(matrix, 1.0, 1.0) >= 1.0 - 1e-12
    assert profile_gauge(exp_class_profile(p, 40), 1.0, 1.0) == pytest.approx(
        1.0, rel=1e-12
    )

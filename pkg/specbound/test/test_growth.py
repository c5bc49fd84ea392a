from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings

from specbound.exceptions import DomainError, InputError, ParameterError
from specbound.growth import (
    ExpClass,
    ExpLinear,
    GrowthFunction,
    Max,
    PowerOnePlus,
    Profile,
    Scaled,
    TwoSingular,
    combine_max,
    from_matrix,
    from_profile,
    log_eval,
    log_eval_interval,
    scale,
)
from specbound.linalg import ComplexMatrix, SingularProfile, eigenvalues, trace_norm
from specbound.models import weighted_shift_pair
from specbound.test.strategies import random_matrices

LOG_R_GRID = np.linspace(math.log(1e-12), math.log(1e12), 97)

FAMILY: list[GrowthFunction] = [
    Profile(SingularProfile.from_values([0.5, 0.25])),
    Profile(SingularProfile.from_values([2.0], tail_sum=0.1)),
    ExpLinear(),
    ExpClass(1.0, 1.0),
    ExpClass(0.5, 2.0),
    PowerOnePlus(3),
    TwoSingular(2.0, 0.5, 5),
    TwoSingular(1.0, 0.0, 4),
    Scaled(PowerOnePlus(2), 3.0),
    Max(ExpLinear(), PowerOnePlus(3)),
]


@pytest.mark.parametrize(
    "f, r, expected",
    [
        (from_profile(SingularProfile.from_values([0.5, 0.25])), 2.0, math.log(3)),
        (ExpLinear(), 1.0, 1.0),
        (PowerOnePlus(2), 1.0, math.log(4)),
        (TwoSingular(2.0, 0.5, 3), 1.0, math.log(3 * 1.5**2)),
        (from_matrix(ComplexMatrix.diag([1])), 4.0, math.log(5)),
    ],
)
def test_log_eval_examples(f: GrowthFunction, r: float, expected: float) -> None:
    assert log_eval(f, math.log(r)) == pytest.approx(expected, rel=1e-14)


def test_from_matrix_of_weighted_shift() -> None:
    a, _ = weighted_shift_pair(4, 0.1)
    f = from_matrix(a)
    for r in (0.5, 3.0, 70.0):
        expected = math.log((1 + r) * (1 + 0.1 * r) ** 2)
        assert f.log_eval(math.log(r)) == pytest.approx(expected, rel=1e-13)


def test_value_at_zero_is_one() -> None:
    for f in FAMILY:
        assert f.value(0) == 1
        assert log_eval_interval(f, -math.inf) == (0.0, 0.0)


def test_value_rejects_negative_arguments() -> None:
    with pytest.raises(InputError):
        ExpLinear().value(-1)
    with pytest.raises(InputError):
        ExpLinear().log_eval(math.nan)


def test_value_overflows_to_inf() -> None:
    assert ExpLinear().value(1e3) == math.inf
    assert ExpLinear().log_eval(math.inf) == math.inf


def test_zero_matrix_is_degenerate() -> None:
    f = from_matrix(ComplexMatrix.zeros(3))
    assert f.degenerate
    assert f.log_eval(math.log(1e6)) == 0
    with pytest.raises(DomainError):
        f.log_eval(math.inf)
    assert Max(f, f).degenerate
    assert not Max(f, ExpLinear()).degenerate
    assert Scaled(f, 2.0).degenerate


@pytest.mark.parametrize("f", FAMILY, ids=repr)
def test_strictly_increasing(f: GrowthFunction) -> None:
    values = [f.log_eval(x) for x in LOG_R_GRID]
    assert all(b > a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("f", FAMILY, ids=repr)
def test_interval_is_ordered(f: GrowthFunction) -> None:
    for x in LOG_R_GRID[::8]:
        lower, upper = f.log_eval_interval(x)
        assert lower <= upper
        assert f.log_eval(x) == upper


def test_profile_tail_is_added_to_upper_value() -> None:
    f = Profile(SingularProfile.from_values([1.0], tail_sum=0.5))
    lower, upper = f.log_eval_interval(math.log(2.0))
    assert lower == pytest.approx(math.log(3))
    assert upper == pytest.approx(math.log(3) + 1.0)


def test_combine_max_examples() -> None:
    f = PowerOnePlus(3)
    assert combine_max(f, f).log_eval(1.3) == f.log_eval(1.3)

    larger = from_profile(SingularProfile.from_values([2.0]))
    smaller = from_profile(SingularProfile.from_values([1.0]))
    for x in LOG_R_GRID[::8]:
        assert combine_max(larger, smaller).log_eval(x) == larger.log_eval(x)

    assert combine_max(ExpLinear(), PowerOnePlus(3)).log_eval(math.log(10)) == (
        pytest.approx(10.0)
    )


def test_scale_examples() -> None:
    f = PowerOnePlus(2)
    for x in LOG_R_GRID[::8]:
        assert scale(f, 1.0).log_eval(x) == f.log_eval(x)
    assert scale(ExpLinear(), 3.0).log_eval(math.log(2)) == pytest.approx(6.0)

    profile = SingularProfile.from_values([0.7, 0.2, 0.05])
    scaled = scale(from_profile(profile), 4.0)
    direct = from_profile(profile.scaled(4.0))
    for x in LOG_R_GRID:
        assert scaled.log_eval(x) == pytest.approx(direct.log_eval(x), rel=1e-12)


@pytest.mark.parametrize(
    "make",
    [
        lambda: ExpClass(0.0, 1.0),
        lambda: ExpClass(1.0, -1.0),
        lambda: ExpClass(1.0, 1.0, cutoff=2.0),
        lambda: PowerOnePlus(0),
        lambda: TwoSingular(0.0, 1.0, 2),
        lambda: TwoSingular(1.0, -1.0, 2),
        lambda: Scaled(ExpLinear(), 0.0),
    ],
)
def test_invalid_parameters(make: object) -> None:
    with pytest.raises(ParameterError):
        make()  # type: ignore[operator]


def test_exp_class_truncation_is_stable() -> None:
    coarse = ExpClass(1.0, 1.0, cutoff=1e-18)
    fine = ExpClass(1.0, 1.0, cutoff=1e-36)
    for r in (1e-3, 1.0, 1e3, 1e6):
        assert coarse.log_eval(math.log(r)) == pytest.approx(
            fine.log_eval(math.log(r)), rel=1e-12, abs=1e-12
        )


def test_exp_class_matches_direct_product() -> None:
    f = ExpClass(1.0, 1.0)
    r = 50.0
    k = np.arange(1, 200)
    direct = float(np.sum(np.log1p(r * np.exp(-k))))
    lower, upper = f.log_eval_interval(math.log(r))
    assert lower <= direct + 1e-13
    assert upper >= direct - 1e-13
    assert upper == pytest.approx(direct, rel=1e-14)


def test_exp_class_far_beyond_double_range() -> None:
    f = ExpClass(1.0, 1.0)
    value = f.log_eval(math.log(1e80))
    assert math.isfinite(value)
    # log G(r) ~ (log r)^2 / 2 for a = alpha = 1
    assert value / math.log(1e80) ** 2 == pytest.approx(0.5, rel=0.05)


@settings(deadline=None, max_examples=40)
@given(random_matrices())
def test_profile_is_bounded_by_trace_norm(m: ComplexMatrix) -> None:
    f = from_matrix(m)
    norm = trace_norm(m)
    for r in (1e-3, 0.1, 1.0, 10.0, 1e3):
        assert f.log_eval(math.log(r)) <= r * norm * (1 + 1e-12)


@settings(deadline=None, max_examples=40)
@given(random_matrices())
def test_eigenvalue_product_is_dominated(m: ComplexMatrix) -> None:
    f = from_matrix(m)
    moduli = np.abs(eigenvalues(m).points)
    for r in (1e-3, 0.1, 1.0, 10.0, 1e3):
        eigen_value = float(np.sum(np.log1p(r * moduli)))
        assert eigen_value <= f.log_eval(math.log(r)) * (1 + 1e-10) + 1e-12

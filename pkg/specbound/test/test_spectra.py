from __future__ import annotations

import pytest
from hypothesis import given

from specbound.exceptions import InputError
from specbound.linalg import eigenvalues
from specbound.models import weighted_shift_pair
from specbound.spectra import (
    SpectrumSet,
    adjoin_zero,
    directed_hausdorff,
    hausdorff,
    point_distance,
)
from specbound.test.strategies import spectrum_sets


def S(*points: complex) -> SpectrumSet:
    return SpectrumSet.from_points(points)


def test_spectrum_set_must_be_nonempty() -> None:
    with pytest.raises(InputError):
        S()


def test_spectrum_set_keeps_multiplicity() -> None:
    s = S(1, 1, 2j)
    assert len(s) == 3
    assert len(s.distinct()) == 2
    assert 2j in s
    assert 3 not in s
    assert "1" not in s


@pytest.mark.parametrize(
    "z, s, expected",
    [
        (0, S(3, 4j), 3),
        (4j, S(3, 4j), 0),
        (1, S(0, 2 + 2j), 1),
    ],
)
def test_point_distance(z: complex, s: SpectrumSet, expected: float) -> None:
    assert point_distance(z, s) == expected


@pytest.mark.parametrize(
    "s1, s2, expected",
    [
        (S(0, 1), S(0), 1),
        (S(0), S(0, 1), 0),
        (S(0), S(3, 4), 3),
    ],
)
def test_directed_hausdorff(s1: SpectrumSet, s2: SpectrumSet, expected: float) -> None:
    assert directed_hausdorff(s1, s2) == expected


def test_hausdorff_examples() -> None:
    assert hausdorff(S(1, 2j), S(2j, 1, 1)) == 0
    assert hausdorff(S(0), S(3, 4)) == 4


def test_hausdorff_of_shift_spectra() -> None:
    a, b = weighted_shift_pair(4, 0.01)
    distance = hausdorff(adjoin_zero(eigenvalues(a)), adjoin_zero(eigenvalues(b)))
    assert distance == pytest.approx(0.01**0.75, rel=1e-10)


@pytest.mark.parametrize(
    "s, expected",
    [
        (S(1), [1, 0]),
        (S(0, 1), [0, 1]),
        (S(1j), [1j, 0]),
    ],
)
def test_adjoin_zero(s: SpectrumSet, expected: list[complex]) -> None:
    assert list(adjoin_zero(s)) == expected


@given(spectrum_sets, spectrum_sets)
def test_hausdorff_is_symmetric(s1: SpectrumSet, s2: SpectrumSet) -> None:
    assert hausdorff(s1, s2) == hausdorff(s2, s1)
    assert hausdorff(s1, s2) >= max(directed_hausdorff(s1, s2), 0)


@given(spectrum_sets, spectrum_sets, spectrum_sets)
def test_hausdorff_triangle_inequality(
    s1: SpectrumSet, s2: SpectrumSet, s3: SpectrumSet
) -> None:
    assert hausdorff(s1, s3) <= hausdorff(s1, s2) + hausdorff(s2, s3) + 1e-12 * 20


@given(spectrum_sets)
def test_hausdorff_vanishes_on_equal_point_sets(s: SpectrumSet) -> None:
    assert hausdorff(s, s) == 0
    assert hausdorff(s, s.distinct()) == 0

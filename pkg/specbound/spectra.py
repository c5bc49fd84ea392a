"""
Finite spectra and the Hausdorff metric on compact subsets of the plane.

Distances ignore multiplicities: a :class:`SpectrumSet` keeps every
eigenvalue it was built from (for reporting), but the metric only sees the
underlying point set.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np
import numpy.typing as npt

from specbound.exceptions import InputError

__all__ = [
    "SpectrumSet",
    "point_distance",
    "directed_hausdorff",
    "hausdorff",
    "adjoin_zero",
]


@dataclass(frozen=True, eq=False)
class SpectrumSet:
    """A nonempty finite multiset of complex numbers."""

    points: npt.NDArray[np.complex128]

    def __post_init__(self) -> None:
        points = np.array(self.points, dtype=np.complex128).reshape(-1)
        if points.size == 0:
            raise InputError("a spectrum set must contain at least one point")
        if not np.all(np.isfinite(points)):
            raise InputError("spectrum points must be finite")
        points.flags.writeable = False
        object.__setattr__(self, "points", points)

    @classmethod
    def from_points(cls, points: Iterable[complex]) -> SpectrumSet:
        return cls(np.fromiter(points, dtype=np.complex128))

    def __len__(self) -> int:
        return int(self.points.size)

    def __iter__(self) -> Iterator[complex]:
        return (complex(p) for p in self.points)

    def __contains__(self, z: object) -> bool:
        if not isinstance(z, (int, float, complex)):
            return False
        return bool(np.any(self.points == complex(z)))

    def distinct(self) -> SpectrumSet:
        return SpectrumSet(np.unique(self.points))

    def __repr__(self) -> str:
        return f"SpectrumSet({[complex(p) for p in self.points]!r})"


def _distance_matrix(
    s1: SpectrumSet, s2: SpectrumSet
) -> npt.NDArray[np.float64]:
    return np.abs(np.subtract.outer(s1.points, s2.points))


def point_distance(z: complex, s: SpectrumSet) -> float:
    """``d(z, S) = min |z - lambda|`` over the points of ``s``."""
    return float(np.min(np.abs(s.points - complex(z))))


def directed_hausdorff(s1: SpectrumSet, s2: SpectrumSet) -> float:
    """``sup_{l in s1} d(l, s2)``; not symmetric."""
    return float(np.max(np.min(_distance_matrix(s1, s2), axis=1)))


def hausdorff(s1: SpectrumSet, s2: SpectrumSet) -> float:
    distances = _distance_matrix(s1, s2)
    return float(
        max(np.max(np.min(distances, axis=1)), np.max(np.min(distances, axis=0)))
    )


def adjoin_zero(s: SpectrumSet) -> SpectrumSet:
    if 0 in s:
        return s
    return SpectrumSet(np.append(s.points, 0j))

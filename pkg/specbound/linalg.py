"""
Dense complex matrix primitives: eigenvalues, singular values, norms and
best low-rank (Schmidt) truncation.

Eigenvalue and singular value computations are delegated to LAPACK through
:mod:`scipy.linalg`; nothing here is certified beyond the backward error of
those routines.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
import numpy.typing as npt
import scipy.linalg

from specbound.constants import SLACK_TOL, SUBNORMAL_FLOOR, WEYL_RADII
from specbound.exceptions import InputError
from specbound.report import BoundReport
from specbound.spectra import SpectrumSet

__all__ = [
    "ComplexMatrix",
    "SingularProfile",
    "eigenvalues",
    "singular_values",
    "operator_norm",
    "trace_norm",
    "schmidt_truncate",
    "log_abs_det",
    "weyl_checks",
]

logger = logging.getLogger(__name__)

MatrixLike = Union["ComplexMatrix", npt.ArrayLike]


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    """A dense, square, finite complex matrix. Immutable."""

    entries: npt.NDArray[np.complex128]

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=np.complex128)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise InputError(f"matrix must be square, got shape {entries.shape}")
        if entries.shape[0] < 1:
            raise InputError("matrix dimension must be at least 1")
        if not np.all(np.isfinite(entries)):
            raise InputError("matrix entries must be finite (no NaN/Inf)")
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @classmethod
    def coerce(cls, value: MatrixLike) -> ComplexMatrix:
        if isinstance(value, ComplexMatrix):
            return value
        return cls(np.asarray(value))

    @classmethod
    def zeros(cls, dim: int) -> ComplexMatrix:
        return cls(np.zeros((dim, dim), dtype=np.complex128))

    @classmethod
    def diag(cls, values: Sequence[complex]) -> ComplexMatrix:
        return cls(np.diag(np.asarray(values, dtype=np.complex128)))

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    def is_zero(self) -> bool:
        return not np.any(self.entries)

    def __add__(self, other: ComplexMatrix) -> ComplexMatrix:
        return ComplexMatrix(self.entries + other.entries)

    def __sub__(self, other: ComplexMatrix) -> ComplexMatrix:
        return ComplexMatrix(self.entries - other.entries)

    def __mul__(self, scalar: complex) -> ComplexMatrix:
        return ComplexMatrix(self.entries * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other: ComplexMatrix) -> ComplexMatrix:
        return ComplexMatrix(self.entries @ other.entries)

    def __repr__(self) -> str:
        return f"ComplexMatrix(dim={self.dim})"


@dataclass(frozen=True, eq=False)
class SingularProfile:
    """
    A nonincreasing sequence of nonnegative reals ``s_1 >= s_2 >= ...``,
    optionally followed by an unstored tail whose sum is bounded above by
    ``tail_sum``. Profiles computed from matrices are exact (``tail_sum``
    is 0).
    """

    values: npt.NDArray[np.float64]
    tail_sum: float = 0.0

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise InputError("singular values must be finite")
        values[np.abs(values) < SUBNORMAL_FLOOR] = 0.0
        if np.any(values < 0):
            raise InputError("singular values must be nonnegative")
        if np.any(np.diff(values) > 0):
            raise InputError("singular values must be sorted nonincreasing")
        tail_sum = float(self.tail_sum)
        if not (tail_sum >= 0 and np.isfinite(tail_sum)):
            raise InputError(f"tail_sum must be finite and >= 0, got {tail_sum!r}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "tail_sum", tail_sum)

    @classmethod
    def from_values(
        cls, values: npt.ArrayLike, tail_sum: float = 0.0
    ) -> SingularProfile:
        return cls(np.asarray(values, dtype=np.float64), tail_sum)

    def __len__(self) -> int:
        return int(self.values.size)

    def __getitem__(self, k: int) -> float:
        """``s_{k+1}``; zero beyond the stored values."""
        if k < 0:
            raise IndexError(k)
        return float(self.values[k]) if k < self.values.size else 0.0

    @property
    def exact(self) -> bool:
        return self.tail_sum == 0.0

    def is_zero(self) -> bool:
        return self.tail_sum == 0.0 and not np.any(self.values)

    def total(self) -> float:
        """An upper bound for the trace norm; exact when ``exact``."""
        return float(np.sum(self.values)) + self.tail_sum

    def rank(self) -> int:
        """Numerical rank: values above ``n * eps * s_1``."""
        if self.values.size == 0 or self.values[0] == 0:
            return 0
        floor = self.values.size * np.finfo(np.float64).eps * self.values[0]
        return int(np.count_nonzero(self.values > floor))

    def scaled(self, m: float) -> SingularProfile:
        return SingularProfile(self.values * m, self.tail_sum * m)

    def __repr__(self) -> str:
        return f"SingularProfile({self.values.tolist()!r}, tail_sum={self.tail_sum!r})"


def eigenvalues(m: MatrixLike) -> SpectrumSet:
    """
    All eigenvalues with algebraic multiplicity, ordered by nonincreasing
    modulus, ties broken by nondecreasing argument in ``(-pi, pi]``.
    """
    matrix = ComplexMatrix.coerce(m)
    entries = matrix.entries
    if not np.any(np.triu(entries, 1)) or not np.any(np.tril(entries, -1)):
        # Triangular: the diagonal is the spectrum, exactly.
        values = np.diag(entries).copy()
    else:
        values = scipy.linalg.eigvals(entries, check_finite=False)
    arg = np.angle(values)
    arg[arg == -np.pi] = np.pi
    order = np.lexsort((arg, -np.abs(values)))
    return SpectrumSet(values[order])


def singular_values(m: MatrixLike) -> SingularProfile:
    matrix = ComplexMatrix.coerce(m)
    values = scipy.linalg.svdvals(matrix.entries, check_finite=False)
    return SingularProfile(np.maximum(values, 0.0))


def operator_norm(m: MatrixLike) -> float:
    return singular_values(m)[0]


def trace_norm(m: MatrixLike) -> float:
    return singular_values(m).total()


def schmidt_truncate(m: MatrixLike, k: int) -> ComplexMatrix:
    """
    The best rank-``k`` approximation of ``m`` in operator norm: the first
    ``k`` terms of its Schmidt (SVD) expansion. ``k = dim`` keeps every term
    and returns ``m`` itself.
    """
    matrix = ComplexMatrix.coerce(m)
    if not 0 <= k <= matrix.dim:
        raise InputError(f"truncation rank must be in [0, {matrix.dim}], got {k}")
    if k == matrix.dim:
        return matrix
    if k == 0:
        return ComplexMatrix.zeros(matrix.dim)
    u, s, vh = scipy.linalg.svd(matrix.entries, full_matrices=False, check_finite=False)
    return ComplexMatrix((u[:, :k] * s[:k]) @ vh[:k])


def log_abs_det(m: MatrixLike) -> float:
    """``log |det m|`` from an LU factorisation, independent of the SVD."""
    matrix = ComplexMatrix.coerce(m)
    _, logabsdet = np.linalg.slogdet(matrix.entries)
    return float(logabsdet)


def _worst(
    name: str,
    lhs: npt.NDArray[np.float64],
    rhs: npt.NDArray[np.float64],
    *,
    log_domain: bool,
    tol: float,
    inputs: dict[str, object],
) -> BoundReport:
    reports = [
        BoundReport.compare(
            name,
            float(rhs[i]),
            float(lhs[i]),
            inputs={**inputs, "m": i + 1},
            tol=tol,
            log_domain=log_domain,
        )
        for i in range(lhs.size)
    ]
    failing = [r for r in reports if not r.passed]
    if failing:
        return failing[0]
    return min(reports, key=lambda r: r.slack)


def weyl_checks(
    m: MatrixLike, rs: Sequence[float] = WEYL_RADII, tol: float = SLACK_TOL
) -> list[BoundReport]:
    """
    Check the Weyl inequalities between eigenvalue moduli and singular
    values of ``m`` for every prefix length: multiplicative, additive, the
    ``prod(1 + r|l_k|) <= prod(1 + r s_k)`` form for each ``r`` in ``rs``,
    and equality of the full products (``|det m| = prod s_k``).
    """
    matrix = ComplexMatrix.coerce(m)
    moduli = np.abs(eigenvalues(matrix).points)
    s = singular_values(matrix).values
    n = matrix.dim
    reports = []

    # max(log x, log c) is increasing and convex, so the clamp keeps the
    # log-majorisation intact while hiding rounding noise near zero.
    floor = n * np.finfo(np.float64).eps * max(float(s[0]), SUBNORMAL_FLOOR)
    reports.append(
        _worst(
            "weyl_multiplicative",
            np.cumsum(np.log(np.maximum(moduli, floor))),
            np.cumsum(np.log(np.maximum(s, floor))),
            log_domain=True,
            tol=tol,
            inputs={"dim": n},
        )
    )
    reports.append(
        _worst(
            "weyl_additive",
            np.cumsum(moduli),
            np.cumsum(s),
            log_domain=False,
            tol=tol,
            inputs={"dim": n},
        )
    )
    for r in rs:
        reports.append(
            _worst(
                f"weyl_product_r={r:g}",
                np.cumsum(np.log1p(r * moduli)),
                np.cumsum(np.log1p(r * s)),
                log_domain=True,
                tol=tol,
                inputs={"dim": n, "r": r},
            )
        )

    if s[-1] <= floor:
        reports.append(
            BoundReport.inapplicable(
                "weyl_det_equality", "matrix is numerically singular", {"dim": n}
            )
        )
    else:
        lhs = log_abs_det(matrix)
        rhs = float(np.sum(np.log(s)))
        gap = abs(lhs - rhs)
        reports.append(
            BoundReport(
                bound_name="weyl_det_equality",
                inputs={"dim": n},
                bound_value=rhs,
                measured_distance=lhs,
                slack=-gap,
                passed=bool(gap <= tol * max(1.0, abs(rhs))),
                log_domain=True,
            )
        )
    return reports

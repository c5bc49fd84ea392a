"""
Perturbation determinants ``det(I - z^-1 A)`` and the inequalities that
bound them through the singular values of ``A``.

Determinants are formed from eigenvalues, as the product
``prod_k (1 - lambda_k / z)``; :func:`det_perturbation_lu` computes the same
value from an LU factorisation for cross-checking. The checks compare
logarithms so that the slack stays meaningful when a determinant
underflows.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import numpy.typing as npt
import scipy.linalg

from specbound.constants import SLACK_TOL, SPECTRUM_DISTANCE_FLOOR, Z_MODULUS_FLOOR
from specbound.exceptions import DimensionMismatchError, InputError, PreconditionError
from specbound.growth import from_matrix
from specbound.linalg import (
    ComplexMatrix,
    MatrixLike,
    eigenvalues,
    operator_norm,
    schmidt_truncate,
    singular_values,
    trace_norm,
)
from specbound.report import BoundReport
from specbound.spectra import SpectrumSet, adjoin_zero, point_distance

__all__ = [
    "TruncationRow",
    "det_perturbation",
    "det_perturbation_lu",
    "log_abs_det_perturbation",
    "lower_bound_check",
    "upper_bound_check",
    "truncation_study",
    "determinant_chain",
]

logger = logging.getLogger(__name__)


def _require_nonzero(z: complex) -> complex:
    z = complex(z)
    if z == 0:
        raise InputError("z must be nonzero")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InputError(f"z must be finite, got {z!r}")
    return z


def _factors(spectrum: SpectrumSet, z: complex) -> npt.NDArray[np.complex128]:
    return 1.0 - spectrum.points / z


def det_perturbation(a: MatrixLike, z: complex) -> complex:
    """``det(I - z^-1 A) = prod_k (1 - lambda_k(A) / z)``."""
    z = _require_nonzero(z)
    return complex(np.prod(_factors(eigenvalues(a), z)))


def det_perturbation_lu(a: MatrixLike, z: complex) -> complex:
    z = _require_nonzero(z)
    matrix = ComplexMatrix.coerce(a)
    identity = np.eye(matrix.dim, dtype=np.complex128)
    return complex(scipy.linalg.det(identity - matrix.entries / z, check_finite=False))


def _log_abs_prod(spectrum: SpectrumSet, z: complex) -> float:
    with np.errstate(divide="ignore"):
        return float(np.sum(np.log(np.abs(_factors(spectrum, z)))))


def log_abs_det_perturbation(a: MatrixLike, z: complex) -> float:
    """``log |det(I - z^-1 A)|`` as a sum of logs; ``-inf`` on the spectrum."""
    return _log_abs_prod(eigenvalues(a), _require_nonzero(z))


def lower_bound_check(a: MatrixLike, z: complex, tol: float = SLACK_TOL) -> BoundReport:
    """
    ``|det(I - z^-1 A)|^-1 <= F_A(1 / d(z, sigma(A)))`` for ``z`` in the
    resolvent set, compared as ``-log|det| <= log F_A(1/d)``.
    """
    z = _require_nonzero(z)
    matrix = ComplexMatrix.coerce(a)
    spectrum = eigenvalues(matrix)
    distance = point_distance(z, spectrum)
    if distance <= SPECTRUM_DISTANCE_FLOOR:
        raise PreconditionError.from_distance(z, distance, SPECTRUM_DISTANCE_FLOOR)

    lhs = -_log_abs_prod(spectrum, z)
    rhs = from_matrix(matrix).log_eval(-math.log(distance))
    return BoundReport.compare(
        "det_lower",
        rhs,
        lhs,
        inputs={"dim": matrix.dim, "z": z, "d": distance},
        tol=tol,
        log_domain=True,
    )


def upper_bound_check(
    a: MatrixLike, b: MatrixLike, tol: float = SLACK_TOL
) -> list[BoundReport]:
    """
    For every nonzero eigenvalue ``z`` of ``B`` outside ``sigma(A)``:

        |det(I - z^-1 A)| <= ||A - B|| / d * prod_k (1 + s_k(A) / d)

    with ``d = d(z, sigma(A) u {0})``. The product is recorded three ways:
    over the ``n - 1`` largest singular values (``det_upper_leading``), over
    all of them (``det_upper_full``) and over the numerical rank of ``A``
    (``det_upper_rank``). Points with ``|z| <= 1e-10`` or ``d <= 1e-8`` are
    skipped.
    """
    ma = ComplexMatrix.coerce(a)
    mb = ComplexMatrix.coerce(b)
    if ma.dim != mb.dim:
        raise DimensionMismatchError.from_matrices(ma, mb, "upper_bound_check")

    spectrum_a = eigenvalues(ma)
    with_zero = adjoin_zero(spectrum_a)
    profile = singular_values(ma)
    s = profile.values
    rank = profile.rank()
    difference = operator_norm(ma - mb)
    log_difference = math.log(difference) if difference > 0 else -math.inf

    reports: list[BoundReport] = []
    for z in eigenvalues(mb).distinct():
        if abs(z) <= Z_MODULUS_FLOOR:
            continue
        d0 = point_distance(z, with_zero)
        if d0 <= SPECTRUM_DISTANCE_FLOOR:
            logger.debug("upper_bound_check: skipping z=%s, d=%g", z, d0)
            continue
        lhs = _log_abs_prod(spectrum_a, z)
        log_terms = np.log1p(s / d0)
        base = log_difference - math.log(d0)
        inputs = {"dim": ma.dim, "z": z, "d": d0}
        for name, count in (
            ("det_upper_leading", ma.dim - 1),
            ("det_upper_full", ma.dim),
            ("det_upper_rank", rank),
        ):
            reports.append(
                BoundReport.compare(
                    name,
                    base + float(np.sum(log_terms[:count])),
                    lhs,
                    inputs=inputs,
                    tol=tol,
                    log_domain=True,
                )
            )
    return reports


@dataclass(frozen=True)
class TruncationRow:
    k: int
    trace_gap: float
    det_gap: float
    distance_gap: float


def truncation_study(a: MatrixLike, z: complex, ks: Sequence[int]) -> list[TruncationRow]:
    """
    How fast the rank-``k`` Schmidt truncations ``A_k`` recover ``A``:
    ``||A_k - A||_1``, the change of ``det(I - z^-1 A)`` and the change of
    ``d(z, sigma)``, one row per ``k``.
    """
    z = _require_nonzero(z)
    matrix = ComplexMatrix.coerce(a)
    spectrum = eigenvalues(matrix)
    distance = point_distance(z, spectrum)
    if distance <= SPECTRUM_DISTANCE_FLOOR:
        raise PreconditionError.from_distance(z, distance, SPECTRUM_DISTANCE_FLOOR)
    det = complex(np.prod(_factors(spectrum, z)))

    rows = []
    for k in ks:
        truncated = schmidt_truncate(matrix, k)
        truncated_spectrum = eigenvalues(truncated)
        rows.append(
            TruncationRow(
                k=k,
                trace_gap=trace_norm(truncated - matrix),
                det_gap=abs(complex(np.prod(_factors(truncated_spectrum, z))) - det),
                distance_gap=abs(point_distance(z, truncated_spectrum) - distance),
            )
        )
    return rows


def determinant_chain(a: MatrixLike, tol: float = SLACK_TOL) -> list[BoundReport]:
    """
    The chain ``|det(I - A)| <= prod(1 + |lambda_k|) <= prod(1 + s_k)
    <= exp(||A||_1)``, one log-domain report per link.
    """
    matrix = ComplexMatrix.coerce(a)
    moduli = np.abs(eigenvalues(matrix).points)
    profile = singular_values(matrix)
    links = [
        log_abs_det_perturbation(matrix, 1.0),
        float(np.sum(np.log1p(moduli))),
        float(np.sum(np.log1p(profile.values))),
        profile.total(),
    ]
    names = ("det_chain_eigen", "det_chain_weyl", "det_chain_trace")
    return [
        BoundReport.compare(
            name,
            links[i + 1],
            links[i],
            inputs={"dim": matrix.dim},
            tol=tol,
            log_domain=True,
        )
        for i, name in enumerate(names)
    ]

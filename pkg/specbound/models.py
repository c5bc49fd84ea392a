"""
Test-instance generators: the weighted shift pair, seeded random pairs and
synthetic exponential-class operators.

Every random stream is a :class:`numpy.random.Generator` over the
counter-based Philox bit generator keyed by an explicit integer seed, so a
given ``(n, seed, ...)`` always produces bitwise identical matrices,
whichever process builds them.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
import scipy.linalg

from specbound.exceptions import InputError, ParameterError
from specbound.growth import ExpClass
from specbound.linalg import ComplexMatrix, MatrixLike, SingularProfile, singular_values

__all__ = [
    "ExpClassParams",
    "make_rng",
    "trial_seed",
    "weighted_shift_pair",
    "random_pair",
    "haar_unitary",
    "exp_class_matrix",
    "exp_class_profile",
    "gauge",
    "profile_gauge",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExpClassParams:
    """Singular values bounded by ``m * exp(-a k^alpha)``."""

    a: float
    alpha: float
    m: float = 1.0

    def __post_init__(self) -> None:
        for name in ("a", "alpha", "m"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ParameterError(f"{name} must be finite and > 0, got {value!r}")

    def envelope(self, count: int) -> npt.NDArray[np.float64]:
        k = np.arange(1, count + 1, dtype=np.float64)
        return self.m * np.exp(-self.a * k**self.alpha)


def make_rng(seed: int) -> np.random.Generator:
    if seed < 0:
        raise InputError(f"seeds must be nonnegative, got {seed}")
    return np.random.Generator(np.random.Philox(seed))


def trial_seed(seed: int, key: int) -> int:
    """Per-trial stream seed: the base seed xor the trial key."""
    return seed ^ key


def weighted_shift_pair(n: int, eps: float) -> tuple[ComplexMatrix, ComplexMatrix]:
    """
    ``A e_1 = e_2``, ``A e_k = eps e_{k+1}`` (1 < k < n), ``A e_n = 0``;
    ``B`` agrees with ``A`` except ``B e_n = eps e_1``.
    """
    if n < 2:
        raise InputError(f"the weighted shift needs n >= 2, got {n}")
    if not 0 < eps < 1:
        raise InputError(f"eps must be in (0, 1), got {eps!r}")
    a = np.zeros((n, n), dtype=np.complex128)
    a[1, 0] = 1.0
    for k in range(1, n - 1):
        a[k + 1, k] = eps
    b = a.copy()
    b[0, n - 1] = eps
    return ComplexMatrix(a), ComplexMatrix(b)


def _disk_matrix(n: int, rng: np.random.Generator) -> npt.NDArray[np.complex128]:
    radius = np.sqrt(rng.random((n, n)))
    angle = 2.0 * np.pi * rng.random((n, n))
    return radius * np.exp(1j * angle) / np.sqrt(n)


def random_pair(n: int, seed: int, delta: float) -> tuple[ComplexMatrix, ComplexMatrix]:
    """
    ``A`` with independent entries uniform in the unit disk, scaled by
    ``1/sqrt(n)``; ``B = A + delta P`` with ``P`` from the same ensemble,
    normalised to operator norm 1.
    """
    if n < 1:
        raise InputError(f"dimension must be >= 1, got {n}")
    if not (delta >= 0 and math.isfinite(delta)):
        raise InputError(f"delta must be finite and >= 0, got {delta!r}")
    rng = make_rng(seed)
    a = _disk_matrix(n, rng)
    p = _disk_matrix(n, rng)
    p = p / scipy.linalg.svdvals(p, check_finite=False)[0]
    return ComplexMatrix(a), ComplexMatrix(a + delta * p)


def haar_unitary(n: int, rng: np.random.Generator) -> ComplexMatrix:
    """QR of a complex Gaussian matrix, with the phases of ``diag(R)``
    folded into ``Q`` so the factor is unique."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = scipy.linalg.qr(z, check_finite=False)
    d = np.diag(r)
    return ComplexMatrix(q * (d / np.abs(d)))


def exp_class_matrix(p: ExpClassParams, n: int, seed: int) -> ComplexMatrix:
    """``U diag(m exp(-a k^alpha)) V*`` with seeded random unitaries."""
    if n < 1:
        raise InputError(f"dimension must be >= 1, got {n}")
    rng = make_rng(seed)
    u = haar_unitary(n, rng).entries
    v = haar_unitary(n, rng).entries
    return ComplexMatrix((u * p.envelope(n)) @ v.conj().T)


def exp_class_profile(p: ExpClassParams, n_terms: int) -> SingularProfile:
    """
    The first ``n_terms`` values of ``m exp(-a k^alpha)`` and a certified
    bound for the sum of all the rest, standing in for an operator of
    exponential class with infinitely many singular values.
    """
    if n_terms < 0:
        raise InputError(f"n_terms must be >= 0, got {n_terms}")
    log_tail = ExpClass(p.a, p.alpha).log_tail_integral(math.log(p.m), n_terms)
    return SingularProfile(p.envelope(n_terms), math.exp(log_tail))


def profile_gauge(profile: SingularProfile, a: float, alpha: float) -> float:
    """``max_k s_k exp(a k^alpha)`` over the stored values."""
    values = profile.values
    positive = values > 0
    if not np.any(positive):
        return 0.0
    k = np.arange(1, values.size + 1, dtype=np.float64)[positive]
    with np.errstate(over="ignore"):
        return float(np.max(np.exp(np.log(values[positive]) + a * k**alpha)))


def gauge(m: MatrixLike, a: float, alpha: float) -> float:
    """
    The ``(a, alpha)``-gauge ``max_k s_k(M) exp(a k^alpha)``.

    Computed singular values carry an absolute error of about
    ``n eps s_1``, which the weight ``exp(a k^alpha)`` magnifies. A 1e-12
    relative accuracy is only guaranteed while ``n eps exp(a n^alpha)`` stays
    below 1e-12, which for ``a = alpha = 1`` means ``n <= 6``. In practice the
    gauge of :func:`exp_class_matrix` is off by about 4e-10 at ``n = 20`` and
    comes out near 1.08 instead of 1 at ``n = 40``.
    The ``k = 1`` term is always accurate, so the result never falls below
    the true gauge by more than rounding. Use :func:`profile_gauge` on
    :func:`exp_class_profile` where the exact gauge matters.
    """
    if not (a > 0 and alpha > 0):
        raise ParameterError(f"gauge needs a > 0 and alpha > 0, got {a}, {alpha}")
    return profile_gauge(singular_values(m), a, alpha)

"""
Spectral-distance bounds for pairs of matrices.

Every bound returns a :class:`~specbound.report.BoundReport` comparing the
bound value with the distance it bounds, measured from computed spectra:

- :func:`elsner_bound` against the Hausdorff distance of the raw spectra;
- :func:`directed_bound`, :func:`main_bound`, :func:`corollary_bound` and
  :func:`profile_bound` against spectra with ``0`` adjoined, which is the
  form that holds for matrices without further hypotheses.
"""
from __future__ import annotations

import enum
import logging
import math
from typing import Any, Callable, Mapping

import numpy as np

from specbound.constants import MAJORANT_REL_TOL, SLACK_TOL
from specbound.exceptions import (
    BothZeroError,
    DimensionMismatchError,
    ParameterError,
)
from specbound.growth import (
    ExpClass,
    ExpLinear,
    GrowthFunction,
    PowerOnePlus,
    Profile,
    TwoSingular,
    combine_max,
    from_matrix,
)
from specbound.hmap import HEvaluator
from specbound.linalg import (
    ComplexMatrix,
    MatrixLike,
    SingularProfile,
    eigenvalues,
    singular_values,
)
from specbound.models import profile_gauge
from specbound.report import BoundReport
from specbound.spectra import adjoin_zero, directed_hausdorff, hausdorff

__all__ = [
    "BoundReport",
    "CorollaryKind",
    "AsymptoteKind",
    "elsner_bound",
    "directed_bound",
    "main_bound",
    "corollary_bound",
    "profile_bound",
    "reference_asymptote",
]

logger = logging.getLogger(__name__)


class CorollaryKind(str, enum.Enum):
    TRACE_NORM = "trace_norm"
    EXP_CLASS = "exp_class"
    FINITE_RANK = "finite_rank"
    TWO_SINGULAR = "two_singular"


class AsymptoteKind(str, enum.Enum):
    H_GF_EXPONENT = "h_gf_exponent"
    H_TWO_SINGULAR_CONSTANT = "h_two_singular_constant"
    H_EXPCLASS_EXPONENT = "h_expclass_exponent"
    H_EXPCLASS_CONSTANT = "h_expclass_constant"
    H_EXPCLASS_CONSTANT_REDERIVED = "h_expclass_constant_rederived"
    G_EXPCLASS_CONSTANT = "g_expclass_constant"
    G_EXPCLASS_CONSTANT_REDERIVED = "g_expclass_constant_rederived"
    SHIFT_ELSNER_EXPONENT = "shift_elsner_exponent"
    SHIFT_DISTANCE_EXPONENT = "shift_distance_exponent"
    SHIFT_TWO_SINGULAR_EXPONENT = "shift_two_singular_exponent"
    SHIFT_TWO_SINGULAR_BALANCE_EXPONENT = "shift_two_singular_balance_exponent"


def _pair(a: MatrixLike, b: MatrixLike, what: str) -> tuple[ComplexMatrix, ComplexMatrix]:
    ma = ComplexMatrix.coerce(a)
    mb = ComplexMatrix.coerce(b)
    if ma.dim != mb.dim:
        raise DimensionMismatchError.from_matrices(ma, mb, what)
    return ma, mb


def _zero_adjoined_distance(a: ComplexMatrix, b: ComplexMatrix) -> float:
    return hausdorff(adjoin_zero(eigenvalues(a)), adjoin_zero(eigenvalues(b)))


def _difference_norm(a: ComplexMatrix, b: ComplexMatrix) -> float:
    return singular_values(a - b)[0]


def elsner_bound(a: MatrixLike, b: MatrixLike, tol: float = SLACK_TOL) -> BoundReport:
    """``(||A|| + ||B||)^(1 - 1/n) ||A - B||^(1/n)`` against ``Hdist(sigma(A), sigma(B))``."""
    ma, mb = _pair(a, b, "elsner_bound")
    n = ma.dim
    norms = singular_values(ma)[0] + singular_values(mb)[0]
    bound = norms ** (1.0 - 1.0 / n) * _difference_norm(ma, mb) ** (1.0 / n)
    measured = hausdorff(eigenvalues(ma), eigenvalues(mb))
    return BoundReport.compare("elsner", bound, measured, inputs={"dim": n}, tol=tol)


def directed_bound(a: MatrixLike, b: MatrixLike, tol: float = SLACK_TOL) -> BoundReport:
    """``d^(sigma(B), sigma(A) u {0}) <= H_{F_A}(||A - B||)``."""
    ma, mb = _pair(a, b, "directed_bound")
    f_a = from_matrix(ma)
    if f_a.degenerate:
        return BoundReport.inapplicable(
            "directed", "F_A is constant for A = 0", {"dim": ma.dim}
        )
    bound = HEvaluator(f_a).h_eval(_difference_norm(ma, mb))
    measured = directed_hausdorff(eigenvalues(mb), adjoin_zero(eigenvalues(ma)))
    return BoundReport.compare("directed", bound, measured, inputs={"dim": ma.dim}, tol=tol)


def main_bound(a: MatrixLike, b: MatrixLike, tol: float = SLACK_TOL) -> BoundReport:
    """
    ``Hdist(sigma(A) u {0}, sigma(B) u {0}) <= H_F(||A - B||)`` with
    ``F = max(F_A, F_B)``. Two zero matrices give the bound 0.
    """
    ma, mb = _pair(a, b, "main_bound")
    if ma.is_zero() and mb.is_zero():
        return BoundReport.compare("main", 0.0, 0.0, inputs={"dim": ma.dim}, tol=tol)
    f = combine_max(from_matrix(ma), from_matrix(mb))
    bound = HEvaluator(f).h_eval(_difference_norm(ma, mb))
    measured = _zero_adjoined_distance(ma, mb)
    return BoundReport.compare("main", bound, measured, inputs={"dim": ma.dim}, tol=tol)


def _dominated(profile: SingularProfile, majorant: SingularProfile) -> bool:
    """``s_k <= majorant_k`` for every stored ``k`` and the remainder sums."""
    s = profile.values
    floor = s.size * np.finfo(np.float64).eps * (float(s[0]) if s.size else 0.0)
    count = min(s.size, len(majorant))
    head = majorant.values[:count]
    if np.any(s[:count] > head * (1 + MAJORANT_REL_TOL) + floor):
        return False
    remainder = float(np.sum(s[count:]))
    return remainder <= majorant.tail_sum * (1 + MAJORANT_REL_TOL) + floor * (s.size - count)


def _exp_class_params(
    ma: ComplexMatrix, mb: ComplexMatrix, params: Mapping[str, Any]
) -> tuple[float, float, float]:
    try:
        a = float(params["a"])
        alpha = float(params["alpha"])
    except KeyError as e:
        raise ParameterError(f"exp_class needs parameter {e.args[0]!r}") from e
    if not (a > 0 and alpha > 0):
        raise ParameterError(f"exp_class needs a > 0 and alpha > 0, got {a}, {alpha}")
    gauges = [profile_gauge(singular_values(m), a, alpha) for m in (ma, mb)]
    if params.get("m") is None:
        return a, alpha, max(gauges)

    m = float(params["m"])
    if not (m > 0 and math.isfinite(m)):
        raise ParameterError(
            f"exp_class gauge m must be positive and finite, got {m!r}"
        )
    envelope = SingularProfile(m * np.exp(-a * np.arange(1, ma.dim + 1) ** alpha))
    for name, matrix, g in (("A", ma, gauges[0]), ("B", mb, gauges[1])):
        if not _dominated(singular_values(matrix), envelope):
            raise ParameterError(
                f"{name} is not of exponential class ({a:g}, {alpha:g}) with "
                f"gauge m = {m:g}; its gauge is {g:.17g}"
            )
    return a, alpha, m


def corollary_bound(
    kind: CorollaryKind | str,
    a: MatrixLike,
    b: MatrixLike,
    params: Mapping[str, Any] | None = None,
    tol: float = SLACK_TOL,
) -> BoundReport:
    """
    The bound through a growth function that majorises ``F_A`` and ``F_B``
    after scaling by ``m``:

    ``trace_norm``
        ``m H_{exp}(||A - B|| / m)``, ``m = max(||A||_1, ||B||_1)``.
    ``exp_class``
        ``m H_{G^E_{a,alpha}}(||A - B|| / m)``; ``params`` carries ``a``,
        ``alpha`` and optionally the gauge ``m``, which is validated
        against both matrices (otherwise the larger gauge is used).
    ``finite_rank``
        ``m H_{(1+r)^n}(||A - B|| / m)``, ``m = max(||A||, ||B||)``.
    ``two_singular``
        ``H_{(1 + r s1)(1 + r s2)^(n-1)}(||A - B||)`` with ``s1``, ``s2`` the
        larger first and second singular values of the pair.
    """
    kind = CorollaryKind(kind)
    ma, mb = _pair(a, b, f"corollary_bound({kind.value})")
    if ma.is_zero() and mb.is_zero():
        raise BothZeroError(f"{kind.value} needs A and B not both zero")
    params = params or {}
    sa = singular_values(ma)
    sb = singular_values(mb)
    inputs: dict[str, Any] = {"dim": ma.dim}

    g: GrowthFunction
    m: float | None
    if kind is CorollaryKind.TRACE_NORM:
        m = max(sa.total(), sb.total())
        g = ExpLinear()
    elif kind is CorollaryKind.FINITE_RANK:
        m = max(sa[0], sb[0])
        g = PowerOnePlus(ma.dim)
    elif kind is CorollaryKind.EXP_CLASS:
        a_, alpha, m = _exp_class_params(ma, mb, params)
        g = ExpClass(a_, alpha)
        inputs.update(a=a_, alpha=alpha)
    else:
        s1, s2 = max(sa[0], sb[0]), max(sa[1], sb[1])
        g = TwoSingular(s1, s2, ma.dim)
        inputs.update(s1=s1, s2=s2)
        m = None

    difference = _difference_norm(ma, mb)
    if m is None:
        bound = HEvaluator(g).h_eval(difference)
    else:
        if m <= 0:
            raise BothZeroError(f"{kind.value}: m = 0")
        inputs["m"] = m
        bound = m * HEvaluator(g).h_eval(difference / m)
    measured = _zero_adjoined_distance(ma, mb)
    return BoundReport.compare(kind.value, bound, measured, inputs=inputs, tol=tol)


def profile_bound(
    a: MatrixLike, b: MatrixLike, majorant: SingularProfile, tol: float = SLACK_TOL
) -> BoundReport:
    """
    The bound ``H_F(||A - B||)`` for ``F`` built from any common majorant of
    the singular values of ``A`` and ``B``.

    :raises ParameterError: if ``majorant`` does not dominate both profiles.
    """
    ma, mb = _pair(a, b, "profile_bound")
    for name, matrix in (("A", ma), ("B", mb)):
        if not _dominated(singular_values(matrix), majorant):
            raise ParameterError(f"{majorant!r} does not majorise the singular values of {name}")
    bound = HEvaluator(Profile(majorant)).h_eval(_difference_norm(ma, mb))
    measured = _zero_adjoined_distance(ma, mb)
    return BoundReport.compare("profile", bound, measured, inputs={"dim": ma.dim}, tol=tol)


def _h_expclass_constant(a: float, alpha: float) -> float:
    ratio = (1 + alpha) / alpha
    # Single power, so a = alpha = 1 gives exactly -2.
    return -((2 * a * ratio**alpha) ** (1 / (1 + alpha)))


def _h_expclass_constant_rederived(a: float, alpha: float) -> float:
    ratio = (1 + alpha) / alpha
    return -((a * ratio**alpha / 2**alpha) ** (1 / (1 + alpha)))


_ASYMPTOTES: dict[AsymptoteKind, tuple[tuple[str, ...], Callable[..., float]]] = {
    AsymptoteKind.H_GF_EXPONENT: (("n",), lambda n: 1 / (2 * n + 1)),
    AsymptoteKind.H_TWO_SINGULAR_CONSTANT: (
        ("s1", "s2", "n"),
        lambda s1, s2, n: s1 ** (2 / (2 * n + 1)) * s2 ** ((2 * n - 2) / (2 * n + 1)),
    ),
    AsymptoteKind.H_EXPCLASS_EXPONENT: (("alpha",), lambda alpha: alpha / (1 + alpha)),
    AsymptoteKind.H_EXPCLASS_CONSTANT: (("a", "alpha"), _h_expclass_constant),
    AsymptoteKind.H_EXPCLASS_CONSTANT_REDERIVED: (
        ("a", "alpha"),
        _h_expclass_constant_rederived,
    ),
    AsymptoteKind.G_EXPCLASS_CONSTANT: (
        ("a", "alpha"),
        lambda a, alpha: a ** (1 / alpha) * alpha / (1 + alpha),
    ),
    AsymptoteKind.G_EXPCLASS_CONSTANT_REDERIVED: (
        ("a", "alpha"),
        lambda a, alpha: a ** (-1 / alpha) * alpha / (1 + alpha),
    ),
    AsymptoteKind.SHIFT_ELSNER_EXPONENT: (("n",), lambda n: 1 / n),
    AsymptoteKind.SHIFT_DISTANCE_EXPONENT: (("n",), lambda n: (n - 1) / n),
    AsymptoteKind.SHIFT_TWO_SINGULAR_EXPONENT: (
        ("n",),
        lambda n: (2 * n - 1) / (2 * n + 1),
    ),
    AsymptoteKind.SHIFT_TWO_SINGULAR_BALANCE_EXPONENT: ((), lambda: 1 / 3),
}


def reference_asymptote(kind: AsymptoteKind | str, **params: float) -> float:
    """
    Closed-form asymptotic exponents and constants, for display next to
    measured values. ``h_*`` kinds describe ``H(t)`` as ``t -> 0``
    (``log H ~ c |log t|^e`` for the exponential class), ``g_*`` kinds
    ``log G(r) ~ c (log r)^(1 + 1/alpha)`` as ``r -> inf`` and ``shift_*``
    kinds the power of ``eps`` in the weighted shift family.
    """
    kind = AsymptoteKind(kind)
    names, formula = _ASYMPTOTES[kind]
    missing = [name for name in names if name not in params]
    if missing:
        raise ParameterError(f"{kind.value} needs parameters {', '.join(missing)}")
    value = float(formula(*(params[name] for name in names)))
    if not math.isfinite(value):
        raise ParameterError(f"{kind.value} is undefined for {params!r}")
    return value

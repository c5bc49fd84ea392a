"""
Growth functions: strictly increasing ``F: [0, inf) -> [1, inf)`` with
``F(0) = 1`` and ``F(r) -> inf``, evaluated in the log domain.

All evaluation goes through ``log F(e^x)`` so that arguments from far below
to far above the double range can be handled without overflow. Variants
that only know a truncated product (:class:`Profile` with a tail
certificate, :class:`ExpClass`) return an interval whose upper end is a
certified upper bound; :meth:`GrowthFunction.log_eval` returns that upper
end, which keeps every bound derived from it valid.
"""
from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt
import scipy.special

from specbound.constants import EXPCLASS_MAX_TERMS, EXPCLASS_TERM_CUTOFF
from specbound.exceptions import DomainError, InputError, ParameterError
from specbound.linalg import MatrixLike, SingularProfile, singular_values

__all__ = [
    "GrowthFunction",
    "Profile",
    "ExpLinear",
    "ExpClass",
    "PowerOnePlus",
    "TwoSingular",
    "Scaled",
    "Max",
    "log_eval",
    "log_eval_interval",
    "from_matrix",
    "from_profile",
    "combine_max",
    "scale",
]

logger = logging.getLogger(__name__)


def _log1p_exp(x: float) -> float:
    """``log(1 + e^x)`` without overflow."""
    return float(np.logaddexp(0.0, x))


def _exp_or_inf(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


class GrowthFunction(ABC):
    @abstractmethod
    def _log_interval(self, log_r: float) -> tuple[float, float]:
        """Lower and upper ``log F(e^log_r)`` for finite ``log_r``."""

    @property
    def degenerate(self) -> bool:
        """True for the constant function 1, which is not strictly increasing."""
        return False

    def log_eval_interval(self, log_r: float) -> tuple[float, float]:
        log_r = float(log_r)
        if math.isnan(log_r):
            raise InputError("log_r must not be NaN")
        if log_r == -math.inf:
            return (0.0, 0.0)
        if log_r == math.inf:
            if self.degenerate:
                raise DomainError(f"{self!r} is constant; it has no value at r = inf")
            return (math.inf, math.inf)
        return self._log_interval(log_r)

    def log_eval(self, log_r: float) -> float:
        return self.log_eval_interval(log_r)[1]

    def value(self, r: float) -> float:
        """``F(r)`` itself; overflows to ``inf`` for large values."""
        if r < 0:
            raise InputError(f"growth functions are defined on [0, inf), got {r}")
        log_r = math.log(r) if r > 0 else -math.inf
        return _exp_or_inf(self.log_eval(log_r))


@dataclass(frozen=True, eq=False)
class Profile(GrowthFunction):
    """``F(r) = prod_k (1 + r s_k)`` over a singular value profile."""

    profile: SingularProfile
    _log_s: npt.NDArray[np.float64] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        log_s = np.log(self.profile.values[self.profile.values > 0])
        object.__setattr__(self, "_log_s", log_s)

    @property
    def degenerate(self) -> bool:
        return self.profile.is_zero()

    def _log_interval(self, log_r: float) -> tuple[float, float]:
        lower = float(np.sum(np.logaddexp(0.0, log_r + self._log_s)))
        if self.profile.tail_sum == 0:
            return (lower, lower)
        # log(1 + x) <= x bounds every unstored factor.
        tail = _exp_or_inf(log_r + math.log(self.profile.tail_sum))
        return (lower, lower + tail)

    def __repr__(self) -> str:
        return f"Profile({self.profile!r})"


@dataclass(frozen=True)
class ExpLinear(GrowthFunction):
    """``G^S(r) = exp(r)``."""

    def _log_interval(self, log_r: float) -> tuple[float, float]:
        value = _exp_or_inf(log_r)
        return (value, value)


@dataclass(frozen=True)
class ExpClass(GrowthFunction):
    """
    ``G^E_{a,alpha}(r) = prod_{k>=1} (1 + r exp(-a k^alpha))``.

    The product is truncated before the first factor with
    ``r exp(-a k^alpha) < cutoff``; the remainder is bounded by
    ``r * integral_K^inf exp(-a t^alpha) dt``, which is added to the upper
    value.
    """

    a: float
    alpha: float
    cutoff: float = EXPCLASS_TERM_CUTOFF
    max_terms: int = EXPCLASS_MAX_TERMS

    def __post_init__(self) -> None:
        if not (self.a > 0 and self.alpha > 0):
            raise ParameterError(
                f"exponential class needs a > 0 and alpha > 0, got {self.a}, {self.alpha}"
            )
        if not 0 < self.cutoff < 1:
            raise ParameterError(f"cutoff must be in (0, 1), got {self.cutoff}")

    def term_count(self, log_r: float) -> int:
        reach = (log_r - math.log(self.cutoff)) / self.a
        if reach < 1:
            return 0
        count = int(math.floor(reach ** (1.0 / self.alpha)))
        if count > self.max_terms:
            logger.debug(
                "ExpClass(%g, %g): %d terms needed at log r = %g, capped at %d",
                self.a,
                self.alpha,
                count,
                log_r,
                self.max_terms,
            )
            return self.max_terms
        return count

    def log_tail_integral(self, log_r: float, count: int) -> float:
        """``log(r * integral_count^inf exp(-a t^alpha) dt)``."""
        shape = 1.0 / self.alpha
        upper_gamma = scipy.special.gammaincc(shape, self.a * count**self.alpha)
        if upper_gamma <= 0:
            return -math.inf
        return (
            log_r
            + scipy.special.gammaln(shape)
            + math.log(upper_gamma)
            - math.log(self.alpha)
            - shape * math.log(self.a)
        )

    def _log_interval(self, log_r: float) -> tuple[float, float]:
        count = self.term_count(log_r)
        k = np.arange(1, count + 1, dtype=np.float64)
        lower = float(np.sum(np.logaddexp(0.0, log_r - self.a * k**self.alpha)))
        tail = _exp_or_inf(self.log_tail_integral(log_r, count))
        return (lower, lower + tail)


@dataclass(frozen=True)
class PowerOnePlus(GrowthFunction):
    """``G^F(r) = (1 + r)^n``."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError(f"n must be a positive integer, got {self.n}")

    def _log_interval(self, log_r: float) -> tuple[float, float]:
        value = self.n * _log1p_exp(log_r)
        return (value, value)


@dataclass(frozen=True)
class TwoSingular(GrowthFunction):
    """``G^F_{s1,s2}(r) = (1 + r s1)(1 + r s2)^(n-1)``."""

    s1: float
    s2: float
    n: int

    def __post_init__(self) -> None:
        if not (self.s1 > 0 and self.s2 >= 0 and self.n >= 1):
            raise ParameterError(
                "two-singular growth needs s1 > 0, s2 >= 0 and n >= 1, "
                f"got s1={self.s1}, s2={self.s2}, n={self.n}"
            )

    def _log_interval(self, log_r: float) -> tuple[float, float]:
        value = _log1p_exp(log_r + math.log(self.s1))
        if self.s2 > 0 and self.n > 1:
            value += (self.n - 1) * _log1p_exp(log_r + math.log(self.s2))
        return (value, value)


@dataclass(frozen=True)
class Scaled(GrowthFunction):
    """``F o M_m``, i.e. ``r -> F(m r)``."""

    inner: GrowthFunction
    m: float

    def __post_init__(self) -> None:
        if not (self.m > 0 and math.isfinite(self.m)):
            raise ParameterError(f"scale factor must be finite and > 0, got {self.m}")

    @property
    def degenerate(self) -> bool:
        return self.inner.degenerate

    def _log_interval(self, log_r: float) -> tuple[float, float]:
        return self.inner.log_eval_interval(log_r + math.log(self.m))


@dataclass(frozen=True)
class Max(GrowthFunction):
    """Pointwise maximum of two growth functions."""

    left: GrowthFunction
    right: GrowthFunction

    @property
    def degenerate(self) -> bool:
        return self.left.degenerate and self.right.degenerate

    def _log_interval(self, log_r: float) -> tuple[float, float]:
        left = self.left.log_eval_interval(log_r)
        right = self.right.log_eval_interval(log_r)
        return (max(left[0], right[0]), max(left[1], right[1]))


def log_eval(f: GrowthFunction, log_r: float) -> float:
    return f.log_eval(log_r)


def log_eval_interval(f: GrowthFunction, log_r: float) -> tuple[float, float]:
    return f.log_eval_interval(log_r)


def from_profile(profile: SingularProfile) -> Profile:
    return Profile(profile)


def from_matrix(m: MatrixLike) -> Profile:
    """``F_A(r) = prod_k (1 + r s_k(A))``; degenerate for the zero matrix."""
    return Profile(singular_values(m))


def combine_max(f1: GrowthFunction, f2: GrowthFunction) -> GrowthFunction:
    return Max(f1, f2)


def scale(f: GrowthFunction, m: float) -> GrowthFunction:
    return Scaled(f, m)

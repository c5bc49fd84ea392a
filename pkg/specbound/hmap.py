"""
The map ``F -> H_F`` taking a growth function to a spectral-distance bound:

    F~(r) = r F(r)^2,        H_F(t) = 1 / F~^{-1}(1 / t).

Everything is computed in log-log coordinates. ``F~`` is inverted with an
exponential bracket search from ``log r = 0`` followed by bisection, which
needs nothing beyond monotonicity and continuity of ``F``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

from specbound.constants import (
    H_MAX_ITER,
    H_REL_TOL,
    H_REL_TOL_CEILING,
    LOG_R_BRACKET_LIMIT,
)
from specbound.exceptions import DomainError, InputError, ParameterError, RangeError
from specbound.growth import GrowthFunction

__all__ = ["HEvaluator", "h_eval", "log_h_eval"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HEvaluator:
    F: GrowthFunction
    rel_tol: float = H_REL_TOL
    max_iter: int = H_MAX_ITER

    def __post_init__(self) -> None:
        if self.F.degenerate:
            raise DomainError(
                f"H_F needs a strictly increasing F; {self.F!r} is constant"
            )
        if not 0 < self.rel_tol <= H_REL_TOL_CEILING:
            raise ParameterError(
                f"rel_tol must be in (0, {H_REL_TOL_CEILING:g}], got {self.rel_tol!r}"
            )
        if self.max_iter < 1:
            raise ParameterError(f"max_iter must be positive, got {self.max_iter}")

    def log_tilde(self, log_r: float) -> float:
        """``log F~(e^log_r) = log r + 2 log F(r)``."""
        if log_r == -math.inf:
            return -math.inf
        return log_r + 2.0 * self.F.log_eval(log_r)

    def _bracket(
        self, g: Callable[[float], float], g0: float
    ) -> tuple[float, float, int]:
        direction = 1.0 if g0 < 0 else -1.0
        near = 0.0
        step = 1.0
        iterations = 0
        while True:
            far = direction * min(step, LOG_R_BRACKET_LIMIT)
            iterations += 1
            g_far = g(far)
            if (g_far >= 0) if direction > 0 else (g_far <= 0):
                lo, hi = (near, far) if direction > 0 else (far, near)
                logger.debug("bracketed F~^-1 in [%g, %g] after %d steps", lo, hi, iterations)
                return lo, hi, iterations
            if abs(far) >= LOG_R_BRACKET_LIMIT or iterations >= self.max_iter:
                raise RangeError(
                    f"could not bracket F~^-1 for {self.F!r} within "
                    f"|log r| <= {LOG_R_BRACKET_LIMIT:g}"
                )
            near = far
            step *= 2.0

    def log_tilde_inverse(self, log_y: float) -> float:
        """``log r`` such that ``log F~(r) = log_y`` within ``rel_tol``."""
        log_y = float(log_y)
        if not math.isfinite(log_y):
            raise InputError(f"log_y must be finite, got {log_y!r}")
        tol = self.rel_tol * max(1.0, abs(log_y))

        def g(x: float) -> float:
            return self.log_tilde(x) - log_y

        g0 = g(0.0)
        if abs(g0) <= tol:
            return 0.0
        lo, hi, iterations = self._bracket(g, g0)

        best_x, best_g = min(((lo, g(lo)), (hi, g(hi))), key=lambda p: abs(p[1]))
        if abs(best_g) <= tol:
            return best_x
        while iterations < self.max_iter:
            iterations += 1
            mid = 0.5 * (lo + hi)
            g_mid = g(mid)
            if abs(g_mid) < abs(best_g):
                best_x, best_g = mid, g_mid
            if abs(g_mid) <= tol:
                return mid
            if mid == lo or mid == hi:
                # Interval exhausted at double resolution.
                logger.debug(
                    "F~^-1(%g): stopped at float resolution, residual %g", log_y, best_g
                )
                return best_x
            if g_mid < 0:
                lo = mid
            else:
                hi = mid
        raise RangeError(
            f"F~^-1 did not converge in {self.max_iter} iterations "
            f"(log_y={log_y!r}, residual={best_g!r})"
        )

    def h_eval(self, t: float) -> float:
        """``H_F(t)``, with ``H_F(0) = 0`` by continuity."""
        t = float(t)
        if not (t >= 0 and math.isfinite(t)):
            raise InputError(f"H_F is defined for finite t >= 0, got {t!r}")
        if t == 0:
            return 0.0
        return math.exp(-self.log_tilde_inverse(-math.log(t)))

    def log_h_eval(self, log_t: float) -> float:
        """``log H_F(e^log_t)``; usable for ``t`` below the double range."""
        if log_t == -math.inf:
            return -math.inf
        return -self.log_tilde_inverse(-log_t)


def h_eval(f: GrowthFunction, t: float, rel_tol: float = H_REL_TOL) -> float:
    return HEvaluator(f, rel_tol=rel_tol).h_eval(t)


def log_h_eval(f: GrowthFunction, log_t: float, rel_tol: float = H_REL_TOL) -> float:
    return HEvaluator(f, rel_tol=rel_tol).log_h_eval(log_t)

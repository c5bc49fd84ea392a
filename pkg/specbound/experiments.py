"""
The ``shift``, ``asymptote`` and ``truncation`` commands.

These are experiments rather than proofs: each produces a table of measured
values next to reference values. Rows that check a proven inequality or a
closed form can FAIL; rows comparing against asymptotic constants whose
accuracy is in doubt are WARN-only.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import numpy.typing as npt
from typing_extensions import Final

from specbound import bounds, detbounds, linalg
from specbound.bounds import AsymptoteKind, reference_asymptote
from specbound.config import SuiteConfig
from specbound.exceptions import InputError
from specbound.growth import ExpClass, GrowthFunction, PowerOnePlus, TwoSingular
from specbound.hmap import HEvaluator
from specbound.models import exp_class_matrix, weighted_shift_pair
from specbound.report import BoundReport, ReportRow, Status
from specbound.spectra import hausdorff

__all__ = [
    "Family",
    "Window",
    "STATED_WINDOW",
    "DEEP_WINDOW",
    "fit_slope",
    "run_shift",
    "run_asymptote",
    "run_truncation",
]

logger = logging.getLogger(__name__)

SHIFT_CLOSED_FORM_TOL: Final = 1e-6
SHIFT_ELSNER_SLOPE_TOL: Final = 0.02
EXPONENT_TOL: Final = 0.02
STATED_WINDOW_N1_TOL: Final = 0.01
CONSTANT_TOL: Final = 0.05
GF_DEGREES: Final = (1, 3, 5)
TWO_SINGULAR_PARAMS: Final = (2.0, 0.5, 5)
# Base-10 exponents of the t at which the exponential class is probed.
EXPCLASS_PROBE_LOG10_T: Final = (-20.0, -40.0, -80.0)
EXPCLASS_PROBE_R: Final = (1e20, 1e40, 1e80)
TRUNCATION_DIM: Final = 40
TRUNCATION_SEED: Final = 7
TRUNCATION_KS: Final = (5, 10, 20, 40)
TRUNCATION_FULL_RANK_TOL: Final = 1e-10
WINDOW_POINTS: Final = 9


class Family(str, enum.Enum):
    GF = "gf"
    TWO_SINGULAR = "two_singular"
    EXPCLASS = "expclass"
    ALL = "all"


@dataclass(frozen=True)
class Window:
    """A range of ``t`` given by its base-10 exponents."""

    name: str
    low: float
    high: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.low) and math.isfinite(self.high)):
            raise InputError(
                f"window bounds must be finite, got {self.low}, {self.high}"
            )
        if not self.low < self.high:
            raise InputError(f"window needs low < high, got {self.low}, {self.high}")

    def log_t(self, points: int = WINDOW_POINTS) -> npt.NDArray[np.float64]:
        return np.linspace(self.low, self.high, points) * math.log(10.0)


STATED_WINDOW: Final = Window("stated", -12.0, -8.0)
DEEP_WINDOW: Final = Window("deep", -60.0, -50.0)


def fit_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Least-squares slope of ``y`` against ``x``."""
    if len(x) < 2:
        raise ValueError("a slope needs at least two points")
    slope, _ = np.polyfit(np.asarray(x, dtype=float), np.asarray(y, dtype=float), 1)
    return float(slope)


class _Table:
    """Collects rows for one command, logging WARN rows as they are added."""

    def __init__(self, suite: str) -> None:
        self.suite = suite
        self.rows: list[ReportRow] = []

    def add(
        self,
        case_id: str,
        report: BoundReport,
        *,
        dim: int = 0,
        seed: int = 0,
        warn_only: bool = False,
    ) -> None:
        row = ReportRow.from_report(
            self.suite,
            case_id,
            report,
            dim=dim,
            seed=seed,
            warn_only=warn_only,
            sort_key=(len(self.rows),),
        )
        if row.status is Status.WARN:
            logger.warning(
                "%s %s %s: measured %.6g, reference %.6g",
                self.suite,
                case_id,
                row.param,
                row.measured,
                row.bound,
            )
        self.rows.append(row)


def run_shift(config: SuiteConfig, n: int | None = None) -> list[ReportRow]:
    """
    Bounds for the weighted shift pair ``A_eps, B_eps`` across
    ``config.epsilon_grid``, then log-log slopes of each column against
    ``eps``.
    """
    n = config.n_shift if n is None else n
    tol = config.tol.slack
    table = _Table("shift")
    eps_grid = sorted(config.epsilon_grid)
    logger.info("shift: n=%d over %d eps values", n, len(eps_grid))

    columns: dict[str, list[float]] = {
        name: [] for name in ("distance", "elsner", "two_singular", "main", "finite_rank")
    }
    for eps in eps_grid:
        case_id = f"eps={eps:g}"
        a, b = weighted_shift_pair(n, eps)
        measured = hausdorff(linalg.eigenvalues(a), linalg.eigenvalues(b))
        columns["distance"].append(measured)
        table.add(
            case_id,
            BoundReport.agreement(
                "distance_closed_form",
                eps ** ((n - 1) / n),
                measured,
                rel_tol=SHIFT_CLOSED_FORM_TOL,
            ),
            dim=n,
        )
        for name, report in (
            ("elsner", bounds.elsner_bound(a, b, tol=tol)),
            ("two_singular", bounds.corollary_bound("two_singular", a, b, tol=tol)),
            ("main", bounds.main_bound(a, b, tol=tol)),
            ("finite_rank", bounds.corollary_bound("finite_rank", a, b, tol=tol)),
        ):
            columns[name].append(report.bound_value)
            table.add(case_id, report, dim=n)

    if len(eps_grid) < 2:
        logger.info("shift: one eps value, no slopes fitted")
        return table.rows

    log_eps = [math.log(e) for e in eps_grid]

    def slope(column: str) -> float:
        return fit_slope(log_eps, [math.log(v) for v in columns[column]])

    table.add(
        "slope",
        BoundReport.agreement(
            "distance_slope",
            reference_asymptote(AsymptoteKind.SHIFT_DISTANCE_EXPONENT, n=n),
            slope("distance"),
            rel_tol=SHIFT_CLOSED_FORM_TOL,
        ),
        dim=n,
    )
    table.add(
        "slope",
        BoundReport.agreement(
            "elsner_slope",
            reference_asymptote(AsymptoteKind.SHIFT_ELSNER_EXPONENT, n=n),
            slope("elsner"),
            rel_tol=SHIFT_ELSNER_SLOPE_TOL,
        ),
        dim=n,
    )
    for column in ("two_singular", "main"):
        measured_slope = slope(column)
        for kind in (
            AsymptoteKind.SHIFT_TWO_SINGULAR_EXPONENT,
            AsymptoteKind.SHIFT_TWO_SINGULAR_BALANCE_EXPONENT,
        ):
            table.add(
                "slope",
                BoundReport.agreement(
                    f"{column}_slope_vs_{kind.value}",
                    reference_asymptote(kind, n=n),
                    measured_slope,
                    rel_tol=EXPONENT_TOL,
                ),
                dim=n,
                warn_only=True,
            )
    return table.rows


def _window_slope(h: HEvaluator, window: Window) -> float:
    log_t = window.log_t()
    return fit_slope(list(log_t), [h.log_h_eval(x) for x in log_t])


def _exponent_rows(
    table: _Table,
    case_id: str,
    g: GrowthFunction,
    n: int,
    dim: int,
    window: Window | None,
) -> None:
    h = HEvaluator(g)
    reference = reference_asymptote(AsymptoteKind.H_GF_EXPONENT, n=n)
    table.add(
        case_id,
        BoundReport.agreement(
            f"exponent_{DEEP_WINDOW.name}",
            reference,
            _window_slope(h, DEEP_WINDOW),
            rel_tol=EXPONENT_TOL,
        ),
        dim=dim,
    )
    # Only n = 1 is already asymptotic at t ~ 1e-10.
    stated_tol = STATED_WINDOW_N1_TOL if n == 1 else EXPONENT_TOL
    table.add(
        case_id,
        BoundReport.agreement(
            f"exponent_{STATED_WINDOW.name}",
            reference,
            _window_slope(h, STATED_WINDOW),
            rel_tol=stated_tol,
        ),
        dim=dim,
        warn_only=n != 1,
    )
    if window is not None:
        table.add(
            case_id,
            BoundReport.agreement(
                f"exponent_{window.name}",
                reference,
                _window_slope(h, window),
                rel_tol=EXPONENT_TOL,
            ),
            dim=dim,
            warn_only=True,
        )


def _gf_rows(table: _Table, degrees: Iterable[int], window: Window | None) -> None:
    for n in degrees:
        _exponent_rows(table, f"gf n={n}", PowerOnePlus(n), n, n, window)


def _two_singular_rows(table: _Table, n: int, window: Window | None) -> None:
    s1, s2, _ = TWO_SINGULAR_PARAMS
    g = TwoSingular(s1, s2, n)
    case_id = f"two_singular s1={s1:g} s2={s2:g} n={n}"
    _exponent_rows(table, case_id, g, n, n, window)

    h = HEvaluator(g)
    exponent = reference_asymptote(AsymptoteKind.H_GF_EXPONENT, n=n)
    windows = [(DEEP_WINDOW, False), (STATED_WINDOW, True)]
    if window is not None:
        windows.append((window, True))
    for fit_window, warn_only in windows:
        log_t = fit_window.low * math.log(10.0)
        measured = math.exp(h.log_h_eval(log_t) - exponent * log_t)
        table.add(
            case_id,
            BoundReport.agreement(
                f"constant_{fit_window.name}",
                reference_asymptote(
                    AsymptoteKind.H_TWO_SINGULAR_CONSTANT, s1=s1, s2=s2, n=n
                ),
                measured,
                rel_tol=CONSTANT_TOL,
            ),
            dim=n,
            warn_only=warn_only,
        )


def _expclass_rows(
    table: _Table, a: float, alpha: float, window: Window | None
) -> None:
    g = ExpClass(a, alpha)
    h = HEvaluator(g)
    case_id = f"expclass a={a:g} alpha={alpha:g}"
    exponent = reference_asymptote(AsymptoteKind.H_EXPCLASS_EXPONENT, alpha=alpha)

    if window is None:
        probes: Sequence[float] = EXPCLASS_PROBE_LOG10_T
    else:
        probes = [window.high, (window.low + window.high) / 2, window.low]
    ratios = []
    for log10_t in probes:
        log_t = log10_t * math.log(10.0)
        ratio = h.log_h_eval(log_t) / abs(log_t) ** exponent
        ratios.append(ratio)
        for kind in (
            AsymptoteKind.H_EXPCLASS_CONSTANT,
            AsymptoteKind.H_EXPCLASS_CONSTANT_REDERIVED,
        ):
            table.add(
                f"{case_id} t=1e{log10_t:g}",
                BoundReport.agreement(
                    f"log_h_ratio_vs_{kind.value}",
                    reference_asymptote(kind, a=a, alpha=alpha),
                    ratio,
                    rel_tol=CONSTANT_TOL,
                ),
                warn_only=True,
            )
    steps = np.diff(ratios)
    table.add(
        case_id,
        BoundReport.predicate(
            "log_h_ratio_monotone",
            bool(np.all(steps <= 0) or np.all(steps >= 0)),
            ratios[-1],
            ratios[0],
        ),
    )

    for r in EXPCLASS_PROBE_R:
        log_r = math.log(r)
        ratio = g.log_eval(log_r) / log_r ** (1.0 + 1.0 / alpha)
        for kind in (
            AsymptoteKind.G_EXPCLASS_CONSTANT,
            AsymptoteKind.G_EXPCLASS_CONSTANT_REDERIVED,
        ):
            table.add(
                f"{case_id} r={r:g}",
                BoundReport.agreement(
                    f"log_g_ratio_vs_{kind.value}",
                    reference_asymptote(kind, a=a, alpha=alpha),
                    ratio,
                    rel_tol=CONSTANT_TOL,
                ),
                warn_only=True,
            )


def run_asymptote(
    config: SuiteConfig,
    family: Family | str = Family.ALL,
    n: int | None = None,
    window: Window | None = None,
) -> list[ReportRow]:
    """
    Fit the small-``t`` behaviour of ``H`` for the fixed-parameter growth
    families and probe the exponential class far below the double range.

    ``window`` adds WARN-only fits over a user range of ``t`` next to the
    built-in ones, and moves the exponential-class probes to its two ends
    and midpoint.
    """
    family = Family(family)
    table = _Table("asymptote")
    logger.info("asymptote: family=%s window=%s", family.value, window)
    if family in (Family.GF, Family.ALL):
        _gf_rows(table, GF_DEGREES if n is None else (n,), window)
    if family in (Family.TWO_SINGULAR, Family.ALL):
        _two_singular_rows(table, TWO_SINGULAR_PARAMS[2] if n is None else n, window)
    if family in (Family.EXPCLASS, Family.ALL):
        _expclass_rows(table, config.exp_class.a, config.exp_class.alpha, window)
    return table.rows


def run_truncation(config: SuiteConfig) -> list[ReportRow]:
    """
    Schmidt truncations of a seeded exponential-class matrix: the trace norm
    gap must strictly decrease and every gap must vanish at full rank; the
    determinant and distance gaps are expected, not required, to decrease.
    """
    table = _Table("truncation")
    a = exp_class_matrix(config.exp_class.params(), TRUNCATION_DIM, TRUNCATION_SEED)
    z = 1.5 * linalg.operator_norm(a)
    logger.info("truncation: dim=%d z=%g ks=%s", a.dim, z, TRUNCATION_KS)
    rows = detbounds.truncation_study(a, z, TRUNCATION_KS)

    previous = {
        "trace_gap": linalg.trace_norm(a),
        "det_gap": math.inf,
        "distance_gap": math.inf,
    }
    for row in rows:
        case_id = f"k={row.k}"
        for column in ("trace_gap", "det_gap", "distance_gap"):
            value = getattr(row, column)
            prior = previous[column]
            if column == "trace_gap":
                holds = value < prior
            else:
                holds = value <= prior
            table.add(
                case_id,
                BoundReport.predicate(f"{column}_decreasing", holds, value, prior),
                dim=a.dim,
                seed=TRUNCATION_SEED,
                warn_only=column != "trace_gap",
            )
            previous[column] = value

    full = rows[-1]
    for column in ("trace_gap", "det_gap", "distance_gap"):
        table.add(
            f"k={full.k}",
            BoundReport.compare(
                f"{column}_at_full_rank",
                TRUNCATION_FULL_RANK_TOL,
                getattr(full, column),
                tol=0.0,
            ),
            dim=a.dim,
            seed=TRUNCATION_SEED,
        )
    return table.rows

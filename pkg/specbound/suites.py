"""
The ``verify`` command: every inequality the library implements, checked on
seeded random pairs ``(A, B = A + delta P)`` for each dimension, trial and
``delta`` in the config.

Trials are independent tasks fanned out over a :class:`multiprocessing.Pool`.
Each task builds its matrices from its own Philox stream, keyed by
``seed ^ trial_key(...)``, and rows are sorted by trial key before they are
returned, so the output does not depend on the number of workers.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Iterator

from typing_extensions import Final

from specbound import bounds, detbounds, linalg
from specbound.config import SuiteConfig
from specbound.constants import TRIAL_KEY_DELTA_BITS, TRIAL_KEY_TRIAL_BITS
from specbound.exceptions import InputError
from specbound.models import random_pair, trial_seed
from specbound.report import BoundReport, ReportRow, Status

__all__ = ["TrialTask", "trial_key", "trial_tasks", "run_trial", "run_verify"]

logger = logging.getLogger(__name__)

# Halving factor applied to every bound by --inject-violation.
VIOLATION_FACTOR: Final = 0.5

# z walks the circle |z| = 2||A|| in steps of the golden angle.
GOLDEN_ANGLE: Final = math.pi * (3.0 - math.sqrt(5.0))


def trial_key(dim: int, trial: int, delta_index: int) -> int:
    """A unique nonnegative integer per trial; also its sort position."""
    if not 0 <= delta_index < 1 << TRIAL_KEY_DELTA_BITS:
        raise InputError(f"delta_index out of range for a trial key: {delta_index}")
    if not 0 <= trial < 1 << TRIAL_KEY_TRIAL_BITS:
        raise InputError(f"trial out of range for a trial key: {trial}")
    if dim < 0:
        raise InputError(f"dim must be nonnegative, got {dim}")
    shift = TRIAL_KEY_TRIAL_BITS + TRIAL_KEY_DELTA_BITS
    return (dim << shift) | (trial << TRIAL_KEY_DELTA_BITS) | delta_index


@dataclass(frozen=True)
class TrialTask:
    dim: int
    trial: int
    delta_index: int
    delta: float
    seed: int
    exp_class_a: float
    exp_class_alpha: float
    slack_tol: float
    rel_tol: float
    inject_violation: bool = False

    @property
    def key(self) -> int:
        return trial_key(self.dim, self.trial, self.delta_index)

    @property
    def stream_seed(self) -> int:
        return trial_seed(self.seed, self.key)

    @property
    def case_id(self) -> str:
        return f"d{self.dim}-t{self.trial}-k{self.delta_index}"


def trial_tasks(config: SuiteConfig, inject_violation: bool = False) -> Iterator[TrialTask]:
    for dim in config.dims:
        for trial in range(config.trials):
            for delta_index, delta in enumerate(config.delta_grid):
                yield TrialTask(
                    dim=dim,
                    trial=trial,
                    delta_index=delta_index,
                    delta=delta,
                    seed=config.seed,
                    exp_class_a=config.exp_class.a,
                    exp_class_alpha=config.exp_class.alpha,
                    slack_tol=config.tol.slack,
                    rel_tol=config.tol.rel,
                    inject_violation=inject_violation,
                )


def _trial_reports(task: TrialTask) -> Iterator[tuple[str, BoundReport]]:
    tol = task.slack_tol
    a, b = random_pair(task.dim, task.stream_seed, task.delta)

    for report in linalg.weyl_checks(a, tol=tol):
        yield "weyl", report

    angle = task.trial * GOLDEN_ANGLE
    z = 2.0 * linalg.operator_norm(a) * complex(math.cos(angle), math.sin(angle))
    yield "det_lower", detbounds.lower_bound_check(a, z, tol=tol)
    for report in detbounds.upper_bound_check(a, b, tol=tol):
        yield "det_upper", report
    for report in detbounds.determinant_chain(a, tol=tol):
        yield "det_chain", report

    yield "elsner", bounds.elsner_bound(a, b, tol=tol)
    yield "directed", bounds.directed_bound(a, b, tol=tol)
    main = bounds.main_bound(a, b, tol=tol)
    yield "main", main
    finite_rank = bounds.corollary_bound("finite_rank", a, b, tol=tol)
    for report in (
        finite_rank,
        bounds.corollary_bound("trace_norm", a, b, tol=tol),
        bounds.corollary_bound("two_singular", a, b, tol=tol),
        bounds.corollary_bound(
            "exp_class",
            a,
            b,
            {"a": task.exp_class_a, "alpha": task.exp_class_alpha},
            tol=tol,
        ),
    ):
        yield "corollary", report

    # A larger growth function gives a larger bound.
    yield "dominance", BoundReport.compare(
        "finite_rank_dominates_main",
        finite_rank.bound_value,
        main.bound_value,
        inputs={"dim": task.dim},
        tol=task.rel_tol,
    )


def run_trial(task: TrialTask) -> list[ReportRow]:
    rows = []
    for index, (suite, report) in enumerate(_trial_reports(task)):
        if not report.applicable:
            logger.debug(
                "%s: %s skipped: %s",
                task.case_id,
                report.bound_name,
                report.inputs.get("reason"),
            )
            continue
        if task.inject_violation:
            report = report.rescaled(VIOLATION_FACTOR, task.slack_tol)
        rows.append(
            ReportRow.from_report(
                suite,
                task.case_id,
                report,
                dim=task.dim,
                seed=task.stream_seed,
                sort_key=(task.key, index),
            )
        )
    return rows


def run_verify(
    config: SuiteConfig, threads: int = 1, inject_violation: bool = False
) -> list[ReportRow]:
    tasks = list(trial_tasks(config, inject_violation))
    logger.info(
        "verify: %d trials over dims %s with %d worker(s)",
        len(tasks),
        ",".join(map(str, config.dims)),
        threads,
    )
    rows: list[ReportRow] = []
    if threads <= 1 or len(tasks) <= 1:
        for task in tasks:
            rows.extend(run_trial(task))
    else:
        chunksize = max(1, len(tasks) // (threads * 8))
        with Pool(processes=threads) as pool:
            for trial_rows in pool.imap(run_trial, tasks, chunksize=chunksize):
                rows.extend(trial_rows)
    rows.sort(key=lambda row: row.sort_key)
    failures = sum(1 for row in rows if row.status is Status.FAIL)
    logger.info("verify: %d rows, %d failure(s)", len(rows), failures)
    return rows

"""
Report records and their serialisation.

:class:`BoundReport` is what every inequality check in the library returns.
The harness flattens reports into :class:`ReportRow` objects, which are
written as CSV tables (fixed column order, floats with 17 significant
digits) or JSON, plus a JSON summary.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import logging
import math
from dataclasses import asdict, dataclass, field
from typing import IO, Any, Iterable, Mapping, Sequence

from typing_extensions import Final

from specbound.constants import SLACK_TOL
from specbound.exceptions import InputError

__all__ = [
    "BoundReport",
    "ReportRow",
    "Status",
    "CSV_COLUMNS",
    "format_float",
    "write_csv",
    "render_csv",
    "write_json",
    "summarise",
    "exit_code",
    "write_summary",
]

logger = logging.getLogger(__name__)

CSV_COLUMNS: Final = (
    "suite",
    "case_id",
    "dim",
    "seed",
    "param",
    "measured",
    "bound",
    "slack",
    "status",
)


class Status(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    WARN = "WARN"


@dataclass(frozen=True)
class BoundReport:
    """
    One evaluation of an inequality ``measured <= bound``.

    Distance reports carry nonnegative values. Determinant reports compare
    logarithms (``log_domain=True``) so that the slack stays meaningful
    when the underlying values under- or overflow.
    """

    bound_name: str
    inputs: Mapping[str, Any]
    bound_value: float
    measured_distance: float
    slack: float
    passed: bool
    applicable: bool = True
    log_domain: bool = False
    two_sided: bool = False

    def __post_init__(self) -> None:
        if self.applicable and not (self.log_domain or self.two_sided):
            if not (self.bound_value >= 0 and self.measured_distance >= 0):
                raise InputError(
                    f"{self.bound_name}: distance reports need nonnegative values, "
                    f"got bound={self.bound_value!r} "
                    f"measured={self.measured_distance!r}"
                )

    @classmethod
    def compare(
        cls,
        bound_name: str,
        bound_value: float,
        measured: float,
        *,
        inputs: Mapping[str, Any] | None = None,
        tol: float = SLACK_TOL,
        log_domain: bool = False,
    ) -> BoundReport:
        bound_value = float(bound_value)
        measured = float(measured)
        # Equal infinities compare as zero slack rather than nan.
        slack = 0.0 if bound_value == measured else bound_value - measured
        passed = bool(slack >= -tol * max(1.0, abs(bound_value)))
        return cls(
            bound_name=bound_name,
            inputs=dict(inputs or {}),
            bound_value=bound_value,
            measured_distance=measured,
            slack=slack,
            passed=passed,
            log_domain=log_domain,
        )

    @classmethod
    def inapplicable(
        cls, bound_name: str, reason: str, inputs: Mapping[str, Any] | None = None
    ) -> BoundReport:
        logger.debug("%s inapplicable: %s", bound_name, reason)
        return cls(
            bound_name=bound_name,
            inputs={**(inputs or {}), "reason": reason},
            bound_value=math.nan,
            measured_distance=math.nan,
            slack=math.nan,
            passed=True,
            applicable=False,
        )

    @classmethod
    def agreement(
        cls,
        name: str,
        reference: float,
        measured: float,
        *,
        rel_tol: float,
        inputs: Mapping[str, Any] | None = None,
    ) -> BoundReport:
        """
        A two-sided check ``|measured - reference| <= rel_tol * |reference|``.
        The slack is minus the absolute gap; values may be negative.
        """
        reference = float(reference)
        measured = float(measured)
        gap = abs(measured - reference)
        return cls(
            bound_name=name,
            inputs=dict(inputs or {}),
            bound_value=reference,
            measured_distance=measured,
            slack=-gap,
            passed=bool(gap <= rel_tol * abs(reference)),
            two_sided=True,
        )

    @classmethod
    def predicate(
        cls,
        name: str,
        holds: bool,
        measured: float,
        bound: float,
        inputs: Mapping[str, Any] | None = None,
    ) -> BoundReport:
        """A check decided by ``holds`` rather than by the slack."""
        return cls(
            bound_name=name,
            inputs=dict(inputs or {}),
            bound_value=float(bound),
            measured_distance=float(measured),
            slack=float(bound) - float(measured),
            passed=bool(holds),
            two_sided=True,
        )

    def rescaled(self, factor: float, tol: float = SLACK_TOL) -> BoundReport:
        """The same comparison with the bound multiplied by ``factor``."""
        if self.two_sided:
            return self.agreement(
                self.bound_name,
                self.bound_value * factor,
                self.measured_distance,
                rel_tol=tol,
                inputs=self.inputs,
            )
        if self.log_domain:
            bound = self.bound_value + math.log(factor)
        else:
            bound = self.bound_value * factor
        return self.compare(
            self.bound_name,
            bound,
            self.measured_distance,
            inputs=self.inputs,
            tol=tol,
            log_domain=self.log_domain,
        )


@dataclass(frozen=True)
class ReportRow:
    suite: str
    case_id: str
    dim: int
    seed: int
    param: str
    measured: float
    bound: float
    slack: float
    status: Status
    sort_key: tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def from_report(
        cls,
        suite: str,
        case_id: str,
        report: BoundReport,
        *,
        dim: int,
        seed: int,
        param: str = "",
        warn_only: bool = False,
        sort_key: tuple[int, ...] = (),
    ) -> ReportRow:
        if report.passed:
            status = Status.PASS
        else:
            status = Status.WARN if warn_only else Status.FAIL
        return cls(
            suite=suite,
            case_id=case_id,
            dim=dim,
            seed=seed,
            param=param or report.bound_name,
            measured=report.measured_distance,
            bound=report.bound_value,
            slack=report.slack,
            status=status,
            sort_key=sort_key,
        )

    def as_record(self) -> dict[str, Any]:
        record = asdict(self)
        del record["sort_key"]
        record["status"] = self.status.value
        return record


def format_float(value: float) -> str:
    return format(value, ".17g")


def _csv_cells(row: ReportRow) -> list[str]:
    return [
        row.suite,
        row.case_id,
        str(row.dim),
        str(row.seed),
        row.param,
        format_float(row.measured),
        format_float(row.bound),
        format_float(row.slack),
        row.status.value,
    ]


def write_csv(rows: Iterable[ReportRow], out: IO[str]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(_csv_cells(row))


def _json_float(value: float) -> float | str:
    # JSON has no inf/nan; keep them readable and lossless as strings.
    if math.isfinite(value):
        return float(format_float(value))
    return format_float(value)


def write_json(
    rows: Sequence[ReportRow], out: IO[str], summary: Mapping[str, Any] | None = None
) -> None:
    records = []
    for row in rows:
        record = row.as_record()
        for key in ("measured", "bound", "slack"):
            record[key] = _json_float(record[key])
        records.append(record)
    document: dict[str, Any] = {"rows": records}
    if summary is not None:
        document["summary"] = dict(summary)
    json.dump(document, out, indent=2, sort_keys=True)
    out.write("\n")


def summarise(command: str, rows: Sequence[ReportRow]) -> dict[str, Any]:
    counts = {status.value: 0 for status in Status}
    for row in rows:
        counts[row.status.value] += 1
    return {
        "command": command,
        "rows": len(rows),
        "counts": counts,
        "exit_code": exit_code(rows),
    }


def exit_code(rows: Iterable[ReportRow]) -> int:
    return 1 if any(row.status is Status.FAIL for row in rows) else 0


def render_csv(rows: Iterable[ReportRow]) -> str:
    buffer = io.StringIO()
    write_csv(rows, buffer)
    return buffer.getvalue()


def write_summary(summary: Mapping[str, Any], out: IO[str]) -> None:
    json.dump(dict(summary), out, indent=2, sort_keys=True)
    out.write("\n")

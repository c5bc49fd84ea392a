from __future__ import annotations

import logging
import os
import sys
from typing import Callable, TextIO, Union, cast

import docopt
from typing_extensions import TypedDict

from specbound import __version__
from specbound.config import SuiteConfig, load_config, parse_dims, parse_t_window
from specbound.exceptions import ConfigError, SpecboundError
from specbound.experiments import (
    Family,
    Window,
    run_asymptote,
    run_shift,
    run_truncation,
)
from specbound.report import (
    ReportRow,
    exit_code,
    summarise,
    write_csv,
    write_json,
    write_summary,
)
from specbound.suites import run_verify

logger = logging.getLogger(__name__)

COMMANDS = ("verify", "shift", "asymptote", "truncation")
FORMATS = ("csv", "json")

# - Assign doc to DOC to keep it if python -OO is used (which strips docstrings)
# - We format spaces into blank lines to work around a bug in docopt-ng's usage
#   parser.
USAGE = """\
usage: specbound verify [options]
       specbound shift [options]
       specbound asymptote [options]
       specbound truncation [options]
       specbound --help\
"""

__doc__ = DOC = f"""
Check spectral-distance bounds for pairs of matrices, and run the experiments
comparing them with the classical bound of Elsner.

{USAGE}

commands:
    verify
        Run every inequality suite over seeded random pairs. Exits 1 if any
        check fails.
{" "}
    shift
        Bounds for the weighted shift pair over the eps grid, with fitted
        log-log slopes.
{" "}
    asymptote
        Small-t behaviour of H for the fixed-parameter and exponential-class
        growth functions.
{" "}
    truncation
        Convergence of Schmidt truncations of an exponential-class matrix.
{" "}
options:
    --config FILE
        JSON config file, merged over the built-in defaults.
{" "}
    --seed N
        Override the base seed.
{" "}
    --trials N
        Override the number of random trials per dimension and delta.
{" "}
    --dims RANGE
        Override the dimensions, as a..b (inclusive) or a single n.
{" "}
    --out DIR
        Write <command>.<format> and <command>-summary.json into DIR instead
        of writing the table to stdout.
{" "}
    --format FORMAT
        Table format, csv or json [default: csv].
{" "}
    --threads N
        Worker processes for verify [default: 1].
{" "}
    --family FAMILY
        asymptote: gf, two_singular, expclass or all [default: all].
{" "}
    --n N
        shift: matrix size (default from config). asymptote: degree of the
        gf and two_singular families.
{" "}
    --t-window RANGE
        asymptote: also fit over t from 10^lo to 10^hi, given as lo..hi,
        and probe the exponential class there. Negative bounds need the
        = form, as in --t-window=-30..-20.
{" "}
    --inject-violation
        Self-test: halve every bound before comparing. A correct build then
        fails verify.
{" "}
    --traceback
        Print the Python traceback on errors.
{" "}
    --verbose
        Log progress to stderr.
{" "}
    --debug
        Log everything to stderr.
{" "}
    --version
        Print the version and exit.
{" "}
    --help, -h
        Show this help.
"""

ParsedArgs = TypedDict(
    "ParsedArgs",
    {
        "verify": bool,
        "shift": bool,
        "asymptote": bool,
        "truncation": bool,
        "--config": Union[str, None],
        "--seed": Union[str, None],
        "--trials": Union[str, None],
        "--dims": Union[str, None],
        "--out": Union[str, None],
        "--format": str,
        "--threads": str,
        "--family": str,
        "--n": Union[str, None],
        "--t-window": Union[str, None],
        "--inject-violation": bool,
        "--traceback": bool,
        "--verbose": bool,
        "--debug": bool,
        "--version": bool,
        "--help": bool,
        "-h": bool,
    },
)


def _int_option(args: ParsedArgs, name: str, minimum: int = 0) -> int | None:
    raw = cast("str | None", args[name])  # type: ignore[literal-required]
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


def _configure_logging(args: ParsedArgs) -> None:
    if args["--debug"]:
        level = logging.DEBUG
    elif args["--verbose"]:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _command(args: ParsedArgs) -> str:
    for command in COMMANDS:
        if args[command]:  # type: ignore[literal-required]
            return command
    raise AssertionError("docopt accepted no command")


def _runner(
    command: str, args: ParsedArgs
) -> Callable[[SuiteConfig], list[ReportRow]]:
    n = _int_option(args, "--n", minimum=1)
    if command == "verify":
        threads = _int_option(args, "--threads", minimum=1)
        inject = args["--inject-violation"]
        return lambda config: run_verify(config, threads or 1, inject)
    if command == "shift":
        if n is not None and n < 2:
            raise ConfigError(f"--n must be >= 2 for shift, got {n}")
        return lambda config: run_shift(config, n)
    if command == "asymptote":
        try:
            family = Family(args["--family"])
        except ValueError:
            raise ConfigError(
                "--family must be one of "
                f"{', '.join(f.value for f in Family)}, got {args['--family']!r}"
            ) from None
        window = None
        if args["--t-window"] is not None:
            window = Window("window", *parse_t_window(args["--t-window"]))
        return lambda config: run_asymptote(config, family, n, window)
    return run_truncation


def _write(
    rows: list[ReportRow], out: TextIO, fmt: str, summary: dict[str, object] | None
) -> None:
    if fmt == "json":
        write_json(rows, out, summary)
    else:
        write_csv(rows, out)


def _main(args: ParsedArgs) -> int:
    command = _command(args)
    fmt = args["--format"]
    if fmt not in FORMATS:
        raise ConfigError(f"--format must be csv or json, got {fmt!r}")

    dims = parse_dims(args["--dims"]) if args["--dims"] is not None else None
    config = load_config(
        args["--config"],
        seed=_int_option(args, "--seed"),
        trials=_int_option(args, "--trials"),
        dims=dims,
    )
    rows = _runner(command, args)(config)
    summary = summarise(command, rows)
    logger.info("%s: %s", command, summary["counts"])

    out_dir = args["--out"]
    if out_dir is None:
        _write(rows, sys.stdout, fmt, summary if fmt == "json" else None)
    else:
        try:
            os.makedirs(out_dir, exist_ok=True)
            table_path = os.path.join(out_dir, f"{command}.{fmt}")
            with open(table_path, "w", encoding="utf-8", newline="") as f:
                _write(rows, f, fmt, None)
            summary_path = os.path.join(out_dir, f"{command}-summary.json")
            with open(summary_path, "w", encoding="utf-8") as f:
                write_summary(summary, f)
        except OSError as e:
            raise ConfigError(f"could not write results to {out_dir!r}: {e}") from e
        logger.info("wrote %s and %s", table_path, summary_path)
    return exit_code(rows)


def main(argv: list[str] | None = None) -> None:
    try:
        args = cast(ParsedArgs, docopt.docopt(DOC, version=__version__, argv=argv))
    except docopt.DocoptExit as e:
        if e.code:
            # docopt-ng's own messages for unknown options are confusing, so
            # print the usage block instead.
            print(
                f"""\
specbound couldn't understand the command line options it received. Run again \
with --help for more info.

{USAGE}
""",
                file=sys.stderr,
                end="",
            )
            raise SystemExit(2) from e
        raise e
    _configure_logging(args)
    try:
        code = _main(args)
    except SpecboundError as e:
        print(f"fatal: {e}", file=sys.stderr)

        if args["--traceback"]:
            import traceback

            print("\n--traceback on, full traceback follows:\n", file=sys.stderr)
            traceback.print_exc()

        sys.exit(2)
    if code:
        sys.exit(code)


if __name__ == "__main__":
    main()

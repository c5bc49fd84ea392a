"""
Harness configuration.

A config file is a JSON object whose keys mirror :class:`SuiteConfig`. It is
merged over the packaged ``data/default-config.json`` (nested objects key by
key), then command line overrides are applied. Unknown keys and values of
the wrong type are rejected with :class:`~specbound.exceptions.ConfigError`.
"""
from __future__ import annotations

import json
import logging
import math
import re
from dataclasses import dataclass, fields, replace
from typing import Any, Mapping, Sequence

import importlib_resources

from specbound.constants import TRIAL_KEY_DELTA_BITS, TRIAL_KEY_TRIAL_BITS
from specbound.exceptions import ConfigError
from specbound.models import ExpClassParams

__all__ = [
    "ExpClassConfig",
    "ToleranceConfig",
    "SuiteConfig",
    "default_config_data",
    "load_config",
    "parse_dims",
    "parse_t_window",
]

logger = logging.getLogger(__name__)

DIMS_RANGE = re.compile(r"^\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?$")
_EXPONENT = r"([-+]?\d+(?:\.\d+)?)"
T_WINDOW_RANGE = re.compile(rf"^\s*{_EXPONENT}\s*\.\.\s*{_EXPONENT}\s*$")


def _check_number(name: str, value: object, *, integer: bool = False) -> None:
    # bool is an int subclass, but true/false is never a sensible count.
    allowed: tuple[type, ...] = (int,) if integer else (int, float)
    if isinstance(value, bool) or not isinstance(value, allowed):
        kind = "an integer" if integer else "a number"
        raise ConfigError(f"{name} must be {kind}, got {value!r}")
    if not math.isfinite(value):  # type: ignore[arg-type]
        raise ConfigError(f"{name} must be finite, got {value!r}")


def _check_sequence(name: str, value: object, *, integer: bool = False) -> None:
    if not isinstance(value, (list, tuple)) or not value:
        raise ConfigError(f"{name} must be a nonempty list, got {value!r}")
    for i, item in enumerate(value):
        _check_number(f"{name}[{i}]", item, integer=integer)


@dataclass(frozen=True)
class ExpClassConfig:
    a: float
    alpha: float
    m: float

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            _check_number(f"exp_class.{f.name}", value)
            if value <= 0:
                raise ConfigError(f"exp_class.{f.name} must be > 0, got {value!r}")

    def params(self) -> ExpClassParams:
        return ExpClassParams(self.a, self.alpha, self.m)


@dataclass(frozen=True)
class ToleranceConfig:
    """``slack``: relative slack a bound may be violated by before a
    check fails. ``rel``: relative tolerance for identities between bounds
    (dominance, scaling)."""

    slack: float
    rel: float

    def __post_init__(self) -> None:
        _check_number("tol.slack", self.slack)
        _check_number("tol.rel", self.rel)
        if self.slack < 0:
            raise ConfigError(f"tol.slack must be >= 0, got {self.slack!r}")
        if not 0 < self.rel < 1:
            raise ConfigError(f"tol.rel must be in (0, 1), got {self.rel!r}")


@dataclass(frozen=True)
class SuiteConfig:
    seed: int
    trials: int
    dims: tuple[int, ...]
    delta_grid: tuple[float, ...]
    epsilon_grid: tuple[float, ...]
    n_shift: int
    exp_class: ExpClassConfig
    tol: ToleranceConfig

    def __post_init__(self) -> None:
        _check_number("seed", self.seed, integer=True)
        _check_number("trials", self.trials, integer=True)
        _check_number("n_shift", self.n_shift, integer=True)
        _check_sequence("dims", self.dims, integer=True)
        _check_sequence("delta_grid", self.delta_grid)
        _check_sequence("epsilon_grid", self.epsilon_grid)
        if self.seed < 0:
            raise ConfigError(f"seed must be >= 0, got {self.seed}")
        if self.trials < 0:
            raise ConfigError(f"trials must be >= 0, got {self.trials}")
        if self.n_shift < 2:
            raise ConfigError(f"n_shift must be >= 2, got {self.n_shift}")
        if any(d < 1 for d in self.dims):
            raise ConfigError(f"dims must all be >= 1, got {list(self.dims)}")
        if self.trials > 1 << TRIAL_KEY_TRIAL_BITS:
            raise ConfigError(
                f"trials must be <= {1 << TRIAL_KEY_TRIAL_BITS}, got {self.trials}"
            )
        if any(d < 0 for d in self.delta_grid):
            raise ConfigError(f"delta_grid must be >= 0, got {list(self.delta_grid)}")
        if len(self.delta_grid) > 1 << TRIAL_KEY_DELTA_BITS:
            raise ConfigError(
                f"delta_grid may hold at most {1 << TRIAL_KEY_DELTA_BITS} values, "
                f"got {len(self.delta_grid)}"
            )
        if any(not 0 < e < 1 for e in self.epsilon_grid):
            raise ConfigError(
                f"epsilon_grid values must be in (0, 1), got {list(self.epsilon_grid)}"
            )
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "delta_grid", tuple(float(d) for d in self.delta_grid))
        object.__setattr__(
            self, "epsilon_grid", tuple(float(e) for e in self.epsilon_grid)
        )

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> SuiteConfig:
        _reject_unknown("config", data, {f.name for f in fields(cls)})
        try:
            exp_class = data["exp_class"]
            tol = data["tol"]
            for name, value, nested in (
                ("exp_class", exp_class, ExpClassConfig),
                ("tol", tol, ToleranceConfig),
            ):
                if not isinstance(value, Mapping):
                    raise ConfigError(f"{name} must be an object, got {value!r}")
                _reject_unknown(name, value, {f.name for f in fields(nested)})
            return cls(
                seed=data["seed"],
                trials=data["trials"],
                dims=data["dims"],
                delta_grid=data["delta_grid"],
                epsilon_grid=data["epsilon_grid"],
                n_shift=data["n_shift"],
                exp_class=ExpClassConfig(**exp_class),
                tol=ToleranceConfig(**tol),
            )
        except (KeyError, TypeError) as e:
            raise ConfigError(f"incomplete config: {e}") from e

    def replace(self, **changes: Any) -> SuiteConfig:
        return replace(self, **changes)


def _reject_unknown(where: str, data: Mapping[str, Any], known: set[str]) -> None:
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(unknown)}")


def default_config_data() -> dict[str, Any]:
    text = (
        importlib_resources.files("specbound")
        .joinpath("data/default-config.json")
        .read_text(encoding="utf-8")
    )
    data: dict[str, Any] = json.loads(text)
    return data


def _merge(base: dict[str, Any], overlay: Mapping[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in overlay.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), Mapping):
            merged[key] = {**merged[key], **value}
        else:
            merged[key] = value
    return merged


def parse_dims(text: str) -> tuple[int, ...]:
    """Parse ``"a..b"`` (inclusive) or a single ``"n"``."""
    match = DIMS_RANGE.match(text)
    if not match:
        raise ConfigError(f"dims must look like 'a..b' or 'n', got {text!r}")
    low = int(match.group(1))
    high = int(match.group(2)) if match.group(2) is not None else low
    if low < 1 or high < low:
        raise ConfigError(f"dims range must satisfy 1 <= a <= b, got {text!r}")
    return tuple(range(low, high + 1))


def parse_t_window(text: str) -> tuple[float, float]:
    """Parse ``"lo..hi"``, the base-10 exponents of a range of ``t``."""
    match = T_WINDOW_RANGE.match(text)
    if not match:
        raise ConfigError(f"t window must look like 'lo..hi', got {text!r}")
    low, high = float(match.group(1)), float(match.group(2))
    if not low < high:
        raise ConfigError(f"t window must satisfy lo < hi, got {text!r}")
    return low, high


def load_config(
    path: str | None = None,
    *,
    seed: int | None = None,
    trials: int | None = None,
    dims: Sequence[int] | None = None,
) -> SuiteConfig:
    data = default_config_data()
    if path is not None:
        try:
            with open(path, encoding="utf-8") as f:
                user = json.load(f)
        except OSError as e:
            raise ConfigError(f"could not read config file {path!r}: {e}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"config file {path!r} is not valid JSON: {e}") from e
        if not isinstance(user, dict):
            raise ConfigError(f"config file {path!r} must hold a JSON object")
        _reject_unknown(f"config file {path!r}", user, set(data))
        data = _merge(data, user)
        logger.info("loaded config from %s", path)

    config = SuiteConfig.from_mapping(data)
    overrides: dict[str, Any] = {}
    if seed is not None:
        overrides["seed"] = seed
    if trials is not None:
        overrides["trials"] = trials
    if dims is not None:
        overrides["dims"] = tuple(dims)
    return config.replace(**overrides) if overrides else config

from __future__ import annotations

import json
import pathlib
from typing import Any

import pytest

from specbound.config import (
    ExpClassConfig,
    SuiteConfig,
    ToleranceConfig,
    default_config_data,
    load_config,
    parse_dims,
    parse_t_window,
)
from specbound.exceptions import ConfigError


def write_config(tmp_path: pathlib.Path, data: Any) -> str:
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def test_default_config() -> None:
    config = load_config()
    assert config.seed == 42
    assert config.trials == 1000
    assert config.dims == tuple(range(2, 11))
    assert config.delta_grid == (1e-1, 1e-3)
    assert config.epsilon_grid == (1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
    assert config.n_shift == 6
    assert config.exp_class == ExpClassConfig(1.0, 1.0, 1.0)
    assert config.tol == ToleranceConfig(1e-8, 1e-10)


def test_default_config_data_is_a_fresh_copy() -> None:
    data = default_config_data()
    data["seed"] = 0
    assert default_config_data()["seed"] == 42


def test_config_file_is_merged_over_defaults(tmp_path: pathlib.Path) -> None:
    path = write_config(
        tmp_path, {"trials": 3, "exp_class": {"alpha": 0.5}, "tol": {"slack": 0}}
    )
    config = load_config(path)
    assert config.trials == 3
    assert config.seed == 42
    assert config.exp_class == ExpClassConfig(1.0, 0.5, 1.0)
    assert config.tol == ToleranceConfig(0, 1e-10)


def test_overrides_win_over_config_file(tmp_path: pathlib.Path) -> None:
    path = write_config(tmp_path, {"seed": 1, "trials": 3, "dims": [4]})
    config = load_config(path, seed=7, trials=0, dims=[2, 3])
    assert (config.seed, config.trials, config.dims) == (7, 0, (2, 3))


@pytest.mark.parametrize(
    "data, message",
    [
        ({"trails": 3}, "unknown key"),
        ({"exp_class": {"beta": 1}}, "unknown key"),
        ({"tol": {"slack": 1e-8, "abs": 0}}, "unknown key"),
        ({"exp_class": 1.0}, "must be an object"),
        ({"seed": -1}, "seed"),
        ({"seed": 1.5}, "integer"),
        ({"trials": True}, "integer"),
        ({"trials": "10"}, "integer"),
        ({"dims": []}, "nonempty"),
        ({"dims": [0, 1]}, "dims"),
        ({"dims": 4}, "list"),
        ({"delta_grid": [-1e-3]}, "delta_grid"),
        ({"delta_grid": [1e-3] * 257}, "at most 256 values"),
        ({"trials": 2**32 + 1}, "trials must be <= 4294967296"),
        ({"epsilon_grid": [0.5, 1.0]}, "epsilon_grid"),
        ({"epsilon_grid": ["1e-3"]}, "number"),
        ({"n_shift": 1}, "n_shift"),
        ({"exp_class": {"a": 0}}, "exp_class.a"),
        ({"tol": {"rel": 1}}, "tol.rel"),
        ({"tol": {"slack": -1}}, "tol.slack"),
        ({"tol": {"slack": float("nan")}}, "finite"),
    ],
)
def test_invalid_config_files(tmp_path: pathlib.Path, data: Any, message: str) -> None:
    with pytest.raises(ConfigError, match=message):
        load_config(write_config(tmp_path, data))


def test_config_file_must_be_an_object(tmp_path: pathlib.Path) -> None:
    with pytest.raises(ConfigError, match="JSON object"):
        load_config(write_config(tmp_path, [1, 2]))


def test_config_file_must_be_valid_json(tmp_path: pathlib.Path) -> None:
    path = tmp_path / "config.json"
    path.write_text("{seed: 1", encoding="utf-8")
    with pytest.raises(ConfigError, match="not valid JSON"):
        load_config(str(path))


def test_missing_config_file(tmp_path: pathlib.Path) -> None:
    with pytest.raises(ConfigError, match="could not read"):
        load_config(str(tmp_path / "missing.json"))


def test_incomplete_mapping() -> None:
    data = default_config_data()
    del data["tol"]
    with pytest.raises(ConfigError, match="incomplete"):
        SuiteConfig.from_mapping(data)


def test_replace_validates() -> None:
    config = load_config()
    assert config.replace(trials=5).trials == 5
    with pytest.raises(ConfigError):
        config.replace(trials=-5)


def test_exp_class_config_params() -> None:
    params = ExpClassConfig(0.5, 2.0, 3.0).params()
    assert (params.a, params.alpha, params.m) == (0.5, 2.0, 3.0)


@pytest.mark.parametrize(
    "text, dims",
    [
        ("2..10", tuple(range(2, 11))),
        ("3", (3,)),
        (" 4 .. 5 ", (4, 5)),
        ("7..7", (7,)),
    ],
)
def test_parse_dims(text: str, dims: tuple[int, ...]) -> None:
    assert parse_dims(text) == dims


@pytest.mark.parametrize("text", ["", "a..b", "2-10", "5..2", "0..3", "1..", "-1"])
def test_parse_dims_rejects(text: str) -> None:
    with pytest.raises(ConfigError):
        parse_dims(text)


@pytest.mark.parametrize(
    "text, window",
    [("-30..-20", (-30.0, -20.0)), (" -12.5 .. -8 ", (-12.5, -8.0)), ("-1..+2", (-1.0, 2.0))],
)
def test_parse_t_window(text: str, window: tuple[float, float]) -> None:
    assert parse_t_window(text) == window


@pytest.mark.parametrize("text", ["", "-20", "-20..-30", "-20..-20", "a..b", "-30...-20"])
def test_parse_t_window_rejects(text: str) -> None:
    with pytest.raises(ConfigError):
        parse_t_window(text)

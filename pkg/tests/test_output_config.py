import numpy as np
import pytest

from twomodebec.config import RunConfig, apply_overrides, load_config
from twomodebec.errors import ConfigError
from twomodebec.integrator import Trajectory
from twomodebec.output import (TRAJECTORY_HEADER, read_csv_columns, write_csv,
                               write_meta, write_trajectory_csv)


def test_csv_round_trip_precision(tmp_path):
    path = tmp_path / "vals.csv"
    value = 0.1234567890123456789
    write_csv(path, ["x", "tag"], [(value, "row0")])
    cols = read_csv_columns(path)
    assert float(cols["x"][0]) == value
    assert cols["tag"] == ["row0"]


def test_trajectory_csv(tmp_path):
    t = np.linspace(0.0, 1.0, 3)
    a = np.array([1.0, 0.8, 0.6], dtype=complex)
    b = np.sqrt(1.0 - np.abs(a) ** 2).astype(complex)
    traj = Trajectory(t=t, a=a, b=b, dt=0.01)
    path = tmp_path / "traj.csv"
    write_trajectory_csv(path, traj)
    cols = read_csv_columns(path)
    assert list(cols) == TRAJECTORY_HEADER
    assert float(cols["pop_a"][1]) == pytest.approx(0.64)


def test_meta_sidecar_flattens(tmp_path):
    path = tmp_path / "meta"
    write_meta(path, {"command": "evolve", "config": {"model": {"c": 1.0}}})
    text = path.read_text()
    assert "command = evolve\n" in text
    assert "config.model.c = 1\n" in text


def test_config_defaults_and_types(tmp_path):
    cfg = load_config(None)
    assert cfg.get("grid", "n") == 201
    assert cfg.get("run", "seed") == 0
    ini = tmp_path / "run.ini"
    ini.write_text("[model]\ngamma = -1.5\nc = 1\n[grid]\nn = 11\n")
    cfg = load_config(str(ini))
    assert cfg.get("model", "gamma") == -1.5
    assert isinstance(cfg.get("grid", "n"), int)
    p = cfg.model_params()
    assert p.gamma == -1.5 and p.c == 1.0


def test_config_rejects_unknowns(tmp_path):
    bad1 = tmp_path / "a.ini"
    bad1.write_text("[warp]\nspeed = 9\n")
    with pytest.raises(ConfigError):
        load_config(str(bad1))
    bad2 = tmp_path / "b.ini"
    bad2.write_text("[model]\ngama = 1\n")
    with pytest.raises(ConfigError):
        load_config(str(bad2))
    bad3 = tmp_path / "c.ini"
    bad3.write_text("[model]\ngamma = fast\n")
    with pytest.raises(ConfigError):
        load_config(str(bad3))
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.ini"))


def test_config_invalid_physics_raises(tmp_path):
    ini = tmp_path / "bad.ini"
    ini.write_text("[model]\nc = -2\n")
    cfg = load_config(str(ini))
    with pytest.raises(ConfigError):
        cfg.model_params()


def test_overrides_win_over_file(tmp_path):
    ini = tmp_path / "run.ini"
    ini.write_text("[model]\ngamma = 1.0\n")
    cfg = load_config(str(ini))
    apply_overrides(cfg, ["model.gamma=2.5", "grid.n=7"])
    assert cfg.get("model", "gamma") == 2.5
    assert cfg.get("grid", "n") == 7
    with pytest.raises(ConfigError):
        apply_overrides(cfg, ["modelgamma2.5"])
    with pytest.raises(ConfigError):
        apply_overrides(cfg, ["model.nope=1"])


def test_require_missing_key():
    cfg = RunConfig()
    with pytest.raises(ConfigError):
        cfg.require("sweep", "rate")

"""Run configuration: INI file of record plus command-line overrides.

Sections and keys are validated against a fixed schema; unknown keys are
rejected so a typo cannot silently fall back to a default.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field

from .errors import ConfigError
from .params import ModelParams

# section -> key -> type
_SCHEMA = {
    "model": {"gamma": float, "delta0": float, "c": float, "A": float,
              "omega": float},
    "integrator": {"dt": float, "norm_tol": float, "n_samples": int,
                   "periods_per_step_min": int,
                   "steps_per_natural_period": int},
    "grid": {"gamma_min": float, "gamma_max": float, "n": int},
    "quantum": {"n_particles": int},
    "sweep": {"gamma_start": float, "gamma_end": float, "rate": float,
              "model": str, "ramp": float},
    "trapping": {"ensemble_size": int, "perturbation": float},
    "portrait": {"gamma": float, "n_contours": int, "grid": int},
    "evolve": {"model": str, "t_final": float, "s0": float, "phi0": float},
    "validity": {"multipliers": str, "t_final": float},
    "run": {"seed": int, "threads": int},
}

_DEFAULTS = {
    "model": {"gamma": 0.0, "delta0": 0.2, "c": 0.0, "A": 0.0, "omega": 0.0},
    "grid": {"gamma_min": -2.0, "gamma_max": 2.0, "n": 201},
    "quantum": {"n_particles": 0},
    "sweep": {"model": "effective"},
    "trapping": {"ensemble_size": 50, "perturbation": 1e-3},
    "portrait": {"gamma": 0.0, "n_contours": 24, "grid": 400},
    "evolve": {"model": "effective", "t_final": 100.0, "s0": 0.0, "phi0": 0.0},
    "validity": {"multipliers": "10,20,40,80", "t_final": 250.0},
    "run": {"seed": 0, "threads": 1},
}


@dataclass
class RunConfig:
    """Validated, typed view of one run's configuration."""

    sections: dict = field(default_factory=dict)

    def get(self, section: str, key: str, default=None):
        if section in self.sections and key in self.sections[section]:
            return self.sections[section][key]
        if default is not None:
            return default
        return _DEFAULTS.get(section, {}).get(key)

    def require(self, section: str, key: str):
        v = self.get(section, key)
        if v is None:
            raise ConfigError(f"missing required config value [{section}] {key}")
        return v

    def model_params(self) -> ModelParams:
        try:
            return ModelParams(gamma=self.get("model", "gamma"),
                               delta0=self.get("model", "delta0"),
                               c=self.get("model", "c"),
                               A=self.get("model", "A"),
                               omega=self.get("model", "omega"))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def set_value(self, section: str, key: str, raw: str):
        if section not in _SCHEMA or key not in _SCHEMA[section]:
            raise ConfigError(f"unknown config key [{section}] {key}")
        typ = _SCHEMA[section][key]
        try:
            val = typ(raw) if typ is not str else raw
        except ValueError as exc:
            raise ConfigError(
                f"bad value for [{section}] {key}: {raw!r}") from exc
        self.sections.setdefault(section, {})[key] = val

    def flat(self) -> dict:
        return {s: dict(kv) for s, kv in self.sections.items()}


def load_config(path: str | None) -> RunConfig:
    cfg = RunConfig()
    if path is None:
        return cfg
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path!r}")
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown config section [{section}]")
        for key, raw in parser.items(section):
            cfg.set_value(section, key, raw)
    return cfg


def apply_overrides(cfg: RunConfig, overrides: list[str]):
    """Apply repeated --set section.key=value flags (flags win over file)."""
    for item in overrides:
        if "=" not in item or "." not in item.split("=", 1)[0]:
            raise ConfigError(
                f"override must look like section.key=value, got {item!r}")
        target, raw = item.split("=", 1)
        section, key = target.split(".", 1)
        cfg.set_value(section.strip(), key.strip(), raw.strip())

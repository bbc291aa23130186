"""JSON configuration: SI blocks or a normalized block, never both."""
from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from typing import Any, Optional

from .params import (CavitySpec, DriveSpec, MechanicalSpec, NormalizedParams, ParameterError,
                     PhotothermalSpec, System)

SI_BLOCKS = ("cavity", "mechanics", "photothermal", "drive")
FIELDS = {
    "cavity": {"L0": "L0", "lambda": "lam", "T": "T", "A": "A", "R": "R"},
    "mechanics": {"m": "m", "omega0": "omega0", "Q": "Q"},
    "photothermal": {"beta": "beta", "tau_th": "tau_th"},
    "drive": {"P_inc": "P_inc", "delta_c": "delta_c", "T_env": "T_env"},
    "normalized": {k: k for k in ("b", "phi", "phi_nl", "d", "Q", "T", "A", "beta", "n_i")},
}
OPTIONAL = {"cavity": {"R"}, "drive": {"T_env"}, "normalized": {"n_i"}}
SPEC_TYPES = {"cavity": CavitySpec, "mechanics": MechanicalSpec,
              "photothermal": PhotothermalSpec, "drive": DriveSpec}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    raw: dict
    system: Optional[System] = None
    normalized: Optional[NormalizedParams] = None

    @property
    def is_normalized(self) -> bool:
        return self.normalized is not None

    def section(self, name: str) -> dict:
        val = self.raw.get(name, {})
        if not isinstance(val, dict):
            raise ConfigError(f"'{name}' must be an object")
        return val


def _number(block: str, key: str, val: Any) -> float:
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"{block}.{key} must be a number, got {val!r}")
    return float(val)


def _build(block: str, data: Any):
    if not isinstance(data, dict):
        raise ConfigError(f"'{block}' must be an object")
    names = FIELDS[block]
    unknown = set(data) - set(names)
    if unknown:
        raise ConfigError(f"unknown key(s) in '{block}': {', '.join(sorted(unknown))}")
    missing = set(names) - set(data) - OPTIONAL.get(block, set())
    if missing:
        raise ConfigError(f"missing key(s) in '{block}': {', '.join(sorted(missing))}")
    kwargs = {names[k]: (None if v is None and k == "R" else _number(block, k, v)) for k, v in data.items()}
    cls = NormalizedParams if block == "normalized" else SPEC_TYPES[block]
    try:
        return cls(**kwargs)
    except ParameterError as exc:
        raise ConfigError(f"{block}: {exc}") from None


def from_dict(raw: dict) -> Config:
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object")
    present = [b for b in SI_BLOCKS if b in raw]
    if "normalized" in raw:
        if present:
            raise ConfigError("'normalized' cannot be combined with SI blocks "
                              f"({', '.join(present)}); choose one parameterization")
        return Config(raw=raw, normalized=_build("normalized", raw["normalized"]))
    if not present:
        return Config(raw=raw)
    missing = [b for b in SI_BLOCKS if b not in raw]
    if missing:
        raise ConfigError(f"SI configuration is missing block(s): {', '.join(missing)}")
    parts = [_build(b, raw[b]) for b in SI_BLOCKS]
    return Config(raw=raw, system=System(*parts))


def parse(text: str, source: str = "<config>") -> Config:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(raw)


def load(path) -> Config:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text, str(path))


def with_value(raw: dict, path: str, value: float) -> dict:
    """Copy of `raw` with the dotted `block.key` set to `value`."""
    block, _, key = path.partition(".")
    if block not in FIELDS or key not in FIELDS[block]:
        raise ConfigError(f"unknown parameter path '{path}'")
    if block not in raw:
        raise ConfigError(f"parameter path '{path}' refers to a block absent from the config")
    out = copy.deepcopy(raw)
    out[block][key] = float(value)
    return out


def system_to_dict(system: System) -> dict:
    """SI blocks in config layout, the inverse of `from_dict` for SI input."""
    cav, mech, pt, drv = system.cavity, system.mech, system.pt, system.drive
    return {
        "cavity": {"L0": cav.L0, "lambda": cav.lam, "T": cav.T, "A": cav.A, "R": cav.R},
        "mechanics": {"m": mech.m, "omega0": mech.omega0, "Q": mech.Q},
        "photothermal": {"beta": pt.beta, "tau_th": pt.tau_th},
        "drive": {"P_inc": drv.P_inc, "delta_c": drv.delta_c, "T_env": drv.T_env},
    }


def params_to_dict(p: NormalizedParams) -> dict:
    return {"normalized": {k: getattr(p, k) for k in FIELDS["normalized"]}}

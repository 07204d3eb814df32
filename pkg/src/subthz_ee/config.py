"""YAML configuration: loading, validation and round-trip serialization.

Sections and keys mirror the dataclass field names::

    scenario:   {scenario_id, n_bs, total_psat}
    waveform:   WaveformNumerology
    complexity: ComplexityParams
    devices:    {converter, rfic, phased_array}
    geometry:   Geometry (with nested area / panel)
    station:    StationPowerConfig (n_subpanels etc. follow geometry/scenario)
    simulation: SimConfig

Every key is optional; absent keys keep their defaults.
"""
from __future__ import annotations

import typing
from dataclasses import dataclass, field, fields, is_dataclass, replace
from pathlib import Path

import yaml

from .analog import DeviceModels
from .channel import Geometry
from .complexity import ComplexityParams, WaveformNumerology
from .errors import ConfigError, DomainError
from .ledger import ComplexityEnv, StationPowerConfig
from .sim import Scenario, SimConfig

SECTIONS = ("scenario", "waveform", "complexity", "devices", "geometry", "station",
            "simulation")
# Derived from geometry / scenario, so not settable under ``station``.
_STATION_DERIVED = ("n_subpanels", "n_elements_per_subpanel", "total_psat")


@dataclass(frozen=True)
class Config:
    scenario: Scenario = field(default_factory=Scenario)
    devices: DeviceModels = field(default_factory=DeviceModels)
    complexity: ComplexityParams = field(default_factory=ComplexityParams)
    waveform: WaveformNumerology = field(default_factory=WaveformNumerology)
    simulation: SimConfig = field(default_factory=SimConfig)

    @property
    def env(self) -> ComplexityEnv:
        return ComplexityEnv(self.complexity, self.waveform)


def _hints(cls):
    return typing.get_type_hints(cls)


def _convert(value, tp, path):
    origin = typing.get_origin(tp)
    args = typing.get_args(tp)
    if is_dataclass(tp):
        if not isinstance(value, dict):
            raise ConfigError(path, f"expected a mapping, got {type(value).__name__}")
        return build(tp, value, path)
    if origin is typing.Union or (origin is not None and type(None) in args):
        if value is None:
            return None
        inner = [a for a in args if a is not type(None)]
        return _convert(value, inner[0], path)
    if origin is tuple:
        if not isinstance(value, (list, tuple)):
            raise ConfigError(path, "expected a list")
        if len(args) == 2 and args[1] is Ellipsis:
            return tuple(_convert(v, args[0], f"{path}[{i}]") for i, v in enumerate(value))
        if args and len(args) != len(value):
            raise ConfigError(path, f"expected {len(args)} entries, got {len(value)}")
        return tuple(_convert(v, a, f"{path}[{i}]")
                     for i, (v, a) in enumerate(zip(value, args or [typing.Any] * len(value))))
    if tp is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(path, f"expected a number, got {value!r}")
        return float(value)
    if tp is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(path, f"expected an integer, got {value!r}")
        return value
    if tp is bool:
        if not isinstance(value, bool):
            raise ConfigError(path, f"expected true/false, got {value!r}")
        return value
    if tp is str:
        if not isinstance(value, str):
            raise ConfigError(path, f"expected a string, got {value!r}")
        return value
    return value


def build(cls, data: dict | None, path: str = "", base=None, exclude=()):
    """Instantiate dataclass ``cls`` from a mapping, validating every key.

    Unknown keys, type mismatches and invariant violations raise
    :class:`ConfigError` carrying the dotted key path.
    """
    data = data or {}
    hints = _hints(cls)
    names = {f.name for f in fields(cls) if f.init} - set(exclude)
    kwargs = {}
    for key, value in data.items():
        sub = f"{path}.{key}" if path else key
        if key not in names:
            raise ConfigError(sub, "unknown key")
        kwargs[key] = _convert(value, hints[key], sub)
    try:
        return replace(base, **kwargs) if base is not None else cls(**kwargs)
    except ConfigError:
        raise
    except (DomainError, ValueError, TypeError) as exc:
        raise ConfigError(_blame(path, str(exc), kwargs), str(exc)) from None


def _blame(path, message, kwargs):
    """Best guess of the offending key: a supplied field named in the message."""
    for key in sorted(kwargs, key=len, reverse=True):
        if key in message:
            return f"{path}.{key}" if path else key
    return path or "<root>"


def config_from_dict(data: dict | None) -> Config:
    data = data or {}
    if not isinstance(data, dict):
        raise ConfigError("<root>", "top level must be a mapping")
    for key in data:
        if key not in SECTIONS:
            raise ConfigError(key, "unknown section")
    sections = {k: ({} if data.get(k) is None else data[k]) for k in SECTIONS}
    for key, value in sections.items():
        if not isinstance(value, dict):
            raise ConfigError(key, "section must be a mapping")

    waveform = build(WaveformNumerology, sections["waveform"], "waveform")
    complexity = build(ComplexityParams, sections["complexity"], "complexity")
    devices = build(DeviceModels, sections["devices"], "devices")
    geometry = build(Geometry, sections["geometry"], "geometry")
    station = build(StationPowerConfig, sections["station"], "station",
                    exclude=_STATION_DERIVED)
    simulation = build(SimConfig, sections["simulation"], "simulation")

    scn = dict(sections["scenario"])
    explicit_id = scn.pop("scenario_id", None)
    scenario = build(Scenario, scn, "scenario", exclude=("geometry", "station"))
    scenario = replace(scenario, geometry=geometry, station=station)
    if explicit_id is not None:
        scenario = replace(scenario, scenario_id=_convert(explicit_id, str, "scenario.scenario_id"))
    else:
        scenario = replace(scenario, scenario_id=scenario.default_id())
    return Config(scenario, devices, complexity, waveform, simulation)


def load_config(path: str | Path | None) -> Config:
    """Read a YAML file into a validated :class:`Config` (``None``: defaults)."""
    if path is None:
        return config_from_dict({})
    path = Path(path)
    if not path.is_file():
        raise ConfigError("config", f"file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ConfigError("config", f"cannot parse {path}: {exc}") from None
    return config_from_dict(data)


def _plain(obj):
    if is_dataclass(obj):
        return {f.name: _plain(getattr(obj, f.name)) for f in fields(obj) if f.init}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def config_to_dict(cfg: Config) -> dict:
    station = _plain(cfg.scenario.station)
    for key in _STATION_DERIVED:
        station.pop(key)
    return {
        "scenario": {"scenario_id": cfg.scenario.scenario_id, "n_bs": cfg.scenario.n_bs,
                     "total_psat": cfg.scenario.total_psat},
        "waveform": _plain(cfg.waveform),
        "complexity": _plain(cfg.complexity),
        "devices": _plain(cfg.devices),
        "geometry": _plain(cfg.scenario.geometry),
        "station": station,
        "simulation": _plain(cfg.simulation),
    }


def dump_config(cfg: Config) -> str:
    return yaml.safe_dump(config_to_dict(cfg), sort_keys=False)


def save_config(cfg: Config, path: str | Path) -> None:
    Path(path).write_text(dump_config(cfg))


__all__ = ["Config", "build", "config_from_dict", "load_config", "config_to_dict",
           "dump_config", "save_config", "SECTIONS"]

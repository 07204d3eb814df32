"""Per-station and per-deployment power composition.

A station's transmit side draws, per active RF chain, baseband processing,
two DACs (I and Q), one Tx RFIC and ``N_M`` phased-array elements; the
receive side mirrors it with ADCs, the Rx RFIC and Rx elements.  Each side is
weighted by its duty cycle and the power-supply loss adds ``(1 - E_PS)`` on
top.  Baseband power is counted per chain on both sides.
"""
from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass, field

from .analog import (DeviceModels, adc_power, dac_power, phased_array_rx_element_power,
                     phased_array_tx_element_power, rfic_rx_power, rfic_tx_power,
                     split_bs_power)
from .complexity import (DEMAPPERS, EQUALIZERS, MODULATIONS, ComplexityParams,
                         StreamConfig, WaveformNumerology, bb_rx_power, bb_tx_power)
from .errors import DomainError

GROUPS = ("bb_digital", "converters", "rfic", "phased_array", "psu_overhead")
SIDES = ("tx", "rx")


@dataclass(frozen=True)
class StationPowerConfig:
    """Power-relevant configuration of one base station."""
    n_subpanels: int = 1
    n_elements_per_subpanel: int = 64
    streams_per_chain: int = 1
    total_psat: float = 35.0  # dBm per BS
    duty_dl: float = 0.75
    duty_ul: float = 0.25
    psu_efficiency: float = 0.92
    modulation: str = "QPSK"
    eq_kind: str = "ZF"
    demap_kind: str = "MaxLogMap"

    def __post_init__(self):
        if self.n_subpanels < 1 or self.n_elements_per_subpanel < 1:
            raise DomainError("n_subpanels and n_elements_per_subpanel must be >= 1")
        if self.streams_per_chain < 1:
            raise DomainError("streams_per_chain must be >= 1")
        for name in ("duty_dl", "duty_ul"):
            if not 0 <= getattr(self, name) <= 1:
                raise DomainError(f"{name} must lie in [0, 1]")
        if self.duty_dl + self.duty_ul > 1 + 1e-12:
            raise DomainError("duty_dl + duty_ul must not exceed 1")
        if not 0 < self.psu_efficiency <= 1:
            raise DomainError("psu_efficiency must lie in (0, 1]")
        if self.modulation not in MODULATIONS:
            raise DomainError(f"modulation must be one of {sorted(MODULATIONS)}")
        if self.eq_kind not in EQUALIZERS:
            raise DomainError(f"eq_kind must be one of {EQUALIZERS}")
        if self.demap_kind not in DEMAPPERS:
            raise DomainError(f"demap_kind must be one of {DEMAPPERS}")

    @property
    def s(self) -> int:
        return MODULATIONS[self.modulation]

    @property
    def psu_factor(self) -> float:
        return 1.0 + (1.0 - self.psu_efficiency)


@dataclass(frozen=True)
class ComplexityEnv:
    params: ComplexityParams = field(default_factory=ComplexityParams)
    waveform: WaveformNumerology = field(default_factory=WaveformNumerology)


@dataclass
class PowerBreakdown:
    """Watts per functional group and side."""
    tx: dict[str, float] = field(default_factory=lambda: dict.fromkeys(GROUPS, 0.0))
    rx: dict[str, float] = field(default_factory=lambda: dict.fromkeys(GROUPS, 0.0))

    @property
    def tx_total(self) -> float:
        return sum(self.tx[g] for g in GROUPS)

    @property
    def rx_total(self) -> float:
        return sum(self.rx[g] for g in GROUPS)

    @property
    def total(self) -> float:
        return self.tx_total + self.rx_total

    def __add__(self, other: "PowerBreakdown") -> "PowerBreakdown":
        return PowerBreakdown({g: self.tx[g] + other.tx[g] for g in GROUPS},
                              {g: self.rx[g] + other.rx[g] for g in GROUPS})

    def scaled(self, factor: float) -> "PowerBreakdown":
        return PowerBreakdown({g: self.tx[g] * factor for g in GROUPS},
                              {g: self.rx[g] * factor for g in GROUPS})

    def rows(self, scenario: str = "") -> list[dict]:
        """Stacked-bar layout: one row per (side, group)."""
        return [{"scenario": scenario, "side": side, "group": g,
                 "watts": getattr(self, side)[g]}
                for side in SIDES for g in GROUPS]

    def to_dict(self) -> dict:
        return {"tx": dict(self.tx), "rx": dict(self.rx),
                "tx_total": self.tx_total, "rx_total": self.rx_total,
                "total": self.total}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def chain_leaf_powers(cfg: StationPowerConfig, env: ComplexityEnv | None = None,
                      devices: DeviceModels | None = None) -> dict[str, dict[str, float]]:
    """Undiscounted power of one RF chain, by side and group.

    No duty cycle or power-supply loss applied.  Baseband is evaluated for
    a single chain carrying ``streams_per_chain`` streams.
    """
    env = env or ComplexityEnv()
    devices = devices or DeviceModels()
    sc = StreamConfig(K=cfg.streams_per_chain, M=1)
    _, psat_element = split_bs_power(cfg.total_psat, cfg.n_subpanels,
                                     cfg.n_elements_per_subpanel)
    n_el = cfg.n_elements_per_subpanel
    tx = {
        "bb_digital": bb_tx_power(env.params, cfg.s, sc, env.waveform),
        "converters": 2 * dac_power(devices.converter),
        "rfic": rfic_tx_power(devices.rfic),
        "phased_array": n_el * phased_array_tx_element_power(devices.phased_array,
                                                             psat_element),
    }
    rx = {
        "bb_digital": bb_rx_power(env.params, cfg.s, cfg.eq_kind, cfg.demap_kind,
                                  sc, env.waveform),
        "converters": 2 * adc_power(devices.converter),
        "rfic": rfic_rx_power(devices.rfic),
        "phased_array": n_el * phased_array_rx_element_power(devices.phased_array),
    }
    return {"tx": tx, "rx": rx}


def _check_active(active: float, cfg: StationPowerConfig) -> float:
    if active is None:
        return float(cfg.n_subpanels)
    if not 0 <= active <= cfg.n_subpanels:
        raise DomainError(f"active chains {active} outside [0, {cfg.n_subpanels}]")
    return float(active)


def compose_side(leaves: dict[str, float], chains: float, duty: float,
                 psu_efficiency: float) -> dict[str, float]:
    """Scale per-chain leaf powers by chain count and duty cycle, add PSU loss."""
    groups = {g: leaves[g] * chains * duty for g in GROUPS[:-1]}
    groups["psu_overhead"] = sum(groups.values()) * (1.0 - psu_efficiency)
    return groups


def station_tx_power(cfg: StationPowerConfig, env: ComplexityEnv | None = None,
                     devices: DeviceModels | None = None,
                     active_chains: float | None = None) -> tuple[float, PowerBreakdown]:
    """Transmit-side power of one BS [W] and its breakdown.

    ``active_chains`` (default: all ``n_subpanels``) may be fractional, an
    expectation over time.  The per-element output power always follows from
    splitting ``total_psat`` over all subpanels.
    """
    chains = _check_active(active_chains, cfg)
    leaves = chain_leaf_powers(cfg, env, devices)["tx"]
    breakdown = PowerBreakdown(tx=compose_side(leaves, chains, cfg.duty_dl, cfg.psu_efficiency))
    return breakdown.total, breakdown


def station_rx_power(cfg: StationPowerConfig, env: ComplexityEnv | None = None,
                     devices: DeviceModels | None = None,
                     active_chains: float | None = None) -> tuple[float, PowerBreakdown]:
    """Receive-side counterpart of :func:`station_tx_power`."""
    chains = _check_active(active_chains, cfg)
    leaves = chain_leaf_powers(cfg, env, devices)["rx"]
    breakdown = PowerBreakdown(rx=compose_side(leaves, chains, cfg.duty_ul, cfg.psu_efficiency))
    return breakdown.total, breakdown


def station_power(cfg, env=None, devices=None, active_chains=None):
    _, tx = station_tx_power(cfg, env, devices, active_chains)
    _, rx = station_rx_power(cfg, env, devices, active_chains)
    breakdown = tx + rx
    return breakdown.total, breakdown


def deployment_power(cfgs: StationPowerConfig | Sequence[StationPowerConfig],
                     n_bs: int | None = None,
                     active_chains: float | Sequence[float] | None = None,
                     env: ComplexityEnv | None = None,
                     devices: DeviceModels | None = None) -> tuple[float, PowerBreakdown]:
    """Total power of a deployment [W], summed over base stations.

    Parameters
    ----------
    cfgs : StationPowerConfig or sequence of them
        One config shared by all ``n_bs`` stations, or one per station.
    n_bs : int, optional
        Number of stations; required when a single config is given.
    active_chains : float or sequence of float, optional
        Expected number of active RF chains per station.  ``None`` means all
        chains are active.  Every per-chain group scales with it.
    """
    if isinstance(cfgs, StationPowerConfig):
        if n_bs is None:
            raise DomainError("n_bs is required with a single station config")
        cfgs = [cfgs] * n_bs
    else:
        cfgs = list(cfgs)
        if n_bs is not None and n_bs != len(cfgs):
            raise DomainError(f"n_bs={n_bs} but {len(cfgs)} station configs given")
    if n_bs is not None and n_bs < 0:
        raise DomainError("n_bs must be non-negative")
    if active_chains is None or isinstance(active_chains, (int, float)):
        active_chains = [active_chains] * len(cfgs)
    elif len(active_chains) != len(cfgs):
        raise DomainError("active_chains needs one entry per station")

    total = PowerBreakdown()
    for cfg, active in zip(cfgs, active_chains):
        _, breakdown = station_power(cfg, env, devices,
                                     None if active is None else float(active))
        total = total + breakdown
    return total.total, total

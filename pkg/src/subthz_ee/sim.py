"""Monte-Carlo evaluation of downlink area throughput.

One drop is one second of operation: UEs are placed uniformly at random,
each attaches to the (BS, beam) pair with the strongest received power,
UEs of a BS are spread over its RF chains, and the UEs sharing a chain get
equal time shares (the proportional-fair optimum for rates that are static
within the drop).  Every active chain transmits full-buffer and interferes
with every UE it does not serve, through the beams it uses during the drop.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .channel import (Area, Geometry, db_to_lin, lin_to_db, los_probability,
                      noise_power, pathloss, shadowing_std, beam_gain)
from .errors import ConfigError
from .ledger import StationPowerConfig

UE_COUNTS = (4, 8, 16, 32)
PSAT_SWEEP = (11.0, 17.0, 23.0, 29.0, 35.0)


@dataclass(frozen=True)
class Scenario:
    """A deployment: geometry, number of stations and their Tx power."""
    scenario_id: str = "default"
    n_bs: int = 4
    total_psat: float = 35.0  # dBm per BS
    geometry: Geometry = field(default_factory=Geometry)
    station: StationPowerConfig = field(default_factory=StationPowerConfig)

    def __post_init__(self):
        if self.n_bs < 0:
            raise ConfigError("scenario.n_bs", "must be non-negative")

    @property
    def n_subpanels(self) -> int:
        return self.geometry.panel.subpanel_split

    def station_config(self) -> StationPowerConfig:
        return replace(self.station, n_subpanels=self.n_subpanels,
                       n_elements_per_subpanel=self.geometry.panel.elements_per_subpanel,
                       total_psat=self.total_psat)

    def with_(self, *, n_bs=None, total_psat=None, subpanels=None, scenario_id=None):
        geometry = self.geometry
        if subpanels is not None:
            geometry = replace(geometry, panel=replace(geometry.panel, subpanel_split=subpanels))
        out = replace(self,
                      n_bs=self.n_bs if n_bs is None else n_bs,
                      total_psat=self.total_psat if total_psat is None else total_psat,
                      geometry=geometry)
        return replace(out, scenario_id=scenario_id or out.default_id())

    def default_id(self) -> str:
        r, c = self.geometry.panel.subpanel_shape
        return f"{self.n_subpanels}x{r}x{c}_{self.n_bs}bs_{self.total_psat:g}dbm"


@dataclass(frozen=True)
class SimConfig:
    n_drops: int = 1000
    n_ues: int = 16
    seed: int = 0
    rate_cap_s: float = 8.0
    loss_factor: float = 1.0
    keep_drops: bool = False

    def __post_init__(self):
        if self.n_drops < 1:
            raise ConfigError("simulation.n_drops", "must be >= 1")
        if self.n_ues < 0:
            raise ConfigError("simulation.n_ues", "must be non-negative")
        if self.rate_cap_s <= 0:
            raise ConfigError("simulation.rate_cap_s", "must be positive")
        if not 0 < self.loss_factor <= 1:
            raise ConfigError("simulation.loss_factor", "must lie in (0, 1]")


@dataclass
class DropResult:
    """Per-UE outcome of one drop; arrays are indexed by UE."""
    positions: np.ndarray
    bs: np.ndarray
    chain: np.ndarray
    beam: np.ndarray
    sinr_db: np.ndarray
    snr_db: np.ndarray
    share: np.ndarray
    rate_bps: np.ndarray
    active_chains: np.ndarray  # per BS

    @property
    def throughput_bps(self) -> np.ndarray:
        return self.share * self.rate_bps

    @property
    def total_bps(self) -> float:
        return float(self.throughput_bps.sum())


@dataclass
class SimStats:
    mean_tput_bps: float
    per_drop_bps: np.ndarray
    mean_active_chains: np.ndarray  # per BS
    ci_halfwidth: float
    drops: list[DropResult] | None = None

    def summary(self, scenario_id: str = "") -> dict:
        return {"scenario_id": scenario_id,
                "mean_tput_bps": self.mean_tput_bps,
                "ci_halfwidth": self.ci_halfwidth,
                "mean_active_chains": [float(a) for a in self.mean_active_chains]}


def drop_ues(area: Area, n_ues: int, rng: np.random.Generator,
             height: float = 1.5) -> np.ndarray:
    """Uniform i.i.d. UE positions, shape ``(n_ues, 3)``."""
    xy = rng.random((n_ues, 2)) * (area.width, area.length)
    return np.column_stack([xy, np.full(n_ues, height)])


def associate_and_beam(rx_power_dbm: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Pick the serving (BS, beam) of every UE.

    ``rx_power_dbm`` has shape ``(n_bs, n_ues, n_beams)``.  The single-UE
    rate is monotone in received power, so the strongest pair is always a
    rate maximiser and among pairs whose rates tie at the cap it keeps the
    strongest link.  Exact ties go to the lowest BS index, then the lowest
    beam index.
    """
    n_bs, n_ues, n_beams = rx_power_dbm.shape
    flat = np.moveaxis(rx_power_dbm, 1, 0).reshape(n_ues, n_bs * n_beams)
    best = np.argmax(flat, axis=1)
    return best // n_beams, best % n_beams


def assign_chains(bs: np.ndarray, n_bs: int, n_chains: int) -> np.ndarray:
    """Spread each BS's UEs over its chains, least-loaded chain first."""
    load = np.zeros((n_bs, n_chains), dtype=int)
    chain = np.empty(len(bs), dtype=int)
    for u, b in enumerate(bs):
        c = int(np.argmin(load[b]))
        chain[u] = c
        load[b, c] += 1
    return chain


def schedule_pf(rates) -> np.ndarray:
    """Time shares of the UEs on one chain.

    With rates constant over the scheduling period, maximising the sum of
    log-throughputs ``sum(log(x_i r_i))`` subject to ``sum(x_i) = 1`` gives
    ``x_i = 1/n`` regardless of the rates.
    """
    n = len(np.atleast_1d(rates))
    return np.full(n, 1.0 / n) if n else np.zeros(0)


def link_rate(sinr_db, bandwidth: float, cap_s: float = 8.0, loss_factor: float = 1.0):
    """Truncated Shannon rate [bit/s]."""
    se = np.minimum(np.log2(1.0 + db_to_lin(sinr_db)), cap_s)
    rate = bandwidth * se * loss_factor
    return rate if np.ndim(rate) else float(rate)


class _Deployment:
    """Drop-independent quantities of a scenario."""

    def __init__(self, scenario: Scenario):
        g = scenario.geometry
        if scenario.n_bs < 1:
            raise ConfigError("scenario.n_bs", "simulation needs at least one BS")
        self.geometry = g
        self.sites = g.sites(scenario.n_bs)
        self.positions = np.array([s.position for s in self.sites])
        self.rotations = np.stack([s.rotation() for s in self.sites])
        self.beam_dirs = g.gob().directions()
        self.n_chains = scenario.n_subpanels
        per_chain_dbm = scenario.total_psat - 10.0 * math.log10(self.n_chains)
        self.p_chain_w = float(db_to_lin(per_chain_dbm)) / 1e3
        self.noise_w = float(db_to_lin(noise_power(g.bandwidth, g.noise_figure))) / 1e3

    def coupling_db(self, ues: np.ndarray, rng: np.random.Generator):
        """Beam gain + UE gain - pathloss - shadowing, shape (n_bs, n_ues, n_beams)."""
        g = self.geometry
        v = ues[None, :, :] - self.positions[:, None, :]
        d3d = np.linalg.norm(v, axis=-1)
        d2d = np.linalg.norm(v[..., :2], axis=-1)
        local = np.einsum("bij,buj->bui", self.rotations, v) / d3d[..., None]
        los = rng.random(d2d.shape) < los_probability(d2d, g.los_model)
        shadow = rng.standard_normal(d2d.shape) * shadowing_std(los)
        pl = pathloss(d3d, g.carrier, los)
        gain = beam_gain(g.panel, self.beam_dirs, local)
        return gain + g.ue_gain - (pl + shadow)[..., None]


def run_drop(scenario: Scenario, cfg: SimConfig, rng: np.random.Generator,
             deployment: _Deployment | None = None) -> DropResult:
    dep = deployment or _Deployment(scenario)
    g = scenario.geometry
    ues = drop_ues(g.area, cfg.n_ues, rng, g.ue_height)
    return evaluate_drop(scenario, cfg, ues, rng, dep)


def evaluate_drop(scenario: Scenario, cfg: SimConfig, ues: np.ndarray,
                  rng: np.random.Generator, deployment: _Deployment | None = None) -> DropResult:
    """Associate, schedule and rate UEs at given positions ``ues[n, 3]``.

    ``rng`` supplies the LOS states, then the shadowing, in that order.
    """
    dep = deployment or _Deployment(scenario)
    g = scenario.geometry
    n_bs, n_chains = len(dep.sites), dep.n_chains
    ues = np.asarray(ues, dtype=float).reshape(-1, 3)
    n = len(ues)
    if n == 0:
        empty = np.zeros(0)
        return DropResult(ues, empty.astype(int), empty.astype(int), empty.astype(int),
                          empty, empty, empty, empty, np.zeros(n_bs, dtype=int))

    coupling = db_to_lin(dep.coupling_db(ues, rng))  # (n_bs, n, B)
    p = dep.p_chain_w
    with np.errstate(divide="ignore"):
        bs, beam = associate_and_beam(lin_to_db(p * coupling))
    chain = assign_chains(bs, n_bs, n_chains)

    cid = bs * n_chains + chain
    share = np.zeros(n)
    for c in np.unique(cid):
        members = cid == c
        share[members] = schedule_pf(np.flatnonzero(members))

    # Expected power each chain radiates towards every UE over the drop.
    towards = p * share[:, None] * coupling[bs, :, beam]  # (serving UE, victim UE)
    per_chain = np.zeros((n_bs * n_chains, n))
    np.add.at(per_chain, cid, towards)
    signal = p * coupling[bs, np.arange(n), beam]
    interference = per_chain.sum(axis=0) - per_chain[cid, np.arange(n)]
    interference = np.maximum(interference, 0.0)
    sinr_db = lin_to_db(signal / (interference + dep.noise_w))
    snr_db = lin_to_db(signal / dep.noise_w)
    rate = link_rate(sinr_db, g.bandwidth, cfg.rate_cap_s, cfg.loss_factor)

    active = np.zeros(n_bs, dtype=int)
    for b in range(n_bs):
        active[b] = len(np.unique(chain[bs == b]))
    return DropResult(ues, bs, chain, beam, sinr_db, snr_db, share,
                      np.asarray(rate, dtype=float), active)


def drop_generators(seed: int, n_drops: int) -> list[np.random.Generator]:
    """Independent per-drop streams; drop ``i`` is the same for every scenario."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(n_drops)]


def run_scenario(scenario: Scenario, cfg: SimConfig) -> SimStats:
    """Average area throughput over ``cfg.n_drops`` independent drops."""
    dep = _Deployment(scenario)
    totals = np.empty(cfg.n_drops)
    active = np.zeros((cfg.n_drops, len(dep.sites)))
    kept = [] if cfg.keep_drops else None
    for i, rng in enumerate(drop_generators(cfg.seed, cfg.n_drops)):
        drop = run_drop(scenario, cfg, rng, dep)
        totals[i] = drop.total_bps
        active[i] = drop.active_chains
        if kept is not None:
            kept.append(drop)
    ci = 1.96 * totals.std(ddof=1) / math.sqrt(cfg.n_drops) if cfg.n_drops > 1 else 0.0
    return SimStats(float(totals.mean()), totals, active.mean(axis=0), float(ci), kept)


def sweep(scenario: Scenario, cfg: SimConfig, psat_list=PSAT_SWEEP,
          ue_counts=UE_COUNTS, bs_counts=(4, 8)) -> list[dict]:
    """Throughput grid over Tx power x UE count x BS count.

    One row per cell, ordered BS count, then Tx power, then UE count, the
    layout of a grouped bar chart per subpanel configuration.
    """
    rows = []
    for n_bs in bs_counts:
        for psat in psat_list:
            scn = scenario.with_(n_bs=n_bs, total_psat=psat)
            for n_ues in ue_counts:
                stats = run_scenario(scn, replace(cfg, n_ues=n_ues, keep_drops=False))
                rows.append({
                    "n_subpanels": scn.n_subpanels, "n_bs": n_bs,
                    "total_psat_dbm": float(psat), "n_ues": n_ues,
                    "mean_tput_bps": stats.mean_tput_bps,
                    "ci_halfwidth": stats.ci_halfwidth,
                    "mean_active_chains": float(stats.mean_active_chains.mean()),
                })
    return rows

"""Joint throughput / power evaluation of deployments and their comparison."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analog import DeviceModels
from .errors import ConfigError
from .ledger import ComplexityEnv, PowerBreakdown, deployment_power
from .sim import Scenario, SimConfig, SimStats, run_scenario

# (subpanels, psat of the 4-BS case, psat of the 8-BS case) at 16 UEs
MATCHED_PAIRS = ((1, 35.0, 17.0), (2, 35.0, 17.0), (4, 35.0, 23.0))


@dataclass
class ScenarioResult:
    scenario_id: str
    stats: SimStats | None
    power_w: float
    breakdown: PowerBreakdown

    @property
    def mean_tput_bps(self) -> float:
        return self.stats.mean_tput_bps if self.stats is not None else 0.0

    @property
    def energy_efficiency(self) -> float:
        """Area throughput per Watt of deployment power [bit/J]."""
        return self.mean_tput_bps / self.power_w if self.power_w > 0 else 0.0


def evaluate_scenario(scenario: Scenario, sim: SimConfig, env: ComplexityEnv | None = None,
                      devices: DeviceModels | None = None) -> ScenarioResult:
    """Simulate a scenario, then charge power for the chains it actually used."""
    if scenario.n_bs == 0:
        return ScenarioResult(scenario.scenario_id, None, 0.0, PowerBreakdown())
    stats = run_scenario(scenario, sim)
    power, breakdown = deployment_power(scenario.station_config(), scenario.n_bs,
                                        stats.mean_active_chains, env, devices)
    return ScenarioResult(scenario.scenario_id, stats, power, breakdown)


def _row(scenario: Scenario, result: ScenarioResult) -> dict:
    return {"scenario_id": result.scenario_id, "n_bs": scenario.n_bs,
            "n_subpanels": scenario.n_subpanels, "total_psat_dbm": scenario.total_psat,
            "mean_tput_bps": result.mean_tput_bps, "power_w": result.power_w,
            "ee_bits_per_joule": result.energy_efficiency}


def compare_pair(a: tuple[Scenario, ScenarioResult],
                 b: tuple[Scenario, ScenarioResult]) -> dict:
    """Ratios of ``a`` over ``b``: power a/b, throughput b/a, EE b/a."""
    (sa, ra), (sb, rb) = a, b
    return {
        "scenario_a": ra.scenario_id, "scenario_b": rb.scenario_id,
        "tput_a_bps": ra.mean_tput_bps, "tput_b_bps": rb.mean_tput_bps,
        "power_a_w": ra.power_w, "power_b_w": rb.power_w,
        "power_ratio": _ratio(ra.power_w, rb.power_w),
        "tput_ratio": _ratio(rb.mean_tput_bps, ra.mean_tput_bps),
        "ee_ratio": _ratio(rb.energy_efficiency, ra.energy_efficiency),
    }


def _ratio(num, den):
    if den == 0:
        return 1.0 if num == 0 else float("inf")
    return num / den


def compare_scenarios(items) -> dict:
    """Per-scenario table plus ratios for every ordered pair ``i < j``."""
    items = list(items)
    return {
        "scenarios": [_row(s, r) for s, r in items],
        "pairs": [compare_pair(items[i], items[j])
                  for i in range(len(items)) for j in range(i + 1, len(items))],
    }


def matched_pairs(base: Scenario | None = None) -> list[tuple[Scenario, Scenario]]:
    """4-BS vs 8-BS scenario pairs with (near) equal area throughput."""
    base = base or Scenario()
    return [(base.with_(n_bs=4, total_psat=p4, subpanels=m),
             base.with_(n_bs=8, total_psat=p8, subpanels=m))
            for m, p4, p8 in MATCHED_PAIRS]


def compare_pairs(pairs, sim: SimConfig, env=None, devices=None,
                  results: dict[str, ScenarioResult] | None = None) -> list[dict]:
    """Evaluate (4-BS, 8-BS) pairs; ``results`` may pre-supply evaluations by id."""
    results = {} if results is None else results
    rows = []
    for a, b in pairs:
        evaluated = []
        for scn in (a, b):
            if scn.scenario_id not in results:
                results[scn.scenario_id] = evaluate_scenario(scn, sim, env, devices)
            evaluated.append((scn, results[scn.scenario_id]))
        rows.append(compare_pair(*evaluated))
    return rows


def lookup_pair(results: dict[str, ScenarioResult], id_a: str, id_b: str):
    for key in (id_a, id_b):
        if key not in results:
            raise ConfigError("compare", f"scenario {key!r} has no result")
    return results[id_a], results[id_b]


def ci_overlap(a: SimStats, b: SimStats) -> bool:
    return bool(np.abs(a.mean_tput_bps - b.mean_tput_bps) <= a.ci_halfwidth + b.ci_halfwidth)

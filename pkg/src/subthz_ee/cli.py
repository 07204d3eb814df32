"""Command-line entry point.

Exit codes: 0 success, 2 configuration error, 3 runtime error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from . import reporting
from .config import Config, load_config
from .deployment import compare_pair, evaluate_scenario, matched_pairs
from .errors import ConfigError
from .ledger import deployment_power
from .sim import PSAT_SWEEP, UE_COUNTS, run_scenario, sweep

COMMANDS = ("complexity-report", "power-report", "simulate", "sweep", "compare")
FORMATS = ("csv", "json")

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 2, 3


@dataclass(frozen=True)
class RunSpec:
    command: str
    config: str | None = None
    out: str = "out"
    format: str = "csv"
    seed: int | None = None
    drops: int | None = None
    psat_list: tuple[float, ...] | None = None
    ues: int | None = None
    bs: int | None = None
    subpanels: int | None = None
    pairs: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError("command", f"must be one of {COMMANDS}")
        if self.format not in FORMATS:
            raise ConfigError("format", f"must be one of {FORMATS}")
        if self.drops is not None and self.drops < 1:
            raise ConfigError("drops", "must be >= 1")
        if self.ues is not None and self.ues < 0:
            raise ConfigError("ues", "must be non-negative")
        if self.bs is not None and self.bs not in (4, 8):
            raise ConfigError("bs", "must be 4 or 8")
        if self.subpanels is not None and self.subpanels not in (1, 2, 4):
            raise ConfigError("subpanels", "must be 1, 2 or 4")
        if self.pairs and self.command != "compare":
            raise ConfigError("pair", "only valid with compare")


def resolve(spec: RunSpec) -> Config:
    """Load the config and apply command-line overrides."""
    cfg = load_config(spec.config)
    sim = cfg.simulation
    if spec.seed is not None:
        sim = replace(sim, seed=spec.seed)
    if spec.drops is not None:
        sim = replace(sim, n_drops=spec.drops)
    if spec.ues is not None:
        sim = replace(sim, n_ues=spec.ues)
    scn = cfg.scenario
    if spec.bs is not None or spec.subpanels is not None:
        scn = scn.with_(n_bs=spec.bs, subpanels=spec.subpanels)
    return replace(cfg, scenario=scn, simulation=sim)


def cmd_complexity_report(spec: RunSpec, cfg: Config) -> list[Path]:
    st = cfg.scenario.station
    rows = reporting.complexity_table(cfg.complexity, cfg.waveform, st.eq_kind, st.demap_kind)
    return [reporting.write_table(rows, reporting.COMPLEXITY_HEADER, spec.out,
                                  "complexity", spec.format)]


def _power_scenarios(spec: RunSpec, cfg: Config):
    if spec.bs is not None or spec.subpanels is not None or spec.config is not None:
        return [cfg.scenario]
    return [s for pair in matched_pairs(cfg.scenario) for s in pair]


def cmd_power_report(spec: RunSpec, cfg: Config) -> list[Path]:
    """Rated power (all chains active) per group and side."""
    breakdowns = {}
    for scn in _power_scenarios(spec, cfg):
        _, b = deployment_power(scn.station_config(), scn.n_bs, None, cfg.env, cfg.devices)
        breakdowns[scn.scenario_id] = b
    if spec.format == "csv":
        path = reporting.write_table(reporting.power_table(breakdowns),
                                     reporting.POWER_HEADER, spec.out, "power", "csv")
    else:
        path = reporting.write_json(reporting.power_json(breakdowns), spec.out, "power.json")
    return [path]


def cmd_simulate(spec: RunSpec, cfg: Config) -> list[Path]:
    scn = cfg.scenario
    stats = run_scenario(scn, replace(cfg.simulation, keep_drops=True))
    drops = reporting.write_table(reporting.drop_rows(stats.drops), reporting.DROPS_HEADER,
                                  spec.out, "drops", spec.format)
    summary = reporting.write_json(stats.summary(scn.scenario_id), spec.out, "summary.json")
    return [drops, summary]


def cmd_sweep(spec: RunSpec, cfg: Config) -> list[Path]:
    psat = spec.psat_list if spec.psat_list is not None else PSAT_SWEEP
    ues = (spec.ues,) if spec.ues is not None else UE_COUNTS
    bs = (spec.bs,) if spec.bs is not None else (4, 8)
    rows = sweep(cfg.scenario, cfg.simulation, psat, ues, bs)
    return [reporting.write_table(rows, reporting.SWEEP_HEADER, spec.out, "sweep",
                                  spec.format)]


def cmd_compare(spec: RunSpec, cfg: Config) -> list[Path]:
    """4-BS vs 8-BS comparison; ``--pair A,B`` selects scenarios by id."""
    known = {cfg.scenario.scenario_id: cfg.scenario}
    default_pairs = matched_pairs(cfg.scenario)
    for a, b in default_pairs:
        known.setdefault(a.scenario_id, a)
        known.setdefault(b.scenario_id, b)
    if spec.pairs:
        for ids in spec.pairs:
            for sid in ids:
                if sid not in known:
                    raise ConfigError("pair", f"unknown scenario id {sid!r}")
        pairs = [(known[a], known[b]) for a, b in spec.pairs]
    else:
        pairs = default_pairs

    results = {}
    rows = []
    for pair in pairs:
        evaluated = []
        for scn in pair:
            if scn.scenario_id not in results:
                results[scn.scenario_id] = evaluate_scenario(scn, cfg.simulation, cfg.env,
                                                             cfg.devices)
            evaluated.append((scn, results[scn.scenario_id]))
        rows.append(compare_pair(*evaluated))
    return [reporting.write_table(rows, reporting.COMPARE_HEADER, spec.out, "compare",
                                  spec.format)]


HANDLERS = {
    "complexity-report": cmd_complexity_report,
    "power-report": cmd_power_report,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "compare": cmd_compare,
}


def _float_list(text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated dBm values, got {text!r}")


def _pair(text: str) -> tuple[str, str]:
    parts = text.split(",")
    if len(parts) != 2 or not all(parts):
        raise argparse.ArgumentTypeError(f"expected ID_A,ID_B, got {text!r}")
    return parts[0], parts[1]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subthz-ee",
        description="Energy efficiency of sub-THz indoor deployments.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="YAML configuration file")
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--format", choices=FORMATS, default="csv")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--drops", type=int)
    parser.add_argument("--psat-list", type=_float_list, help="e.g. 11,17,23")
    parser.add_argument("--ues", type=int)
    parser.add_argument("--bs", type=int, choices=(4, 8))
    parser.add_argument("--subpanels", type=int, choices=(1, 2, 4))
    parser.add_argument("--pair", action="append", type=_pair, default=[],
                        help="compare two scenario ids (repeatable)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = RunSpec(command=args.command, config=args.config, out=args.out,
                       format=args.format, seed=args.seed, drops=args.drops,
                       psat_list=args.psat_list, ues=args.ues, bs=args.bs,
                       subpanels=args.subpanels, pairs=tuple(args.pair))
        cfg = resolve(spec)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        paths = HANDLERS[spec.command](spec, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    for path in paths:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

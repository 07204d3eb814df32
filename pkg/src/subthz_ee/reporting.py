"""Plot-ready tables and their CSV/JSON serialization.

Header schemas (one row per record)::

    complexity.csv  block,s,gflops,reference_gflops
    power.csv       scenario,side,group,watts
    drops.csv       drop,bs,chain,ue,sinr_db,share,rate_bps
    sweep.csv       n_subpanels,n_bs,total_psat_dbm,n_ues,mean_tput_bps,ci_halfwidth,mean_active_chains
    compare.csv     scenario_a,scenario_b,tput_a_bps,tput_b_bps,power_a_w,power_b_w,power_ratio,tput_ratio,ee_ratio

Output is a pure function of the inputs: no timestamps, fixed row order and
``repr`` float formatting, so identical runs give identical bytes.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .complexity import (BLOCKS, SPECTRAL_EFFICIENCIES, ComplexityParams, WaveformNumerology,
                         complexity_report)
from .ledger import GROUPS, PowerBreakdown

COMPLEXITY_HEADER = ("block", "s", "gflops", "reference_gflops")
POWER_HEADER = ("scenario", "side", "group", "watts")
DROPS_HEADER = ("drop", "bs", "chain", "ue", "sinr_db", "share", "rate_bps")
SWEEP_HEADER = ("n_subpanels", "n_bs", "total_psat_dbm", "n_ues", "mean_tput_bps",
                "ci_halfwidth", "mean_active_chains")
COMPARE_HEADER = ("scenario_a", "scenario_b", "tput_a_bps", "tput_b_bps", "power_a_w",
                  "power_b_w", "power_ratio", "tput_ratio", "ee_ratio")
SUMMARY_KEYS = ("scenario_id", "mean_tput_bps", "ci_halfwidth", "mean_active_chains")

# Published GFLOPS per block; a dict is keyed by s, a scalar holds for every s.
_REFERENCE = {
    "ldpc_enc": {2: 4.6, 8: 18.4},
    "ldpc_dec": {2: 2293.0, 8: 9175.0},
    "mapping": {2: 11.0, 8: 89.0},
    "ptrs_cp_ins": 0.4,
    "tx_filter": 1258.0,
    "rx_filter": 1258.0,
    "fft": 76.7,
    "ifft": 76.7,
    "chan_est": 0.4,
    "pn_comp": 4.0,
    "netctrl_dl": dict(zip(SPECTRAL_EFFICIENCIES, (669.0, 1336.0, 2002.0, 2669.0))),
    "netctrl_ul": dict(zip(SPECTRAL_EFFICIENCIES, (443.0, 884.0, 1326.0, 1768.0))),
}
_EQ_REFERENCE = {"ZF": 3.7, "MMSE": 29908.0}
_DEMAP_REFERENCE = {"MaxLogMap": {2: 110.0, 6: 5992.0}}


def reference_gflops(block: str, s: int, eq_kind: str = "ZF",
                     demap_kind: str = "MaxLogMap") -> float | None:
    if block == "equalizer":
        ref = _EQ_REFERENCE.get(eq_kind)
    elif block == "demapper":
        ref = _DEMAP_REFERENCE.get(demap_kind)
    else:
        ref = _REFERENCE.get(block)
    if isinstance(ref, dict):
        return ref.get(s)
    return ref


def complexity_table(params: ComplexityParams | None = None,
                     waveform: WaveformNumerology | None = None,
                     eq_kind: str = "ZF", demap_kind: str = "MaxLogMap") -> list[dict]:
    """GFLOPS of every block at every spectral efficiency, block-major."""
    params = params or ComplexityParams()
    reports = {s: complexity_report(params, s, w=waveform, eq_kind=eq_kind,
                                    demap_kind=demap_kind)
               for s in SPECTRAL_EFFICIENCIES}
    return [{"block": b, "s": s, "gflops": reports[s].blocks[b],
             "reference_gflops": reference_gflops(b, s, eq_kind, demap_kind)}
            for b in BLOCKS for s in SPECTRAL_EFFICIENCIES]


def power_table(breakdowns: dict[str, PowerBreakdown]) -> list[dict]:
    rows = []
    for name, breakdown in breakdowns.items():
        rows.extend(breakdown.rows(name))
    return rows


def power_json(breakdowns: dict[str, PowerBreakdown]) -> dict:
    return {name: b.to_dict() for name, b in breakdowns.items()}


def drop_rows(drops) -> list[dict]:
    rows = []
    for i, d in enumerate(drops):
        for u in range(len(d.bs)):
            rows.append({"drop": i, "bs": int(d.bs[u]), "chain": int(d.chain[u]), "ue": u,
                         "sinr_db": float(d.sinr_db[u]), "share": float(d.share[u]),
                         "rate_bps": float(d.rate_bps[u])})
    return rows


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return value


def to_csv(rows: list[dict], header) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row[k]) for k in header])
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def write_table(rows: list[dict], header, out_dir: Path, stem: str, fmt: str) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        path = out_dir / f"{stem}.csv"
        path.write_text(to_csv(rows, header))
    else:
        path = out_dir / f"{stem}.json"
        path.write_text(to_json([{k: row[k] for k in header} for row in rows]))
    return path


def write_json(obj, out_dir: Path, name: str) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text(to_json(obj))
    return path


def breakdown_totals_consistent(b: PowerBreakdown, rtol: float = 1e-9) -> bool:
    s = sum(b.tx[g] + b.rx[g] for g in GROUPS)
    return abs(s - b.total) <= rtol * max(abs(b.total), 1e-300)

"""
Area throughput versus transmit power
=====================================

Monte-Carlo drops of 16 UEs in the 30 m x 60 m hall, for 4 and 8 stations
and the three subpanel splits.  Few drops keep this quick; the CLI ``sweep``
command runs the full grid.
"""

from subthz_ee.sim import Scenario, SimConfig, sweep

cfg = SimConfig(n_drops=50, seed=0)
for split in (1, 2, 4):
    rows = sweep(Scenario().with_(subpanels=split), cfg, psat_list=(11, 23, 35),
                 ue_counts=(16,))
    print(f"--- {split} subpanel(s)")
    for r in rows:
        print(f"{r['n_bs']} BS {r['total_psat_dbm']:4.0f} dBm: "
              f"{r['mean_tput_bps'] / 1e9:6.1f} +- {r['ci_halfwidth'] / 1e9:4.1f} Gb/s, "
              f"{r['mean_active_chains']:.2f} chains/BS")

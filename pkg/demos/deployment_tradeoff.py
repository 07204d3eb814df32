"""
Fewer strong stations or more weak ones?
========================================

Each pair reaches similar area throughput with 4 stations at high power or 8
at lower power.  Power is charged for the chains the scheduler actually
used.
"""

from subthz_ee.deployment import compare_pairs, matched_pairs
from subthz_ee.sim import SimConfig

cfg = SimConfig(n_drops=200, n_ues=16, seed=0)
results = {}
rows = compare_pairs(matched_pairs(), cfg, results=results)

for row in rows:
    print(f"{row['scenario_a']:>18} vs {row['scenario_b']:<18} "
          f"power {row['power_a_w']:6.1f} / {row['power_b_w']:6.1f} W (x{row['power_ratio']:.2f}), "
          f"throughput x{row['tput_ratio']:.2f}, EE x{row['ee_ratio']:.2f}")

###############################################################################
# Where the power goes in the 8-station deployments.

for sid, res in results.items():
    if "_8bs_" in sid:
        b = res.breakdown
        groups = {g: b.tx[g] + b.rx[g] for g in b.tx}
        print(sid, ", ".join(f"{g} {w:.1f} W" for g, w in groups.items()))

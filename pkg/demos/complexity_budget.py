"""
Baseband complexity budget
==========================

Operation counts of every digital block of the single-carrier transceiver,
converted to Watts through an intrinsic efficiency.
"""

from subthz_ee.complexity import (BLOCKS, ComplexityParams, complexity_report,
                                  bb_rx_power, bb_tx_power, nn_demapper_ops, maxlogmap_ops)

params = ComplexityParams()

###############################################################################
# GFLOPS per block for the four constellations. LDPC decoding and, at high
# order, max-log-MAP demapping dominate; the filters are constant.

reports = {s: complexity_report(params, s) for s in (2, 4, 6, 8)}
print(f"{'block':<12}" + "".join(f"{'s=' + str(s):>12}" for s in reports))
for block in BLOCKS:
    print(f"{block:<12}" + "".join(f"{r.blocks[block]:12.1f}" for r in reports.values()))
print(f"{'tx total':<12}" + "".join(f"{r.tx_gflops:12.1f}" for r in reports.values()))
print(f"{'rx total':<12}" + "".join(f"{r.rx_gflops:12.1f}" for r in reports.values()))

###############################################################################
# Demapper choice: the neural demapper grows by only 129 operations per
# extra bit, max-log-MAP exponentially.

for s in (2, 4, 6, 8):
    print(f"s={s}: max-log-MAP {maxlogmap_ops(s):6.0f} ops/symbol, NN {nn_demapper_ops(params, s):6.0f}")

###############################################################################
# Power at a few intrinsic efficiencies (GFLOPS/W), including the 1.5x
# implementation overhead.

for e in (1000.0, 4000.0, 10000.0):
    p = ComplexityParams(E_intr=e)
    print(f"E_intr={e:7.0f}: Tx {bb_tx_power(p, 2):6.3f} W  Rx {bb_rx_power(p, 2):6.3f} W (QPSK)")

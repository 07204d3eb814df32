"""
Converter and front-end power
=============================

Walden-FOM ADCs, fixed-power DACs and the per-element phased-array model,
and how a station's output power is split over subpanels.
"""

import numpy as np

from subthz_ee.analog import (ConverterModel, PhasedArrayModel, adc_power,
                              enob_from_resolution, phased_array_tx_element_power,
                              split_bs_power)

###############################################################################
# ADC power doubles per effective bit; 12 and 14 bit converters at 10 Gsps.

for bits in (8, 10, 12, 14):
    enob = enob_from_resolution(bits)
    print(f"{bits:2d} bit (ENOB {enob}): {adc_power(ConverterModel(adc_enob=enob)) * 1e3:7.1f} mW")

###############################################################################
# Per-element Tx power at 10 % PA efficiency across the element output range.

pa = PhasedArrayModel()
for psat in np.arange(-5, 21, 5):
    print(f"psat {psat:5.1f} dBm/element -> {phased_array_tx_element_power(pa, psat):.3f} W")

###############################################################################
# Splitting 35 dBm over 1, 2 and 4 subpanels of an 8x8 panel.

for m in (1, 2, 4):
    sub, el = split_bs_power(35.0, m, 64 // m)
    print(f"{m} subpanel(s): {sub:5.2f} dBm per subpanel, {el:5.2f} dBm per element")

"""
Grid of beams and link budget
=============================

The 8x8 beam codebook of a wall-mounted panel, its gains, and the resulting
SNR across the hall for one station.
"""

import numpy as np

from subthz_ee.channel import (Geometry, PanelConfig, beam_gain, generate_gob, noise_power,
                               pathloss, place_bs, unit_vector)

gob = generate_gob()
print("azimuth centres:", np.unique(gob.azimuth))
print("tilt centres:   ", np.unique(gob.tilt))

###############################################################################
# Peak gain on boresight for the three subpanel splits.

d = unit_vector(0.0, 0.0)[None, :]
for split in (1, 2, 4):
    panel = PanelConfig(subpanel_split=split)
    print(f"{panel.subpanel_shape}: {beam_gain(panel, d, d)[0, 0]:.2f} dBi")

###############################################################################
# Best-beam SNR from the first station at 35 dBm, on a coarse grid (LOS, no
# shadowing).

geom = Geometry()
site = place_bs(geom.area, 4)[0]
rot = site.rotation()
beams = gob.directions()
noise = noise_power(geom.bandwidth, geom.noise_figure)
print("y \\ x " + "".join(f"{x:6.0f}" for x in range(3, 30, 6)))
for y in range(5, 60, 10):
    line = []
    for x in range(3, 30, 6):
        v = np.array([x, y, geom.ue_height]) - np.array(site.position)
        dist = np.linalg.norm(v)
        g = beam_gain(geom.panel, beams, (rot @ v / dist)[None, :]).max()
        line.append(35.0 + g - pathloss(dist, geom.carrier, True) - noise)
    print(f"{y:5d} " + "".join(f"{s:6.1f}" for s in line))

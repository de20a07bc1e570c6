"""
Capture locations as the scenario changes
=========================================

Worst-case capture points over the lower half of the headings, varying one
of speed ratio, capture radius and start offset at a time. A faster pursuer
catches the evader closer to the ring; a smaller capture radius pushes the
catch onto the ring and everything becomes exit-point capture.
"""

import sys

from ringpursuit import ScenarioParams, sweep
from ringpursuit.sweep import DEFAULT_VALUES, Varied, mean_capture_radius, regime_fraction

base = ScenarioParams(rho=0.5, gamma=0.5, r=0.4)

for varied in Varied:
    records = sweep(base, varied, DEFAULT_VALUES[varied])
    print(f"\nvarying {varied.value}")
    for v in DEFAULT_VALUES[varied]:
        fractions = {reg: regime_fraction(records, v, reg) for reg in ("EXC", "TGC", "Point")}
        mix = ", ".join(f"{k} {f:.0%}" for k, f in fractions.items() if f)
        print(f"  {varied.value}={v:<4g} mean capture radius {mean_capture_radius(records, v):.4f}  ({mix})")

###############################################################################
# Pass a file name to get the speed-ratio scatter as an SVG.

if len(sys.argv) > 1:
    from ringpursuit.plots import sweep_figure

    sweep_figure(sweep(base, Varied.GAMMA, DEFAULT_VALUES[Varied.GAMMA]), base, sys.argv[1])
    print("wrote", sys.argv[1])

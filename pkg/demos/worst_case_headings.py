"""
Which capture decides the worst case?
=====================================

For each heading over the lower half of the disk we ask how far back along
the ring a clockwise pursuer can start and still make the catch. Near the
two ends of the range the exit-point capture is binding; in the middle the
touch-and-go capture reaches farther.
"""

import math

import numpy as np

from ringpursuit import ScenarioParams, worst_case_sweep
from ringpursuit.worst_case import regime_boundaries

params = ScenarioParams(rho=0.5, gamma=0.5, r=0.4)
headings = np.linspace(math.pi, 2 * math.pi, 25)

for psi, res in zip(headings, worst_case_sweep(params, headings, "cw")):
    x, y = res.solution.capture_point
    bar = "#" * int(40 * res.travel / math.pi)
    print(f"psi={psi:6.3f}  {res.regime.value:>4}  setback {res.travel:6.4f}  "
          f"caught at ({x:+.3f}, {y:+.3f})  {bar}")

###############################################################################
# The regime changes are located by bisection on the heading.

for b in regime_boundaries(params, np.linspace(math.pi, 2 * math.pi, 73), "cw"):
    print(f"regime change at psi = {b:.8f} rad ({b / math.pi:.5f} pi)")

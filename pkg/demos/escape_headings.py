"""
Where can the evader run?
=========================

A heading escapes when no pursuer can catch the evader running along it.
With several pursuers the escape set is the intersection of the individual
ones. Letting each pursuer pick its direction per heading shrinks it further.
"""

import math
import sys

from ringpursuit import Policy, PursuerSpec, ScenarioParams, escape_measure, escape_set

params = ScenarioParams(rho=0.5, gamma=0.5, r=0.4)
top, bottom = math.pi / 2, 1.5 * math.pi

setups = {
    "one pursuer, clockwise": [PursuerSpec(top, "cw")],
    "two, a quarter-turn apart": [PursuerSpec(top, "cw"), PursuerSpec(top + math.pi / 4, "cw")],
    "two, opposite sides, both clockwise": [PursuerSpec(top, "cw"), PursuerSpec(bottom, "cw")],
    "two, opposite sides and directions": [PursuerSpec(top, "cw"), PursuerSpec(bottom, "ccw")],
    "two, free to choose direction": [PursuerSpec(top, "cw", Policy.FAVORABLE),
                                      PursuerSpec(bottom, "cw", Policy.FAVORABLE)],
}

for name, pursuers in setups.items():
    s = escape_set(params, pursuers, grid=360, resolution=1e-6)
    arcs = [f"[{lo:.3f}, {hi:.3f})" for lo, hi, lab in s.intervals if lab == "ESCAPE"]
    print(f"{name:<38} escape measure {escape_measure(s):.4f} rad: {' '.join(arcs)}")

###############################################################################
# Pass a file name to draw the last setup's heading fan.

if len(sys.argv) > 1:
    from ringpursuit.plots import escape_set_figure

    escape_set_figure(s, params, pursuers, sys.argv[1])
    print("wrote", sys.argv[1])

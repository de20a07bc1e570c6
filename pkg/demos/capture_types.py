"""
Three ways to be caught at the ring
===================================

The evader starts 0.4 from the centre and runs straight out on heading
1.6 pi. A clockwise pursuer on the ring is half as fast and catches
anything within 0.5 of itself. Below we place it so that it makes each kind
of capture, then watch the separation in simulation.
"""

import math

import numpy as np

from ringpursuit import (
    EvaderIntent,
    PursuerSpec,
    ScenarioParams,
    exc_start,
    exit_for_heading,
    simulate,
    solve_tgc,
    tac_start,
)
from ringpursuit.sim import range_and_rate

params = ScenarioParams(rho=0.5, gamma=0.5, r=0.4)
psi = 1.6 * math.pi
theta_f, ef = exit_for_heading(params, psi)
print(f"exit angle {theta_f:.5f} rad after running {ef:.5f}")

###############################################################################
# Exit-point capture puts the pursuer one chord of length rho short of the
# exit point as the evader arrives. Tangent capture brushes the evader path
# with the capture circle. Touch-and-go sits in between: the separation
# dips to exactly rho and turns back up.

solutions = {
    "exit point": exc_start(params, psi, "cw"),
    "tangent": tac_start(params, psi, "cw"),
    "touch and go": solve_tgc(params, psi, "cw"),
}
for name, sol in solutions.items():
    print(f"{name:>13}: start {sol.theta_p0:.5f} rad, caught at t={sol.t_c:.5f}, "
          f"starts {sol.setback:.5f} rad behind the exit")

###############################################################################
# The separation curves. The exit-point curve falls below rho well before
# the exit and comes back up to it right at the exit, so in simulation the
# first touch is early.

ts = np.linspace(0.0, ef, 9)
for name, sol in solutions.items():
    d, _ = range_and_rate(params, psi, PursuerSpec(sol.theta_p0, "cw"), ts)
    print(f"{name:>13}: " + " ".join(f"{v:.3f}" for v in d))
    out = simulate(params, EvaderIntent(psi), PursuerSpec(sol.theta_p0, "cw")).outcome
    print(f"{'':>13}  simulation: {out}")

###############################################################################
# Nudging the touch-and-go start back by a hundredth of a radian lets the
# evader through.

late = PursuerSpec(solutions["touch and go"].theta_p0 + 0.01, "cw")
print("start 0.01 rad farther back:", simulate(params, EvaderIntent(psi), late).outcome)

"""Touch-and-go capture: the evader grazes the capture circle (R_PE = rho, dR_PE/dt = 0).

The pursuer's final ring angle is searched between the tangent-capture and
exit-point-capture final angles. For each candidate the final point is held
fixed, the evader's touch time follows from a quadratic, the start is
backtracked, and the residual is the range rate with the pursuer moving.
"""

from __future__ import annotations

import math

import numpy as np

from .core import (
    CaptureKind,
    CaptureSolution,
    Direction,
    NoBracket,
    NoConvergence,
    ScenarioParams,
    NoTangency,
    normalize_angle,
)
from .geometry import exc_start, exit_for_heading, tac_start

RATE_TOL = 1e-6


def touch_time(params: ScenarioParams, psi_e: float, theta_pf: float) -> float | None:
    """Later intersection time of the evader ray with the rho-circle about the ring point ``theta_pf``.

    The later root is where the evader leaves the fixed circle; only there can
    a pursuer that is still closing in make the range rate vanish.
    """
    u = np.array([math.cos(psi_e), math.sin(psi_e)])
    w = params.evader_start - params.R * np.array([math.cos(theta_pf), math.sin(theta_pf)])
    b = float(w @ u)
    disc = b * b - float(w @ w) + params.rho ** 2
    if disc < -params.tol.range_tol:
        return None
    return -b + math.sqrt(max(disc, 0.0))


def _residual(params, psi_e, a, theta_pf):
    t = touch_time(params, psi_e, theta_pf)
    if t is None:
        return None, None
    u = np.array([math.cos(psi_e), math.sin(psi_e)])
    e = params.evader_start + t * u
    p = params.R * np.array([math.cos(theta_pf), math.sin(theta_pf)])
    v_p = a * params.gamma * np.array([-math.sin(theta_pf), math.cos(theta_pf)])
    rel = e - p
    return float(rel @ (params.v_evader * u - v_p)) / float(np.linalg.norm(rel)), t


def solve_tgc(params: ScenarioParams, psi_e: float, direction=Direction.CW) -> CaptureSolution:
    direction = Direction.parse(direction)
    a = int(direction)
    if params.rho == 0:
        raise NoBracket("touch-and-go capture needs a nonzero capture radius")
    try:
        tac = tac_start(params, psi_e, direction)
    except NoTangency as exc:
        raise NoBracket(str(exc)) from exc
    exc = exc_start(params, psi_e, direction)
    _, ef = exit_for_heading(params, psi_e)

    lo, hi = tac.theta_pf, exc.theta_pf
    f_lo, _ = _residual(params, psi_e, a, lo)
    f_hi, t_hi = _residual(params, psi_e, a, hi)
    if f_lo is None or f_hi is None or t_hi > ef + params.tol.range_tol:
        raise NoBracket(f"no touch-and-go bracket for heading {psi_e!r}")
    if f_lo == 0 or f_hi == 0 or (f_lo > 0) == (f_hi > 0):
        raise NoBracket(f"range-rate residual keeps its sign ({f_lo:.3g}, {f_hi:.3g})")

    for _ in range(params.tol.max_bisection_iters):
        mid = 0.5 * (lo + hi)
        f_mid, _ = _residual(params, psi_e, a, mid)
        if f_mid is None:
            raise NoConvergence("candidate final point lost contact with the evader path")
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if abs(hi - lo) <= params.tol.angle_tol:
            break
    else:
        raise NoConvergence(f"bisection did not reach {params.tol.angle_tol} rad")

    theta_pf = 0.5 * (lo + hi)
    rate, t_star = _residual(params, psi_e, a, theta_pf)
    if abs(rate) > RATE_TOL:
        raise NoConvergence(f"residual range rate {rate:.3g} above {RATE_TOL}")
    touch = params.evader_start + t_star * np.array([math.cos(psi_e), math.sin(psi_e)])
    offset = a * (exc.theta_f - theta_pf)
    return CaptureSolution(
        kind=CaptureKind.TOUCH_AND_GO,
        psi_e=normalize_angle(psi_e),
        direction=direction,
        theta_f=exc.theta_f,
        theta_pf=theta_pf,
        theta_p0=theta_pf - a * params.gamma * t_star / params.R,
        t_c=t_star / params.v_evader,
        capture_point=(float(touch[0]), float(touch[1])),
        evader_travel=t_star,
        chord=2 * params.R * math.sin(offset / 2),
        offset=offset,
    )

"""Kinematic simulation of the ring pursuer and the straight-running evader.

This is the ground truth the closed forms are checked against. The evader
state is propagated with fixed-step RK4, the pursuer angle is advanced
exactly (it is linear in time), and capture / exit events found on the
sample grid are refined by bisection. Grazing contacts that fall between
samples are caught by bracketing sign changes of the range rate.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import (
    Direction,
    EvaderIntent,
    PursuerSpec,
    ScenarioParams,
    SingularRange,
    wrap_to_pi,
)
from .geometry import exit_for_heading


class SimulationDefect(RuntimeError):
    """The run ended without an outcome (horizon too short for the evader to exit)."""


@dataclass(frozen=True)
class AgentState:
    x: float
    y: float
    heading: float


@dataclass(frozen=True)
class RelativeState:
    r_pe: float
    theta_p: float
    phi_e: float
    sigma_p: float
    lam: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.r_pe, self.theta_p, self.phi_e, self.sigma_p])


@dataclass(frozen=True)
class Outcome:
    captured: bool
    t: float

    def __str__(self):
        return f"{'CapturedAt' if self.captured else 'EscapedAt'}({self.t:.12g})"


@dataclass
class Trajectory:
    t: np.ndarray
    evader: np.ndarray  # (n, 2)
    pursuer: np.ndarray  # (n, 2)
    r_pe: np.ndarray
    r_pe_rate: np.ndarray
    outcome: Outcome
    psi_e: float = 0.0
    pursuer_headings: Optional[np.ndarray] = None

    CSV_HEADER = ("t", "x_e", "y_e", "x_p", "y_p", "r_pe", "r_pe_rate")

    def __len__(self):
        return len(self.t)

    def sample(self, i: int) -> tuple:
        ev = AgentState(self.evader[i, 0], self.evader[i, 1], self.psi_e)
        heading = self.pursuer_headings[i] if self.pursuer_headings is not None else float("nan")
        pu = AgentState(self.pursuer[i, 0], self.pursuer[i, 1], heading)
        return self.t[i], ev, pu, self.r_pe[i], self.r_pe_rate[i]

    def to_csv(self, fh=None) -> str:
        buf = fh if fh is not None else io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.CSV_HEADER)
        cols = np.column_stack([self.t, self.evader, self.pursuer, self.r_pe, self.r_pe_rate])
        for row in cols:
            w.writerow([f"{v:.12g}" for v in row])
        return buf.getvalue() if fh is None else ""


def read_trajectory_csv(text: str) -> dict:
    rows = list(csv.reader(io.StringIO(text)))
    if tuple(rows[0]) != Trajectory.CSV_HEADER:
        raise ValueError(f"unexpected trajectory header {rows[0]}")
    data = np.array([[float(v) for v in row] for row in rows[1:]])
    return {name: data[:, i] for i, name in enumerate(Trajectory.CSV_HEADER)}


# --- relative polar kinematics -------------------------------------------


def relative_state(evader_xy, psi_e: float, pursuer_xy, direction) -> RelativeState:
    """Line-of-sight quantities from Cartesian positions (LOS points from P to E)."""
    ex, ey = evader_xy
    px, py = pursuer_xy
    theta_p = math.atan2(py, px)
    psi_p = theta_p + int(direction) * math.pi / 2
    lam = math.atan2(ey - py, ex - px)
    return RelativeState(
        r_pe=math.hypot(ex - px, ey - py),
        theta_p=theta_p,
        phi_e=float(wrap_to_pi(psi_e - lam)),
        sigma_p=float(wrap_to_pi(psi_p - lam)),
        lam=lam,
    )


def relative_range_rate(state: RelativeState, params) -> float:
    return 1.0 * math.cos(state.phi_e) - params.gamma * math.cos(state.sigma_p)


def polar_derivatives(state: RelativeState, params, direction) -> RelativeState:
    """Rates of (R_PE, theta_P, phi_E, sigma_P); ``lam`` carries the LOS rate.

    ``params`` only needs ``R`` and ``gamma`` attributes.
    """
    eps = params.tol.range_tol if hasattr(params, "tol") else 1e-9
    if state.r_pe <= eps:
        raise SingularRange(f"line of sight undefined at R_PE={state.r_pe!r}")
    v_p = params.gamma
    lam_dot = (math.sin(state.phi_e) - v_p * math.sin(state.sigma_p)) / state.r_pe
    theta_dot = int(direction) * v_p / params.R
    return RelativeState(
        r_pe=relative_range_rate(state, params),
        theta_p=theta_dot,
        phi_e=-lam_dot,
        sigma_p=theta_dot - lam_dot,
        lam=lam_dot,
    )


def _polar_rhs(params, direction) -> Callable:
    a = int(direction)
    v_p = params.gamma

    def rhs(t, y):
        r_pe, _, phi_e, sigma_p = y
        lam_dot = (math.sin(phi_e) - v_p * math.sin(sigma_p)) / r_pe
        theta_dot = a * v_p / params.R
        return np.array([math.cos(phi_e) - v_p * math.cos(sigma_p), theta_dot, -lam_dot, theta_dot - lam_dot])

    return rhs


# --- integration ----------------------------------------------------------


def rk4_step(rhs, t: float, y: np.ndarray, h: float) -> np.ndarray:
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = rhs(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def rk4_integrate(rhs, y0, times) -> np.ndarray:
    """Fixed-step RK4 over an explicit time grid; returns states at every grid time."""
    times = np.asarray(times, dtype=float)
    out = np.empty((len(times), len(y0)))
    out[0] = y0
    for i in range(len(times) - 1):
        out[i + 1] = rk4_step(rhs, times[i], out[i], times[i + 1] - times[i])
    return out


def integrate_polar(params: ScenarioParams, psi_e: float, pursuer: PursuerSpec, t_end: float, dt: float) -> np.ndarray:
    """RK4 propagation of the polar state ``[R_PE, theta_P, phi_E, sigma_P]`` to ``t_end``."""
    state0 = relative_state(params.evader_start, psi_e, pursuer.position(params.R), pursuer.direction)
    n = max(1, int(round(t_end / dt)))
    times = np.linspace(0.0, t_end, n + 1)
    return rk4_integrate(_polar_rhs(params, pursuer.direction), state0.as_array(), times)[-1]


# --- positions ------------------------------------------------------------


def evader_position(params: ScenarioParams, psi_e: float, t):
    t = np.asarray(t, dtype=float)
    pos = np.stack([params.r + t * math.cos(psi_e), t * math.sin(psi_e)], axis=-1)
    return pos


def pursuer_angle(params: ScenarioParams, pursuer: PursuerSpec, t):
    return pursuer.theta_p0 + int(pursuer.direction) * params.gamma * np.asarray(t, dtype=float) / params.R


def pursuer_position(params: ScenarioParams, pursuer: PursuerSpec, t):
    th = pursuer_angle(params, pursuer, t)
    return params.R * np.stack([np.cos(th), np.sin(th)], axis=-1)


def range_and_rate(params: ScenarioParams, psi_e: float, pursuer: PursuerSpec, t):
    """R_PE and its time derivative at time(s) ``t`` from Cartesian states."""
    t = np.asarray(t, dtype=float)
    e = evader_position(params, psi_e, t)
    th = pursuer_angle(params, pursuer, t)
    p = params.R * np.stack([np.cos(th), np.sin(th)], axis=-1)
    a = int(pursuer.direction)
    ve = np.array([math.cos(psi_e), math.sin(psi_e)])
    vp = a * params.gamma * np.stack([-np.sin(th), np.cos(th)], axis=-1)
    rel = e - p
    d = np.linalg.norm(rel, axis=-1)
    rate = np.sum(rel * (ve - vp), axis=-1) / np.where(d > 0, d, 1.0)
    return d, rate


def _bisect(f, lo: float, hi: float, ftol: float, iters: int = 200) -> float:
    """Root of ``f`` on [lo, hi] given f(lo) > 0 >= f(hi) (or the reverse)."""
    f_lo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= ftol or hi - lo <= 1e-15:
            return mid
        if (fm > 0) == (f_lo > 0):
            lo, f_lo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _local_min(params, psi_e, pursuer, lo, hi, iters=200):
    """Refine a range minimum bracketed by rate(lo) < 0 < rate(hi)."""
    rate = lambda t: float(range_and_rate(params, psi_e, pursuer, t)[1])
    t_m = _bisect(rate, lo, hi, 1e-13, iters)
    return t_m, float(range_and_rate(params, psi_e, pursuer, t_m)[0])


def range_minimum(params: ScenarioParams, psi_e: float, pursuer: PursuerSpec, t_end: float, dt: Optional[float] = None):
    """Global minimum of R_PE over [0, t_end]: sampled, with every interior local minimum refined."""
    dt = params.dt if dt is None else dt
    n = max(2, int(math.ceil(t_end / dt)) + 1)
    ts = np.linspace(0.0, t_end, n)
    d, rate = range_and_rate(params, psi_e, pursuer, ts)
    best_t, best_d = (ts[0], d[0]) if d[0] <= d[-1] else (ts[-1], d[-1])
    for k in np.nonzero((rate[:-1] < 0) & (rate[1:] >= 0))[0]:
        t_m, d_m = _local_min(params, psi_e, pursuer, ts[k], ts[k + 1])
        if d_m < best_d:
            best_t, best_d = t_m, d_m
    return best_t, best_d


def simulate(params: ScenarioParams, evader: EvaderIntent, pursuer: PursuerSpec,
             horizon: Optional[float] = None, stop_at_capture: bool = True) -> Trajectory:
    """Propagate both agents until capture or until the evader reaches the ring.

    Capture means R_PE <= rho (within ``range_tol``) at some t no later than the
    exit instant; a touch exactly at the exit instant counts. With
    ``stop_at_capture=False`` the samples continue to the exit instant while the
    outcome still reports the first touch.
    """
    psi = evader.psi_e
    tol = params.tol
    rho = params.rho
    dt = params.dt
    if horizon is None:
        horizon = 1.1 * exit_for_heading(params, psi)[1] / params.v_evader + 2 * dt

    n = int(math.ceil(horizon / dt))
    times = dt * np.arange(n + 1)
    vel = params.v_evader * evader.velocity
    ev = rk4_integrate(lambda t, y: vel, params.evader_start, times)

    radius = np.hypot(ev[:, 0], ev[:, 1])
    out = np.nonzero(radius >= params.R)[0]
    if len(out) == 0:
        raise SimulationDefect(f"evader still inside the disk at horizon {horizon!r}")
    k = out[0]
    if k == 0:
        t_exit = 0.0
    else:
        rad = lambda t: float(np.hypot(*evader_position(params, psi, t))) - params.R
        t_exit = _bisect(rad, times[k - 1], times[k], tol.range_tol * 1e-3)
        t_exit = min(max(t_exit, times[k - 1]), times[k])

    keep = times < t_exit
    times = np.append(times[keep], t_exit)
    ev = np.vstack([ev[keep], evader_position(params, psi, t_exit)])
    d, rate = range_and_rate(params, psi, pursuer, times)

    gap = lambda t: float(range_and_rate(params, psi, pursuer, t)[0]) - rho
    t_cap = None
    if d[0] <= rho + tol.range_tol:
        t_cap = 0.0
    else:
        hit = np.nonzero(d <= rho + tol.range_tol)[0]
        first_hit = hit[0] if len(hit) else len(times)
        for j in np.nonzero((rate[:-1] < 0) & (rate[1:] >= 0))[0]:
            if j + 1 >= first_hit:
                break
            t_m, d_m = _local_min(params, psi, pursuer, times[j], times[j + 1])
            if d_m <= rho + tol.range_tol:
                t_cap = t_m if d_m > rho else _bisect(gap, times[j], t_m, tol.range_tol)
                break
        if t_cap is None and first_hit < len(times):
            j = first_hit
            t_cap = times[j] if d[j] > rho else _bisect(gap, times[j - 1], times[j], tol.range_tol)

    if t_cap is not None:
        outcome = Outcome(True, float(t_cap))
        if stop_at_capture:
            keep = times < t_cap
            times = np.append(times[keep], t_cap)
            ev = np.vstack([ev[keep], evader_position(params, psi, t_cap)])
            d, rate = range_and_rate(params, psi, pursuer, times)
    else:
        outcome = Outcome(False, float(t_exit))

    th = pursuer_angle(params, pursuer, times)
    pu = params.R * np.column_stack([np.cos(th), np.sin(th)])
    return Trajectory(
        t=times, evader=ev, pursuer=pu, r_pe=d, r_pe_rate=rate, outcome=outcome,
        psi_e=psi, pursuer_headings=th + int(pursuer.direction) * math.pi / 2,
    )


def capture_oracle(params: ScenarioParams, evader, pursuer: PursuerSpec) -> Outcome:
    if not isinstance(evader, EvaderIntent):
        evader = EvaderIntent(float(evader))
    return simulate(params, evader, pursuer).outcome

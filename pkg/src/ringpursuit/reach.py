"""Escape and capture headings for one or more ring pursuers.

For a fixed heading the set of capturing pursuer starts is an arc of the
ring (one arc per stretch of the run during which the evader is within
``rho`` of the ring). Its far end is the worst-case start; its near end is
the least-travel start, found from the envelope of the ring arcs the
evader's capture disk covers over time.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .core import (
    TWO_PI,
    Direction,
    EvaderIntent,
    Policy,
    PursuerSpec,
    ScenarioParams,
    wrap_to_pi,
)
from .geometry import exit_for_heading
from .sim import capture_oracle
from .worst_case import worst_case_start

ESCAPE = "ESCAPE"
CAPTURE = "CAPTURE"
SNAP_TOL = 1e-5


def _near_ring_pieces(params: ScenarioParams, psi_e: float) -> list[tuple[float, float]]:
    """Sub-intervals of [0, EF] on which the evader is within rho of the ring."""
    _, ef = exit_for_heading(params, psi_e)
    inner = params.R - params.rho
    if inner <= 0:
        return [(0.0, ef)]
    # |E(t)|^2 = t^2 + 2 r t cos(psi) + r^2 against inner^2
    b = params.r * math.cos(psi_e)
    disc = b * b - params.r ** 2 + inner ** 2
    if disc <= 0:
        return [(0.0, ef)]
    s = math.sqrt(disc)
    t_a, t_b = -b - s, -b + s
    pieces = []
    if t_a > 0:
        pieces.append((0.0, min(t_a, ef)))
    if t_b < ef:
        pieces.append((max(t_b, 0.0), ef))
    return pieces


def _arc_edges(params: ScenarioParams, psi_e: float, a: int, t, beta_ref=None):
    """Start angles that put the pursuer within rho of the evader at time(s) t."""
    t = np.asarray(t, dtype=float)
    ex = params.r + t * math.cos(psi_e)
    ey = t * math.sin(psi_e)
    m = np.hypot(ex, ey)
    beta = np.arctan2(ey, ex)
    if beta_ref is None:
        beta = np.unwrap(beta)
    else:
        beta = beta_ref + wrap_to_pi(beta - beta_ref)
    R, rho = params.R, params.rho
    with np.errstate(divide="ignore", invalid="ignore"):
        cos_alpha = (m * m + R * R - rho * rho) / (2 * R * m)
    cos_alpha = np.where(m > 0, cos_alpha, np.where(rho >= R, -1.0, 2.0))
    alpha = np.arccos(np.clip(cos_alpha, -1.0, 1.0))
    shift = a * params.gamma * t / R
    return beta - alpha - shift, beta + alpha - shift, beta


def _refine(params, psi_e, a, ts, vals, beta, which, sign):
    """Polish an extreme of a sampled edge curve with a bounded scalar search."""
    k = int(np.argmin(sign * vals))
    lo, hi = ts[max(k - 1, 0)], ts[min(k + 1, len(ts) - 1)]
    best = vals[k]
    if hi > lo:
        f = lambda t: sign * _arc_edges(params, psi_e, a, t, beta[k])[which]
        res = minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": 1e-13})
        if res.fun < sign * best:
            best = sign * res.fun
    return float(best)


def capture_windows(params: ScenarioParams, psi_e: float, direction=Direction.CW, samples: int = 801) -> list[tuple[float, float]]:
    """Arcs ``(lo, hi)`` of capturing start angles, unwrapped with lo <= hi.

    The far edge of the arc that ends at the exit instant is snapped to the
    worst-case start when the two agree to ``SNAP_TOL``; they differ only when
    the farthest capture is immediate or an interior graze without a tangent
    capture to bracket it, and then the envelope value stands.
    """
    a = int(Direction.parse(direction))
    pieces = _near_ring_pieces(params, psi_e)
    windows = []
    for i, (t0, t1) in enumerate(pieces):
        ts = np.linspace(t0, t1, samples) if t1 > t0 else np.array([t0])
        lo_v, hi_v, beta = _arc_edges(params, psi_e, a, ts)
        lo = _refine(params, psi_e, a, ts, lo_v, beta, 0, +1)
        hi = _refine(params, psi_e, a, ts, hi_v, beta, 1, -1)
        if i == len(pieces) - 1:
            far = worst_case_start(params, psi_e, direction).solution.theta_p0
            edge = hi if a < 0 else lo
            far += TWO_PI * round((edge - far) / TWO_PI)
            if abs(far - edge) <= SNAP_TOL:
                if a < 0:
                    hi = far
                else:
                    lo = far
        windows.append((lo, hi))
    return windows


def envelope_far_edge(params: ScenarioParams, psi_e: float, direction=Direction.CW, samples: int = 801) -> float:
    """Farthest-back capturing start from the envelope alone (no closed forms)."""
    a = int(Direction.parse(direction))
    t0, t1 = _near_ring_pieces(params, psi_e)[-1]
    ts = np.linspace(t0, t1, samples)
    lo_v, hi_v, beta = _arc_edges(params, psi_e, a, ts)
    if a < 0:
        return _refine(params, psi_e, a, ts, hi_v, beta, 1, -1)
    return _refine(params, psi_e, a, ts, lo_v, beta, 0, +1)


def _arc_offset(theta, lo):
    return (theta - lo) % TWO_PI


def _fixed_direction_captures(params, psi_e, theta_p0, direction):
    start = params.R * np.array([math.cos(theta_p0), math.sin(theta_p0)])
    if np.linalg.norm(start - params.evader_start) <= params.rho:
        return True
    guard = 2 * params.tol.angle_tol
    near_edge = False
    for lo, hi in capture_windows(params, psi_e, direction):
        width = hi - lo
        if width >= TWO_PI:
            return True
        off = _arc_offset(theta_p0, lo)
        if min(off, TWO_PI - off, abs(off - width)) <= guard:
            near_edge = True
        elif off <= width:
            return True
    if near_edge:
        return capture_oracle(params, EvaderIntent(psi_e), PursuerSpec(theta_p0, direction)).captured
    return False


def capture_predicate(params: ScenarioParams, psi_e: float, pursuer: PursuerSpec) -> bool:
    """True iff the pursuer captures the evader running on heading ``psi_e``."""
    dirs = [pursuer.direction]
    if pursuer.policy is Policy.FAVORABLE:
        dirs.append(pursuer.direction.flipped)
    return any(_fixed_direction_captures(params, psi_e, pursuer.theta_p0, d) for d in dirs)


def simulated_capture(params: ScenarioParams, psi_e: float, pursuer: PursuerSpec) -> bool:
    """Same question as :func:`capture_predicate`, answered by simulation only."""
    dirs = [pursuer.direction]
    if pursuer.policy is Policy.FAVORABLE:
        dirs.append(pursuer.direction.flipped)
    ev = EvaderIntent(psi_e)
    return any(capture_oracle(params, ev, PursuerSpec(pursuer.theta_p0, d)).captured for d in dirs)


@dataclass
class HeadingIntervalSet:
    """Partition of the heading circle [0, 2pi) into labelled arcs."""

    intervals: list = field(default_factory=list)  # (lo, hi, label)
    resolution: float = 1e-6

    CSV_HEADER = ("lo_rad", "hi_rad", "label")

    def label_at(self, psi: float) -> str:
        psi = psi % TWO_PI
        for lo, hi, label in self.intervals:
            if lo <= psi < hi:
                return label
        return self.intervals[-1][2]

    def measure(self, label: str) -> float:
        return float(sum(hi - lo for lo, hi, lab in self.intervals if lab == label))

    @property
    def boundaries(self) -> list[float]:
        out = []
        for (_, hi, l0), (_, _, l1) in zip(self.intervals, self.intervals[1:]):
            if l0 != l1:
                out.append(hi)
        if len(self.intervals) > 1 and self.intervals[0][2] != self.intervals[-1][2]:
            out.insert(0, 0.0)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.CSV_HEADER)
        for lo, hi, label in self.intervals:
            w.writerow([f"{lo:.12g}", f"{hi:.12g}", label])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, resolution: float = 1e-6) -> "HeadingIntervalSet":
        rows = list(csv.reader(io.StringIO(text)))
        if tuple(rows[0]) != cls.CSV_HEADER:
            raise ValueError(f"unexpected interval header {rows[0]}")
        return cls([(float(lo), float(hi), lab) for lo, hi, lab in rows[1:]], resolution)


def escape_measure(intervals: HeadingIntervalSet) -> float:
    return intervals.measure(ESCAPE)


def _assemble(headings, labels, boundary_fn, resolution) -> HeadingIntervalSet:
    n = len(headings)
    cuts = []
    for k in range(n):
        nxt = (k + 1) % n
        if labels[k] != labels[nxt]:
            lo = headings[k]
            hi = headings[nxt] if nxt else TWO_PI
            cuts.append((boundary_fn(lo, hi, labels[k], resolution), labels[nxt]))
    if not cuts:
        return HeadingIntervalSet([(0.0, TWO_PI, labels[0])], resolution)
    cuts.sort()
    intervals = []
    # the label before the first cut is the label after the last one
    prev_b, prev_label = 0.0, cuts[-1][1]
    for b, label in cuts:
        b = min(max(b, 0.0), TWO_PI)
        if b > prev_b:
            intervals.append((prev_b, b, prev_label))
        prev_b, prev_label = b, label
    if prev_b < TWO_PI:
        intervals.append((prev_b, TWO_PI, prev_label))
    merged = []
    for lo, hi, label in intervals:
        if merged and merged[-1][2] == label:
            merged[-1] = (merged[-1][0], hi, label)
        else:
            merged.append((lo, hi, label))
    return HeadingIntervalSet(merged, resolution)


def escape_set(params: ScenarioParams, pursuers, grid: int = 720, resolution: float = 1e-6,
               predicate=capture_predicate) -> HeadingIntervalSet:
    """Headings no pursuer can capture, with boundaries refined by bisection."""
    pursuers = list(pursuers)
    if not pursuers:
        raise ValueError("at least one pursuer is required")

    def label(psi):
        return CAPTURE if any(predicate(params, psi, p) for p in pursuers) else ESCAPE

    headings = TWO_PI * np.arange(grid) / grid
    labels = [label(h) for h in headings]

    def boundary(lo, hi, lo_label, res):
        while hi - lo > res:
            mid = 0.5 * (lo + hi)
            if label(mid) == lo_label:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    return _assemble(list(headings), labels, boundary, resolution)


def grid_labels(params: ScenarioParams, pursuers, headings, predicate=capture_predicate) -> list[str]:
    return [CAPTURE if any(predicate(params, h, p) for p in pursuers) else ESCAPE for h in headings]

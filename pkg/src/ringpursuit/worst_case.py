"""Worst-case pursuer start: the capturing start farthest behind the evader's exit point."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import (
    CaptureKind,
    CaptureSolution,
    Direction,
    NoBracket,
    NoConvergence,
    NoTangency,
    ScenarioParams,
)
from .geometry import exc_start, tac_start
from .tgc import solve_tgc


class Regime(enum.Enum):
    EXC = "EXC"
    TGC = "TGC"
    TAC = "TAC"
    POINT = "Point"


REGIME_OF_KIND = {
    CaptureKind.EXIT_POINT: Regime.EXC,
    CaptureKind.TOUCH_AND_GO: Regime.TGC,
    CaptureKind.TANGENT: Regime.TAC,
    CaptureKind.POINT: Regime.POINT,
}


@dataclass(frozen=True)
class WorstCaseResult:
    solution: CaptureSolution
    # arc from the start to the exit point, measured along the pursuer's travel
    travel: float
    regime: Regime


def capture_candidates(params: ScenarioParams, psi_e: float, direction=Direction.CW) -> dict:
    """All capture configurations that exist for this heading, keyed by regime."""
    direction = Direction.parse(direction)
    exc = exc_start(params, psi_e, direction)
    out = {REGIME_OF_KIND[exc.kind]: exc}
    if params.rho == 0:
        return out
    try:
        out[Regime.TAC] = tac_start(params, psi_e, direction)
    except NoTangency:
        pass
    try:
        out[Regime.TGC] = solve_tgc(params, psi_e, direction)
    except (NoBracket, NoConvergence):
        pass
    return out


def worst_case_start(params: ScenarioParams, psi_e: float, direction=Direction.CW) -> WorstCaseResult:
    cands = capture_candidates(params, psi_e, direction)
    # ties resolve toward EXC, which is listed first
    best = max(cands.values(), key=lambda s: s.setback)
    return WorstCaseResult(best, best.setback, REGIME_OF_KIND[best.kind])


def worst_case_sweep(params: ScenarioParams, headings, direction=Direction.CW) -> list[WorstCaseResult]:
    headings = list(headings)
    if not headings:
        raise ValueError("headings must be non-empty")
    return [worst_case_start(params, float(h), direction) for h in headings]


def regime_boundaries(params: ScenarioParams, headings, direction=Direction.CW, tol: float = 1e-8) -> list[float]:
    """Headings where the worst-case regime changes, located by bisection between grid points."""
    headings = [float(h) for h in headings]
    regimes = [r.regime for r in worst_case_sweep(params, headings, direction)]
    found = []
    for (h0, r0), (h1, r1) in zip(zip(headings, regimes), zip(headings[1:], regimes[1:])):
        if r0 == r1:
            continue
        lo, hi = h0, h1
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if worst_case_start(params, mid, direction).regime == r0:
                lo = mid
            else:
                hi = mid
        found.append(0.5 * (lo + hi))
    return found

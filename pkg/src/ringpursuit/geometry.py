"""Closed-form capture configurations: point, exit-point (EXC) and tangent (TAC).

All start formulas use the signed form ``theta_p0 = theta_pf - a*gamma*d/R``
with ``a`` the pursuer direction, so the pursuer always sits behind its final
point along its own direction of travel.
"""

from __future__ import annotations

import math

import numpy as np

from .core import (
    TWO_PI,
    CaptureKind,
    CaptureSolution,
    Direction,
    DomainError,
    NoTangency,
    ScenarioParams,
    normalize_angle,
)


def exit_distance(params: ScenarioParams, theta_f: float) -> float:
    """Evader run length from ``(r, 0)`` to the ring point at ``theta_f`` (law of cosines)."""
    R, r = params.R, params.r
    return math.sqrt(max(R * R + r * r - 2.0 * R * r * math.cos(theta_f), 0.0))


def heading_for_exit(params: ScenarioParams, theta_f: float) -> float:
    """Heading in [0, 2pi) that takes the evader to the ring point at ``theta_f``."""
    dx = params.R * math.cos(theta_f) - params.r
    dy = params.R * math.sin(theta_f)
    return normalize_angle(math.atan2(dy, dx))


def exit_for_heading(params: ScenarioParams, psi_e: float) -> tuple[float, float]:
    """Forward ray/circle intersection: returns ``(theta_f, EF)``."""
    R, r = params.R, params.r
    c, s = math.cos(psi_e), math.sin(psi_e)
    # positive root of t^2 + 2 r t cos(psi) + r^2 - R^2 = 0
    ef = -r * c + math.sqrt(R * R - (r * s) ** 2)
    theta_f = normalize_angle(math.atan2(ef * s, r + ef * c))
    return theta_f, ef


def chord_offset(params: ScenarioParams, chord: float | None = None) -> float:
    """Central angle subtending a chord of length ``chord`` (default: the capture radius)."""
    chord = params.rho if chord is None else chord
    if not 0 <= chord <= 2 * params.R:
        raise DomainError("chord", "0 <= chord <= 2R", chord)
    return 2.0 * math.asin(min(chord / (2.0 * params.R), 1.0))


def _solution(kind, params, psi_e, direction, theta_f, theta_pf, d, point, chord=0.0, offset=0.0):
    a = int(direction)
    return CaptureSolution(
        kind=kind,
        psi_e=normalize_angle(psi_e),
        direction=Direction(a),
        theta_f=theta_f,
        theta_pf=theta_pf,
        theta_p0=theta_pf - a * params.gamma * d / params.R,
        t_c=d / params.v_evader,
        capture_point=(float(point[0]), float(point[1])),
        evader_travel=d,
        chord=chord,
        offset=offset,
    )


def point_capture_start(params: ScenarioParams, psi_e: float, direction=Direction.CW) -> CaptureSolution:
    """Pursuer start that meets the evader exactly at its exit point."""
    direction = Direction.parse(direction)
    theta_f, ef = exit_for_heading(params, psi_e)
    exit_pt = params.R * np.array([math.cos(theta_f), math.sin(theta_f)])
    return _solution(CaptureKind.POINT, params, psi_e, direction, theta_f, theta_f, ef, exit_pt)


def exc_start(params: ScenarioParams, psi_e: float, direction=Direction.CW, edge: str = "leading") -> CaptureSolution:
    """Exit-point capture: the capture disk's edge reaches the exit point as the evader does.

    ``edge="leading"`` keeps the pursuer short of the exit point (most travel);
    ``edge="trailing"`` puts it past the exit point by the same chord angle.
    """
    direction = Direction.parse(direction)
    if params.rho == 0:
        return point_capture_start(params, psi_e, direction)
    if edge not in ("leading", "trailing"):
        raise DomainError("edge", "leading or trailing", edge)
    a = int(direction)
    theta_f, ef = exit_for_heading(params, psi_e)
    phi = chord_offset(params)
    theta_pf = theta_f - a * phi if edge == "leading" else theta_f + a * phi
    exit_pt = params.R * np.array([math.cos(theta_f), math.sin(theta_f)])
    return _solution(
        CaptureKind.EXIT_POINT, params, psi_e, direction, theta_f, theta_pf, ef, exit_pt,
        chord=params.rho, offset=phi,
    )


def tac_tangent_distance(params: ScenarioParams, psi_e: float, direction=Direction.CW) -> float:
    """Evader run length ``EI`` to the point where the capture circle is tangent to its path.

    The pursuer sits on the side of the path it approaches from: left of the
    evader velocity for a clockwise pursuer, right for counter-clockwise.
    """
    direction = Direction.parse(direction)
    R, r, rho = params.R, params.r, params.rho
    side = -int(direction) * rho
    c, s = math.cos(psi_e), math.sin(psi_e)
    disc = R * R - (r * s - side) ** 2
    if disc < 0:
        raise NoTangency(f"no tangent capture for heading {psi_e!r}: discriminant {disc:.3g} < 0")
    ei = -r * c + math.sqrt(disc)
    _, ef = exit_for_heading(params, psi_e)
    slack = params.tol.range_tol
    if ei < -slack or ei > ef + slack:
        raise NoTangency(f"tangent point at EI={ei:.6g} lies outside the run [0, {ef:.6g}]")
    return min(max(ei, 0.0), ef)


def tangent_pursuer_point(params: ScenarioParams, psi_e: float, ei: float, direction=Direction.CW) -> np.ndarray:
    """Pursuer position at tangency: E + EI*u + rho*n with n the approach-side normal."""
    side = -int(Direction.parse(direction)) * params.rho
    c, s = math.cos(psi_e), math.sin(psi_e)
    return np.array([params.r + ei * c - side * s, ei * s + side * c])


def tac_start(params: ScenarioParams, psi_e: float, direction=Direction.CW) -> CaptureSolution:
    direction = Direction.parse(direction)
    a = int(direction)
    ei = tac_tangent_distance(params, psi_e, direction)
    theta_f, ef = exit_for_heading(params, psi_e)
    chord = math.hypot(ef - ei, params.rho)
    phi_c = chord_offset(params, min(chord, 2 * params.R))
    theta_pf = theta_f - a * phi_c
    # the chord formula cannot distinguish offsets beyond pi
    p_f = tangent_pursuer_point(params, psi_e, ei, direction)
    on_ring = params.R * np.array([math.cos(theta_pf), math.sin(theta_pf)])
    if np.linalg.norm(on_ring - p_f) > 1e-6 * params.R:
        theta_pf = theta_f - a * (TWO_PI - phi_c)
    touch = np.array([params.r + ei * math.cos(psi_e), ei * math.sin(psi_e)])
    return _solution(
        CaptureKind.TANGENT, params, psi_e, direction, theta_f, theta_pf, ei, touch,
        chord=chord, offset=phi_c,
    )


def reflect_solution(sol: CaptureSolution) -> CaptureSolution:
    """Mirror a solution across the x axis (headings and angles negate, direction flips)."""
    return CaptureSolution(
        kind=sol.kind,
        psi_e=normalize_angle(-sol.psi_e),
        direction=sol.direction.flipped,
        theta_f=normalize_angle(-sol.theta_f),
        theta_pf=normalize_angle(-sol.theta_f) - (sol.theta_pf - sol.theta_f),
        theta_p0=normalize_angle(-sol.theta_f) - (sol.theta_p0 - sol.theta_f),
        t_c=sol.t_c,
        capture_point=(sol.capture_point[0], -sol.capture_point[1]),
        evader_travel=sol.evader_travel,
        chord=sol.chord,
        offset=sol.offset,
    )

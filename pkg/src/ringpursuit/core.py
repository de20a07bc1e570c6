"""Shared scenario types, angle conventions and parameter validation.

Geometry: the containment disk is centred at the origin with radius ``R``.
The evader starts at ``(r, 0)`` and runs at unit speed on a constant heading.
The pursuer lives on the ring and moves at speed ``gamma``; ``direction`` is
-1 for clockwise (decreasing polar angle) and +1 for counter-clockwise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

TWO_PI = 2.0 * math.pi


class DomainError(ValueError):
    """A parameter lies outside its admissible range."""

    def __init__(self, key: str, constraint: str, value=None):
        self.key = key
        self.constraint = constraint
        self.value = value
        msg = f"{key}: must satisfy {constraint}"
        if value is not None:
            msg += f" (got {value!r})"
        super().__init__(msg)


class Direction(enum.IntEnum):
    CW = -1
    CCW = 1

    @classmethod
    def parse(cls, value) -> "Direction":
        if isinstance(value, Direction):
            return value
        if isinstance(value, str):
            try:
                return cls[value.strip().upper()]
            except KeyError:
                raise DomainError("direction", "one of cw, ccw", value) from None
        if value in (-1, 1):
            return cls(int(value))
        raise DomainError("direction", "one of -1 (cw), +1 (ccw)", value)

    @property
    def flipped(self) -> "Direction":
        return Direction(-int(self))


class Policy(enum.Enum):
    FIXED = "fixed"
    FAVORABLE = "favorable"


class CaptureKind(enum.Enum):
    POINT = "Point"
    EXIT_POINT = "ExitPoint"
    TANGENT = "Tangent"
    TOUCH_AND_GO = "TouchAndGo"


@dataclass(frozen=True)
class ToleranceConfig:
    angle_tol: float = 1e-10
    range_tol: float = 1e-9
    # None selects the anti-tunnelling default, see ScenarioParams.dt
    time_step: Optional[float] = None
    max_bisection_iters: int = 200

    def __post_init__(self):
        for key in ("angle_tol", "range_tol"):
            val = getattr(self, key)
            if not (math.isfinite(val) and val > 0):
                raise DomainError(key, "> 0", val)
        if self.time_step is not None and not (
            math.isfinite(self.time_step) and self.time_step > 0
        ):
            raise DomainError("time_step", "> 0", self.time_step)
        if int(self.max_bisection_iters) != self.max_bisection_iters or self.max_bisection_iters < 1:
            raise DomainError("max_bisection_iters", "integer >= 1", self.max_bisection_iters)


@dataclass(frozen=True)
class ScenarioParams:
    """Disk radius ``R``, capture radius ``rho``, speed ratio ``gamma`` and
    evader start offset ``r`` (speeds normalised so the evader has unit speed)."""

    rho: float
    gamma: float
    r: float
    R: float = 1.0
    tol: ToleranceConfig = field(default_factory=ToleranceConfig)

    def __post_init__(self):
        for key in ("R", "rho", "gamma", "r"):
            val = getattr(self, key)
            if not isinstance(val, (int, float, np.floating, np.integer)) or not math.isfinite(val):
                raise DomainError(key, "finite real", val)
        if not self.R > 0:
            raise DomainError("R", "R > 0", self.R)
        if not 0 <= self.rho < 2 * self.R:
            raise DomainError("rho", "0 <= rho < 2R", self.rho)
        if not 0 < self.gamma < 1:
            raise DomainError("gamma", "0 < gamma < 1 (evader must be faster)", self.gamma)
        if not 0 <= self.r < self.R:
            raise DomainError("r", "0 <= r < R", self.r)
        if not isinstance(self.tol, ToleranceConfig):
            raise DomainError("tol", "ToleranceConfig instance", self.tol)

    @property
    def v_evader(self) -> float:
        return 1.0

    @property
    def v_pursuer(self) -> float:
        return self.gamma

    @property
    def dt(self) -> float:
        """Integrator step: explicit ``tol.time_step`` or the anti-tunnelling default."""
        if self.tol.time_step is not None:
            return self.tol.time_step
        scale = min(self.rho, self.R - self.r) if self.rho > 0 else self.R - self.r
        return min(scale / (10.0 * (1.0 + self.gamma)), 0.01 * self.R)

    @property
    def evader_start(self) -> np.ndarray:
        return np.array([self.r, 0.0])


@dataclass(frozen=True)
class PursuerSpec:
    theta_p0: float
    direction: Direction = Direction.CW
    policy: Policy = Policy.FIXED

    def __post_init__(self):
        if not math.isfinite(self.theta_p0):
            raise DomainError("theta_p0", "finite", self.theta_p0)
        object.__setattr__(self, "direction", Direction.parse(self.direction))
        if not isinstance(self.policy, Policy):
            object.__setattr__(self, "policy", Policy(self.policy))

    def position(self, R: float = 1.0) -> np.ndarray:
        return R * np.array([math.cos(self.theta_p0), math.sin(self.theta_p0)])


@dataclass(frozen=True)
class EvaderIntent:
    """Constant evader heading; exit quantities depend on the scenario."""

    psi_e: float

    def __post_init__(self):
        if not math.isfinite(self.psi_e):
            raise DomainError("psi_e", "finite", self.psi_e)

    @property
    def velocity(self) -> np.ndarray:
        return np.array([math.cos(self.psi_e), math.sin(self.psi_e)])

    def exit_angle(self, params: ScenarioParams) -> float:
        from .geometry import exit_for_heading

        return exit_for_heading(params, self.psi_e)[0]

    def exit_distance(self, params: ScenarioParams) -> float:
        from .geometry import exit_for_heading

        return exit_for_heading(params, self.psi_e)[1]


@dataclass(frozen=True)
class CaptureSolution:
    """Closed-form or numerically solved capture configuration.

    ``theta_f`` is normalised to [0, 2pi); ``theta_pf`` and ``theta_p0`` are
    unwrapped offsets from it so that ``direction * (theta_pf - theta_p0)``
    is the pursuer's angular travel.
    """

    kind: CaptureKind
    psi_e: float
    direction: Direction
    theta_f: float
    theta_pf: float
    theta_p0: float
    t_c: float
    capture_point: tuple
    evader_travel: float
    # chord between the pursuer's final point and the exit point, and its angle
    chord: float = 0.0
    offset: float = 0.0

    def pursuer_final(self, R: float = 1.0) -> np.ndarray:
        return R * np.array([math.cos(self.theta_pf), math.sin(self.theta_pf)])

    @property
    def travel(self) -> float:
        """Pursuer arc travelled until capture (radians)."""
        return int(self.direction) * (self.theta_pf - self.theta_p0)

    @property
    def setback(self) -> float:
        """How far behind the exit point the start lies, along the travel direction."""
        return int(self.direction) * (self.theta_f - self.theta_p0)


class NoTangency(ArithmeticError):
    """The capture circle cannot be tangent to the evader path inside the disk."""


class NoBracket(ArithmeticError):
    """The touch-and-go residual does not change sign on the TAC/EXC bracket."""


class NoConvergence(ArithmeticError):
    pass


class SingularRange(ArithmeticError):
    """Line of sight undefined because the agents are (nearly) collocated."""


def normalize_angle(x: float) -> float:
    if not math.isfinite(x):
        raise DomainError("angle", "finite", x)
    y = math.fmod(x, TWO_PI)
    if y < 0:
        y += TWO_PI
    # fmod of values a hair below a multiple of 2pi can round up to 2pi
    return 0.0 if y >= TWO_PI else y


def signed_arc(start: float, end: float, direction) -> float:
    """Non-negative angle swept moving from ``start`` to ``end`` in ``direction``."""
    return normalize_angle(int(direction) * (end - start))


def wrap_to_pi(x):
    return (np.asarray(x) + math.pi) % TWO_PI - math.pi


def rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def canonicalize(evader_xy, psi_e: float, pursuer_thetas=(), R: float = 1.0):
    """Rotate a general scenario so the evader sits on the positive x axis.

    Returns ``(r, psi_e, thetas, angle)``; add ``angle`` to any angle computed
    in the canonical frame to map it back (see :func:`decanonicalize`).
    """
    x, y = float(evader_xy[0]), float(evader_xy[1])
    r = math.hypot(x, y)
    if r >= R:
        raise DomainError("evader", "|E| < R", r)
    angle = math.atan2(y, x) if r > 0 else 0.0
    thetas = tuple(normalize_angle(t - angle) for t in pursuer_thetas)
    return r, normalize_angle(psi_e - angle), thetas, angle


def decanonicalize(theta: float, angle: float) -> float:
    return normalize_angle(theta + angle)

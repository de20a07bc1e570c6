"""Capture analysis for a fast straight-running evader and a slower pursuer orbiting the containment ring."""

from .core import (
    CaptureKind,
    CaptureSolution,
    Direction,
    DomainError,
    EvaderIntent,
    NoBracket,
    NoConvergence,
    NoTangency,
    Policy,
    PursuerSpec,
    ScenarioParams,
    SingularRange,
    ToleranceConfig,
    normalize_angle,
    signed_arc,
)
from .geometry import (
    chord_offset,
    exc_start,
    exit_distance,
    exit_for_heading,
    heading_for_exit,
    point_capture_start,
    tac_start,
    tac_tangent_distance,
)
from .reach import HeadingIntervalSet, capture_predicate, escape_measure, escape_set
from .sim import Trajectory, capture_oracle, simulate
from .sweep import SweepRecord, sweep
from .tgc import solve_tgc
from .worst_case import Regime, WorstCaseResult, worst_case_start, worst_case_sweep

__version__ = "0.1.0"

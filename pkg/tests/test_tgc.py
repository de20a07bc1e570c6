import math

import numpy as np
import pytest

from ringpursuit import (
    NoBracket,
    NoTangency,
    PursuerSpec,
    ScenarioParams,
    exc_start,
    exit_for_heading,
    solve_tgc,
    tac_start,
)
from ringpursuit.core import CaptureKind, Direction, wrap_to_pi
from ringpursuit.sim import range_and_rate, range_minimum
from ringpursuit.tgc import RATE_TOL, _residual
from ringpursuit.worst_case import regime_boundaries

CW, CCW = Direction.CW, Direction.CCW
PSI = 1.6 * math.pi


@pytest.fixture
def p04():
    return ScenarioParams(rho=0.5, gamma=0.5, r=0.4)


def farthest_capturing_start(params, psi, direction, near, far):
    """Bisect on the simulated minimum range between a capturing and an escaping start."""
    _, ef = exit_for_heading(params, psi)

    def caught(theta):
        return range_minimum(params, psi, PursuerSpec(theta, direction), ef, dt=params.dt / 4)[1] <= params.rho

    assert caught(near) and not caught(far)
    for _ in range(60):
        mid = 0.5 * (near + far)
        if caught(mid):
            near = mid
        else:
            far = mid
    return 0.5 * (near + far)


def test_worked_instance_beats_exc_and_tac(p04):
    sol = solve_tgc(p04, PSI, CW)
    assert sol.kind is CaptureKind.TOUCH_AND_GO
    assert sol.theta_p0 > 6.32276 > 6.27853
    assert sol.setback > exc_start(p04, PSI, CW).setback > tac_start(p04, PSI, CW).setback


def test_worked_instance_matches_simulation_boundary(p04):
    sol = solve_tgc(p04, PSI, CW)
    oracle = farthest_capturing_start(p04, PSI, CW, sol.theta_p0 - 0.05, sol.theta_p0 + 0.05)
    assert sol.theta_p0 == pytest.approx(oracle, abs=1e-8)
    assert sol.theta_p0 == pytest.approx(6.3321645216, abs=1e-9)


def test_worked_instance_matches_dense_grid(p04):
    tac, exc = tac_start(p04, PSI, CW), exc_start(p04, PSI, CW)
    grid = np.linspace(tac.theta_pf, exc.theta_pf, 20001)
    rates = np.array([abs(_residual(p04, PSI, -1, th)[0]) for th in grid])
    k = int(np.argmin(rates))
    step = abs(grid[1] - grid[0])
    assert solve_tgc(p04, PSI, CW).theta_pf == pytest.approx(grid[k], abs=step)


def test_post_conditions(p04):
    sol = solve_tgc(p04, PSI, CW)
    d, rate = range_and_rate(p04, PSI, PursuerSpec(sol.theta_p0, CW), sol.t_c)
    assert d == pytest.approx(p04.rho, abs=p04.tol.range_tol)
    assert abs(rate) <= RATE_TOL
    t_min, d_min = range_minimum(p04, PSI, PursuerSpec(sol.theta_p0, CW), exit_for_heading(p04, PSI)[1])
    assert t_min == pytest.approx(sol.t_c, abs=1e-4)
    assert d_min == pytest.approx(p04.rho, abs=1e-6)


def test_point_capture_has_no_bracket():
    p = ScenarioParams(rho=0.0, gamma=0.5, r=0.4)
    for psi in np.linspace(0, 2 * math.pi, 25):
        with pytest.raises(NoBracket):
            solve_tgc(p, psi, CW)


def test_no_bracket_without_tangent_capture(p04):
    with pytest.raises(NoTangency):
        tac_start(p04, PSI, CCW)
    with pytest.raises(NoBracket):
        solve_tgc(p04, PSI, CCW)


def test_bracket_signs_differ_and_dominance_over_grid(p04):
    solved = 0
    for direction in (CW, CCW):
        a = int(direction)
        for psi in np.linspace(0, 2 * math.pi, 145):
            try:
                sol = solve_tgc(p04, psi, direction)
            except NoBracket:
                continue
            solved += 1
            tac, exc = tac_start(p04, psi, direction), exc_start(p04, psi, direction)
            f_lo, _ = _residual(p04, psi, a, tac.theta_pf)
            f_hi, _ = _residual(p04, psi, a, exc.theta_pf)
            assert f_lo * f_hi < 0
            assert sol.setback >= exc.setback - 1e-12
            assert sol.setback >= tac.setback - 1e-12
    assert solved > 20


def test_mirror_symmetry(p04):
    cw = solve_tgc(p04, PSI, CW)
    ccw = solve_tgc(p04, -PSI, CCW)
    assert wrap_to_pi(ccw.theta_p0 + cw.theta_p0) == pytest.approx(0.0, abs=1e-9)
    assert ccw.t_c == pytest.approx(cw.t_c, abs=1e-9)


def test_continuous_transition_into_exit_capture(p04):
    boundaries = regime_boundaries(p04, np.linspace(math.pi, 2 * math.pi, 73), CW, tol=1e-9)
    assert boundaries
    for b in boundaries:
        gaps = []
        for eps in (1e-3, 1e-5, 1e-7):
            for psi in (b - eps, b + eps):
                try:
                    tgc = solve_tgc(p04, psi, CW)
                except NoBracket:
                    continue
                gaps.append(abs(tgc.theta_p0 - exc_start(p04, psi, CW).theta_p0))
        assert gaps
        assert min(gaps) < 1e-4

import math

import pytest
from hypothesis import given, strategies as st

from ringpursuit import DomainError, PursuerSpec, ScenarioParams, ToleranceConfig, normalize_angle, signed_arc
from ringpursuit.core import Direction, canonicalize, decanonicalize

angles = st.floats(min_value=-100, max_value=100, allow_nan=False)


@pytest.mark.parametrize("x, expected", [(0.0, 0.0), (2 * math.pi, 0.0), (-math.pi / 2, 3 * math.pi / 2)])
def test_normalize_angle_examples(x, expected):
    assert normalize_angle(x) == pytest.approx(expected, abs=1e-15)


def test_normalize_angle_rejects_non_finite():
    with pytest.raises(DomainError):
        normalize_angle(float("nan"))


@pytest.mark.parametrize("start, end, d, expected", [
    (math.pi, math.pi / 2, Direction.CW, math.pi / 2),
    (math.pi / 2, math.pi, Direction.CW, 3 * math.pi / 2),
    (0.0, math.pi / 2, Direction.CCW, math.pi / 2),
])
def test_signed_arc_examples(start, end, d, expected):
    assert signed_arc(start, end, d) == pytest.approx(expected)


@given(angles)
def test_normalize_is_idempotent_and_in_range(x):
    y = normalize_angle(x)
    assert 0 <= y < 2 * math.pi
    assert normalize_angle(y) == y
    assert math.isclose(math.cos(x), math.cos(y), abs_tol=1e-9)


@given(angles, angles, st.sampled_from([-1, 1]))
def test_signed_arc_round_trip_sums_to_full_turns(a, b, d):
    total = signed_arc(a, b, d) + signed_arc(b, a, d)
    assert min(abs(total), abs(total - 2 * math.pi)) < 1e-9
    # moving the arc in the direction lands on the target
    landed = a + d * signed_arc(a, b, d)
    assert math.isclose(math.cos(landed), math.cos(b), abs_tol=1e-9)
    assert math.isclose(math.sin(landed), math.sin(b), abs_tol=1e-9)


invalid_fields = st.one_of(
    st.tuples(st.just("R"), st.floats(max_value=0, allow_nan=False)),
    st.tuples(st.just("rho"), st.floats(max_value=-1e-12, allow_nan=False, allow_infinity=False)),
    st.tuples(st.just("rho"), st.floats(min_value=2.0, allow_nan=False)),
    st.tuples(st.just("gamma"), st.floats(max_value=0.0, allow_nan=False)),
    st.tuples(st.just("gamma"), st.floats(min_value=1.0, allow_nan=False)),
    st.tuples(st.just("r"), st.floats(max_value=-1e-12, allow_nan=False)),
    st.tuples(st.just("r"), st.floats(min_value=1.0, allow_nan=False)),
    st.tuples(st.sampled_from(["rho", "gamma", "r"]), st.just(float("nan"))),
)


@given(invalid_fields)
def test_scenario_params_reject_out_of_range(field_value):
    key, value = field_value
    kwargs = {"rho": 0.5, "gamma": 0.5, "r": 0.4, "R": 1.0}
    kwargs[key] = value
    with pytest.raises(DomainError) as err:
        ScenarioParams(**kwargs)
    assert err.value.key == key


def test_tolerance_config_rejects_non_positive():
    for kw in ({"angle_tol": 0}, {"range_tol": -1}, {"time_step": 0.0}, {"max_bisection_iters": 0}):
        with pytest.raises(DomainError):
            ToleranceConfig(**kw)


def test_default_time_step_guards_tunnelling():
    p = ScenarioParams(rho=0.05, gamma=0.9, r=0.9)
    assert p.dt == pytest.approx(min(0.05, 0.1) / (10 * 1.9))
    assert ScenarioParams(rho=0.5, gamma=0.1, r=0.0).dt == pytest.approx(0.01)
    assert ScenarioParams(rho=0.0, gamma=0.5, r=0.4).dt > 0


def test_pursuer_spec_parses_direction_strings():
    assert PursuerSpec(1.0, "ccw").direction is Direction.CCW
    with pytest.raises(DomainError):
        PursuerSpec(1.0, 0)


@given(st.floats(-0.9, 0.9), st.floats(-0.9, 0.9), angles)
def test_canonicalize_round_trip(x, y, psi):
    if math.hypot(x, y) >= 1:
        return
    r, psi_c, (theta_c,), rot = canonicalize((x, y), psi, (psi,))
    assert r == pytest.approx(math.hypot(x, y))
    assert math.isclose(math.cos(decanonicalize(psi_c, rot)), math.cos(psi), abs_tol=1e-9)
    assert math.isclose(math.sin(decanonicalize(theta_c, rot)), math.sin(psi), abs_tol=1e-9)

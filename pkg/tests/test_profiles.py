"""Profile kinematics against hand-frozen values and numerical oracles."""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dicingsim.profiles import (
    MotionProfileSpec, build_schedule, profile_position,
    TRAPEZOIDAL, SCURVE, JOG, HOME,
)
from oracles import integrate_schedule, bang_bang_trapezoid


def trap(target, v=50.0, a1=500.0, a2=500.0):
    return MotionProfileSpec(kind=TRAPEZOIDAL, target=target, v=v, a1=a1, a2=a2)


def scurve(target, v=50.0, a1=500.0, a2=500.0, j1=5000.0, j2=5000.0):
    return MotionProfileSpec(kind=SCURVE, target=target, v=v,
                             a1=a1, a2=a2, j1=j1, j2=j2)


class TestFrozenTrapezoid:
    # 0 -> 100 mm at v=50, a=500 both ways: ramps 0.1 s / 2.5 mm each,
    # cruise 95 mm / 1.9 s, total 2.1 s.
    def test_total_time(self):
        sched = build_schedule(trap(100.0), 0.0)
        assert sched.total_time == pytest.approx(2.1, abs=1e-12)

    def test_early_accel_position(self):
        p, v, done = profile_position(trap(100.0), 0.0, 0.05)
        assert p == pytest.approx(0.625, abs=1e-12)
        assert v == pytest.approx(25.0, abs=1e-12)
        assert not done

    def test_cruise_midpoint(self):
        p, v, done = profile_position(trap(100.0), 0.0, 1.05)
        assert p == pytest.approx(50.0, abs=1e-9)
        assert v == pytest.approx(50.0, abs=1e-12)

    def test_terminal_exact(self):
        p, v, done = profile_position(trap(100.0), 0.0, 2.1)
        assert p == 100.0 and v == 0.0 and done

    def test_negative_direction(self):
        p, v, done = profile_position(trap(-100.0), 0.0, 0.05)
        assert p == pytest.approx(-0.625, abs=1e-12)
        assert v == pytest.approx(-25.0, abs=1e-12)

    def test_triangular_peak_below_limit(self):
        # 1 mm is too short to reach 50 mm/s: peak = sqrt(500) ~ 22.36.
        sched = build_schedule(trap(1.0), 0.0)
        vp = math.sqrt(500.0)
        assert max(sched.v_bound) == pytest.approx(vp, rel=1e-12)
        assert sched.total_time == pytest.approx(2.0 * vp / 500.0, rel=1e-12)
        p, v, done = profile_position(trap(1.0), 0.0, sched.total_time)
        assert p == 1.0 and done

    def test_initial_condition(self):
        p, v, done = profile_position(trap(100.0), 0.0, 0.0)
        assert (p, v, done) == (0.0, 0.0, False)

    def test_zero_length_move_done_immediately(self):
        p, v, done = profile_position(trap(25.0), 25.0, 0.0)
        assert (p, v, done) == (25.0, 0.0, True)


class TestFrozenScurve:
    # 0 -> 100 at v=50, a=500, j=5000: each ramp is exactly jerk-saturated
    # (tj = 0.1 s, no constant-accel hold), ramp dist 5 mm, cruise 1.8 s.
    def test_total_time(self):
        sched = build_schedule(scurve(100.0), 0.0)
        assert sched.total_time == pytest.approx(2.2, abs=1e-12)

    def test_first_jerk_segment(self):
        p, v, done = profile_position(scurve(100.0), 0.0, 0.1)
        assert p == pytest.approx(5000.0 * 0.1 ** 3 / 6.0, rel=1e-12)
        assert v == pytest.approx(25.0, rel=1e-12)

    def test_terminal_exact(self):
        p, v, done = profile_position(scurve(100.0), 0.0, 2.2)
        assert p == 100.0 and v == 0.0 and done

    def test_short_move_lands_exactly(self):
        spec = scurve(0.7, v=400.0, a1=3000.0, a2=2000.0, j1=80000.0, j2=50000.0)
        sched = build_schedule(spec, 0.0)
        p, v, done = profile_position(spec, 0.0, sched.total_time)
        assert p == 0.7 and done


class TestJog:
    def test_ramp_then_cruise(self):
        spec = MotionProfileSpec(kind=JOG, v=20.0, a1=100.0, a2=100.0)
        p, v, done = profile_position(spec, 0.0, 0.2)
        assert p == pytest.approx(2.0, rel=1e-12)
        assert v == pytest.approx(20.0)
        assert not done
        p, v, done = profile_position(spec, 0.0, 0.5)
        assert p == pytest.approx(8.0, rel=1e-12)
        assert not done

    def test_stop_from_speed(self):
        spec = MotionProfileSpec(kind=JOG, v=0.0, a1=200.0, a2=200.0, v0=20.0)
        p, v, done = profile_position(spec, 5.0, 0.1)
        assert p == pytest.approx(6.0, rel=1e-12)
        assert v == 0.0 and done

    def test_reversal_passes_through_zero(self):
        spec = MotionProfileSpec(kind=JOG, v=-10.0, a1=100.0, a2=100.0, v0=10.0)
        p, v, done = profile_position(spec, 0.0, 0.1)
        assert v == pytest.approx(0.0, abs=1e-9)
        p, v, done = profile_position(spec, 0.0, 0.2)
        assert v == pytest.approx(-10.0)
        assert not done

    def test_stop_at_rest_is_done(self):
        spec = MotionProfileSpec(kind=JOG, v=0.0, a1=100.0, a2=100.0, v0=0.0)
        assert profile_position(spec, 3.0, 0.0) == (3.0, 0.0, True)


class TestValidation:
    def test_home_is_not_sampleable(self):
        spec = MotionProfileSpec(kind=HOME, v=10, v2=3, v3=1, a1=100, a2=100)
        with pytest.raises(ValueError):
            profile_position(spec, 0.0, 0.0)

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            profile_position(trap(1.0), 0.0, -0.1)

    @pytest.mark.parametrize("bad", [
        dict(kind=TRAPEZOIDAL, target=1.0, v=0.0, a1=1, a2=1),
        dict(kind=TRAPEZOIDAL, target=None, v=1.0, a1=1, a2=1),
        dict(kind=TRAPEZOIDAL, target=1.0, v=1.0, a1=0, a2=1),
        dict(kind=SCURVE, target=1.0, v=1.0, a1=1, a2=1, j1=0, j2=1),
        dict(kind="warp", target=1.0, v=1.0, a1=1, a2=1),
    ])
    def test_invalid_specs_rejected(self, bad):
        with pytest.raises(ValueError):
            MotionProfileSpec(**bad).validate()


def _random_spec(rng):
    kind = TRAPEZOIDAL if rng.random() < 0.5 else SCURVE
    dist = rng.uniform(0.01, 200.0)
    v = rng.uniform(max(5.0, dist / 2.0), 500.0)
    a1 = rng.uniform(200.0, 5000.0)
    a2 = rng.uniform(200.0, 5000.0)
    p0 = rng.uniform(-100.0, 100.0)
    sign = 1.0 if rng.random() < 0.5 else -1.0
    target = p0 + sign * dist
    if kind == TRAPEZOIDAL:
        return MotionProfileSpec(kind=kind, target=target, v=v, a1=a1, a2=a2), p0
    j1 = rng.uniform(max(a1, 500.0), 2e5)
    j2 = rng.uniform(max(a2, 500.0), 2e5)
    return MotionProfileSpec(kind=kind, target=target, v=v, a1=a1, a2=a2,
                             j1=j1, j2=j2), p0


def check_profile_against_integration(spec, p0, dt=1e-6,
                                      pos_tol=1e-6, term_tol=1e-9):
    """Shared by the unit suite (few specs) and acceptance (500 specs)."""
    sched = build_schedule(spec, p0)
    T = sched.total_time
    rng_t = np.linspace(0.0, T, 20)
    oracle_pos, oracle_term, oracle_vmax = integrate_schedule(
        sched.segments, sched.sign, rng_t, dt=dt)
    dist = abs(spec.target - p0)
    assert abs(oracle_term - (spec.target - p0)) <= max(term_tol, 5e-12 * dist), \
        "schedule does not integrate to the commanded distance"
    for t in rng_t:
        p_impl, v_impl, _ = profile_position(spec, p0, float(t))
        assert abs((p_impl - p0) - oracle_pos[float(t)]) <= pos_tol
        assert abs(v_impl) <= spec.v + 1e-9
    assert oracle_vmax <= spec.v + 1e-9
    p_end, v_end, done = profile_position(spec, p0, T)
    assert done and v_end == 0.0
    assert abs(p_end - spec.target) <= term_tol


def test_random_profiles_match_integration_oracle():
    rng = np.random.default_rng(20260810)
    for _ in range(40):
        spec, p0 = _random_spec(rng)
        check_profile_against_integration(spec, p0)


def test_trapezoid_matches_bang_bang_rule_oracle():
    # Fully independent rule-based oracle; coarse comparison because its
    # switching is quantised to its own dt.
    rng = np.random.default_rng(7)
    for _ in range(15):
        spec, p0 = _random_spec(rng)
        if spec.kind != TRAPEZOIDAL:
            continue
        dist = abs(spec.target - p0)
        sched = build_schedule(spec, p0)
        t_bb, p_bb, vmax_bb = bang_bang_trapezoid(dist, spec.v, spec.a1, spec.a2)
        assert p_bb == pytest.approx(dist, abs=2e-3)
        assert t_bb == pytest.approx(sched.total_time, abs=2e-3)
        assert vmax_bb <= spec.v + 1e-9


@settings(max_examples=60, deadline=None)
@given(dist=st.floats(0.001, 300.0), v=st.floats(1.0, 500.0),
       a1=st.floats(10.0, 5000.0), a2=st.floats(10.0, 5000.0),
       p0=st.floats(-150.0, 150.0), neg=st.booleans())
def test_trapezoid_properties(dist, v, a1, a2, p0, neg):
    target = p0 - dist if neg else p0 + dist
    spec = MotionProfileSpec(kind=TRAPEZOIDAL, target=target, v=v, a1=a1, a2=a2)
    sched = build_schedule(spec, p0)
    T = sched.total_time
    last_toward = -1e18
    for t in np.linspace(0.0, T * 1.1 + 1e-6, 50):
        p, vel, done = profile_position(spec, p0, float(t))
        assert abs(vel) <= v * (1 + 1e-12) + 1e-12
        toward = (p - p0) * (1 if target >= p0 else -1)
        assert toward >= last_toward - 1e-9, "position must be monotone"
        last_toward = toward
    p, vel, done = profile_position(spec, p0, T)
    assert done and p == target


@settings(max_examples=60, deadline=None)
@given(dist=st.floats(0.001, 300.0), v=st.floats(1.0, 400.0),
       a1=st.floats(50.0, 4000.0), a2=st.floats(50.0, 4000.0),
       j1=st.floats(500.0, 1e5), j2=st.floats(500.0, 1e5))
def test_scurve_jerk_bound_by_finite_differences(dist, v, a1, a2, j1, j2):
    spec = MotionProfileSpec(kind=SCURVE, target=dist, v=v,
                             a1=a1, a2=a2, j1=j1, j2=j2)
    sched = build_schedule(spec, 0.0)
    T = sched.total_time
    h = max(T / 4000.0, 1e-7)
    ts = np.arange(0.0, T, h)
    vels = np.array([profile_position(spec, 0.0, float(t))[1] for t in ts])
    acc_fd = np.diff(vels) / h
    jerk_fd = np.diff(acc_fd) / h
    jmax = max(j1, j2)
    assert np.max(np.abs(acc_fd)) <= max(a1, a2) + 1e-6 * max(a1, a2) + 1e-9
    assert np.max(np.abs(jerk_fd)) <= jmax + 1e-6 * jmax + 1e-6

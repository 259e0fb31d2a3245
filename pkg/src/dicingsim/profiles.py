"""Point-to-point and jog motion profile kinematics.

Profiles are evaluated in closed form from a piecewise schedule of
constant-jerk segments. A trapezoidal move is a three-segment schedule with
zero jerk (acceleration steps); an s-curve move is the jerk-limited
seven-segment schedule. A jog is an open-ended velocity ramp; a jog to
velocity zero is the controlled stop.

Schedules start from rest for positioning moves. Jogs may start from a
nonzero initial velocity so a running axis can be ramped or stopped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

TRAPEZOIDAL = "trapezoidal"
SCURVE = "scurve"
JOG = "jog"
HOME = "home"

_BISECT_ITERS = 90


@dataclass(frozen=True)
class MotionProfileSpec:
    """Parameters of one motion command.

    ``v`` is an unsigned magnitude for positioning and homing profiles and a
    signed target velocity for jogs (zero means controlled stop). ``v0`` is
    the velocity the axis already has when a jog is issued; positioning
    profiles always start from rest.
    """
    kind: str
    target: float | None = None
    v: float = 0.0
    a1: float = 0.0
    a2: float = 0.0
    j1: float = 0.0
    j2: float = 0.0
    v0: float = 0.0
    v2: float = 0.0
    v3: float = 0.0
    home_mode: int = 0
    estop: bool = False

    def validate(self) -> None:
        if self.kind not in (TRAPEZOIDAL, SCURVE, JOG, HOME):
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if self.kind in (TRAPEZOIDAL, SCURVE):
            if self.target is None:
                raise ValueError("positioning profile requires a target")
            if not self.v > 0:
                raise ValueError("positioning profile requires v > 0")
            if not (self.a1 > 0 and self.a2 > 0):
                raise ValueError("a1 and a2 must be positive")
            if self.kind == SCURVE and not (self.j1 > 0 and self.j2 > 0):
                raise ValueError("s-curve requires positive j1 and j2")
        elif self.kind == JOG:
            # v may be signed or zero (zero = stop); rates must allow a ramp.
            if self.v != 0.0 and not self.a1 > 0:
                raise ValueError("jog requires a1 > 0")
            if not self.a2 > 0:
                raise ValueError("jog requires a2 > 0 for deceleration")
        elif self.kind == HOME:
            if not (self.v > 0 and self.v2 > 0 and self.v3 > 0):
                raise ValueError("homing requires three positive velocities")
            if not (self.a1 > 0 and self.a2 > 0):
                raise ValueError("homing requires positive a1, a2")


@dataclass
class Schedule:
    """A compiled profile: constant-jerk segments plus boundary states.

    Segment ``i`` spans ``t_bound[i] .. t_bound[i+1]`` and has initial
    acceleration ``a0[i]`` and constant jerk ``jerk[i]``. Positions and
    velocities in the schedule are relative and unsigned; ``sign`` maps them
    onto the commanded direction. After ``total_time`` an open-ended schedule
    cruises at ``end_v`` forever (jogs); a closed one is done and pinned to
    ``end_p``.
    """
    segments: list = field(default_factory=list)   # (duration, a0, jerk)
    t_bound: list = field(default_factory=list)
    p_bound: list = field(default_factory=list)
    v_bound: list = field(default_factory=list)
    total_time: float = 0.0
    end_p: float = 0.0
    end_v: float = 0.0
    sign: float = 1.0
    open_ended: bool = False

    def _finish(self) -> None:
        t = p = v = 0.0
        self.t_bound, self.p_bound, self.v_bound = [0.0], [0.0], [0.0]
        for dur, a0, j in self.segments:
            p += v * dur + 0.5 * a0 * dur * dur + j * dur ** 3 / 6.0
            v += a0 * dur + 0.5 * j * dur * dur
            t += dur
            self.t_bound.append(t)
            self.p_bound.append(p)
            self.v_bound.append(v)
        self.total_time = t
        if not self.open_ended:
            self.v_bound[-1] = 0.0
        self.end_v = self.v_bound[-1]

    def sample(self, t: float):
        """State at time ``t`` from profile start.

        Returns ``(position, velocity, acceleration, done)`` with position
        relative to the start point, already signed.
        """
        s = self.sign
        if t >= self.total_time:
            if self.open_ended:
                p = self.end_p + self.end_v * (t - self.total_time)
                return s * p, s * self.end_v, 0.0, self.end_v == 0.0
            return s * self.end_p, 0.0, 0.0, True
        i = 0
        while self.t_bound[i + 1] <= t:
            i += 1
        dur, a0, j = self.segments[i]
        tau = t - self.t_bound[i]
        p0, v0 = self.p_bound[i], self.v_bound[i]
        a = a0 + j * tau
        v = v0 + a0 * tau + 0.5 * j * tau * tau
        p = p0 + v0 * tau + 0.5 * a0 * tau * tau + j * tau ** 3 / 6.0
        return s * p, s * v, s * a, False


def _trapezoid_segments(dist: float, v: float, a1: float, a2: float):
    d_ramps = 0.5 * v * v * (1.0 / a1 + 1.0 / a2)
    if d_ramps <= dist:
        t1, t3 = v / a1, v / a2
        t2 = (dist - d_ramps) / v
    else:
        v = math.sqrt(2.0 * dist * a1 * a2 / (a1 + a2))
        t1, t2, t3 = v / a1, 0.0, v / a2
    segs = [(t1, a1, 0.0)]
    if t2 > 0.0:
        segs.append((t2, 0.0, 0.0))
    segs.append((t3, -a2, 0.0))
    return segs


def _scurve_ramp(vp: float, a: float, j: float):
    """Times of one jerk-limited 0->vp velocity ramp: (t_jerk, t_const_accel)."""
    if vp * j >= a * a:
        return a / j, (vp - a * a / j) / a
    return math.sqrt(vp / j), 0.0


def _scurve_ramp_dist(vp: float, a: float, j: float) -> float:
    tj, ta = _scurve_ramp(vp, a, j)
    return 0.5 * vp * (2.0 * tj + ta)


def _scurve_segments(dist: float, v: float, a1: float, a2: float,
                     j1: float, j2: float):
    d_full = _scurve_ramp_dist(v, a1, j1) + _scurve_ramp_dist(v, a2, j2)
    if d_full <= dist:
        vp = v
        t_cruise = (dist - d_full) / v
    else:
        lo, hi = 0.0, v
        for _ in range(_BISECT_ITERS):
            mid = 0.5 * (lo + hi)
            if _scurve_ramp_dist(mid, a1, j1) + _scurve_ramp_dist(mid, a2, j2) > dist:
                hi = mid
            else:
                lo = mid
        vp = 0.5 * (lo + hi)
        t_cruise = 0.0
    tj1, ta1 = _scurve_ramp(vp, a1, j1)
    tj2, ta2 = _scurve_ramp(vp, a2, j2)
    ap1, ap2 = j1 * tj1, j2 * tj2
    segs = [(tj1, 0.0, j1)]
    if ta1 > 0.0:
        segs.append((ta1, ap1, 0.0))
    segs.append((tj1, ap1, -j1))
    if t_cruise > 0.0:
        segs.append((t_cruise, 0.0, 0.0))
    segs.append((tj2, 0.0, -j2))
    if ta2 > 0.0:
        segs.append((ta2, -ap2, 0.0))
    segs.append((tj2, -ap2, j2))
    return segs


def build_schedule(spec: MotionProfileSpec, p0: float) -> Schedule:
    """Compile a spec into a sampleable schedule anchored at ``p0``.

    Homing is a switch-seeking sequence, not a time profile; the axis
    simulator composes it from jogs, so it is rejected here.
    """
    spec.validate()
    if spec.kind == HOME:
        raise ValueError("home profiles are sequenced by the axis, not sampled")
    sched = Schedule()
    if spec.kind in (TRAPEZOIDAL, SCURVE):
        delta = spec.target - p0
        dist = abs(delta)
        sched.sign = 1.0 if delta >= 0 else -1.0
        if dist > 0.0:
            if spec.kind == TRAPEZOIDAL:
                sched.segments = _trapezoid_segments(dist, spec.v, spec.a1, spec.a2)
            else:
                sched.segments = _scurve_segments(
                    dist, spec.v, spec.a1, spec.a2, spec.j1, spec.j2)
        sched._finish()
        sched.end_p = dist
        return sched
    # Jog: signed ramp from v0 to v, then cruise (possibly forever).
    v0, vt = spec.v0, spec.v
    sched.open_ended = True
    if v0 * vt < 0.0:
        # Direction reversal: brake through zero, then ramp out.
        sched.segments = [
            (abs(v0) / spec.a2, -math.copysign(spec.a2, v0), 0.0),
            (abs(vt) / spec.a1, math.copysign(spec.a1, vt), 0.0),
        ]
    elif vt != v0:
        rate = spec.a1 if abs(vt) > abs(v0) else spec.a2
        sched.segments = [(abs(vt - v0) / rate, math.copysign(rate, vt - v0), 0.0)]
    sched.v_bound = [v0]
    # _finish integrates from v=0; rebuild with the jog's initial velocity.
    t = p = 0.0
    v = v0
    sched.t_bound, sched.p_bound, sched.v_bound = [0.0], [0.0], [v0]
    for dur, a0, j in sched.segments:
        p += v * dur + 0.5 * a0 * dur * dur
        v += a0 * dur
        t += dur
        sched.t_bound.append(t)
        sched.p_bound.append(p)
        sched.v_bound.append(v)
    sched.total_time = t
    sched.end_p = p
    sched.end_v = vt
    return sched


def profile_position(spec: MotionProfileSpec, p0: float, t: float):
    """Pure kinematic query: ``(position, velocity, done)`` at time ``t``.

    At completion the position equals the target exactly and the velocity is
    zero. A jog is done only once it has ramped to a commanded velocity of
    zero (a stop); a cruising jog never completes.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    sched = build_schedule(spec, p0)
    p_rel, v, _a, done = sched.sample(t)
    return p0 + p_rel, v, done

"""Motion controller board simulation.

Four axes, each integrating its active profile in lockstep ticks. The board
reports a bit-packed 16-bit status word per axis; the adapter layer decodes
it back into named flags. Command and status calls each record one
motion-class access.
"""
from __future__ import annotations

import math

from ..profiles import MotionProfileSpec, Schedule, build_schedule, JOG, HOME

FLAG_NAMES = (
    "homLim", "hwLimN", "hwLimP", "swLimN", "swLimP", "moving",
    "decel", "stall", "drvFault", "inPosition", "cmdError", "emergency",
)
FLAG_BITS = {name: 1 << i for i, name in enumerate(FLAG_NAMES)}
_RESERVED_MASK = 0xF000
_VALID_MASK = 0x0FFF

BIT_IN_POSITION = FLAG_BITS["inPosition"]

# Homing runs toward this datum; completion pins the axis position here.
HOME_DATUM = 0.0
_HOME_RELEASE = 0.05


def encode_status(flags) -> int:
    word = 0
    for name, bit in FLAG_BITS.items():
        if flags.get(name, False):
            word |= bit
    return word


def decode_status(word: int) -> dict:
    if word & _RESERVED_MASK:
        raise ValueError(f"status word 0x{word:04X} has reserved bits set")
    return {name: bool(word & bit) for name, bit in FLAG_BITS.items()}


class AxisSim:
    """One simulated servo axis with software/hardware travel limits."""

    _EPS = 1e-9

    def __init__(self, cfg, clock):
        self.cfg = cfg
        self.clock = clock
        self.pos = 0.0
        self.vel = 0.0
        self.acc = 0.0
        self.homed = False
        self.emergency = False
        self.drive_fault = False
        self.stall = False
        self.cmd_error = False
        self._sched: Schedule | None = None
        self._done = True
        self._start_tick = 0
        self._p_start = 0.0
        self._home_phase = None   # None | seek | stop1 | backoff | stop2 | approach
        self._home_spec = None
        self._hw_fault = False

    # -- command handling --------------------------------------------------

    def command(self, spec: MotionProfileSpec):
        """Apply one motion command. Returns (accepted, reason)."""
        try:
            spec.validate()
        except ValueError as exc:
            self.cmd_error = True
            return False, str(exc)

        if spec.estop:
            self.emergency = True
            self._halt()
            self.cmd_error = False
            return True, ""

        is_stop = spec.kind == JOG and spec.v == 0.0
        if self.emergency and not (is_stop or spec.kind == HOME):
            self.cmd_error = True
            return False, "emergency active; only stop and home accepted"

        if spec.kind == HOME:
            self.emergency = False
            self._begin_home(spec)
            self.cmd_error = False
            return True, ""

        if spec.kind == JOG:
            jog = MotionProfileSpec(
                kind=JOG, v=spec.v, a1=spec.a1 or self.cfg.amax,
                a2=spec.a2 or self.cfg.amax, v0=self.vel)
            self._home_phase = None
            self._start(jog)
            self.cmd_error = False
            return True, ""

        # Point-to-point positioning. The board takes these only from rest;
        # blending onto a running axis is not modelled.
        if abs(self.vel) > self._EPS or (self._sched is not None and not self._done):
            self.cmd_error = True
            return False, "axis busy"
        if not (self.cfg.sw_lim_neg <= spec.target <= self.cfg.sw_lim_pos):
            self.cmd_error = True
            return False, "target outside software limits"
        self._start(spec)
        self.cmd_error = False
        return True, ""

    def _start(self, spec: MotionProfileSpec) -> None:
        self._sched = build_schedule(spec, self.pos)
        self._p_start = self.pos
        self._start_tick = self.clock.tick
        self._done = self._sched.sample(0.0)[3]
        if self._done:
            self.pos = self._p_start + self._sched.sample(0.0)[0]
            self.vel = 0.0
            self.acc = 0.0

    def _halt(self) -> None:
        self.vel = 0.0
        self.acc = 0.0
        self._sched = None
        self._done = True
        self._home_phase = None

    def _begin_home(self, spec: MotionProfileSpec) -> None:
        self._home_spec = spec
        self.homed = False
        if self.pos < HOME_DATUM + _HOME_RELEASE:
            # Already on or too close to the switch: release it first.
            self._home_phase = "backoff"
            self._start(MotionProfileSpec(kind=JOG, v=spec.v2,
                                          a1=spec.a1, a2=spec.a2, v0=self.vel))
        else:
            self._home_phase = "seek"
            self._start(MotionProfileSpec(kind=JOG, v=-spec.v,
                                          a1=spec.a1, a2=spec.a2, v0=self.vel))

    # -- integration -------------------------------------------------------

    @property
    def active(self) -> bool:
        return (self._sched is not None and not self._done) or self._home_phase is not None

    def step(self) -> None:
        """Advance to the clock's current tick."""
        if self.emergency:
            if self.vel != 0.0 or self._sched is not None:
                self._halt()
            return
        if self._sched is not None and not self._done:
            t = (self.clock.tick - self._start_tick) * self.clock.tick_duration_s
            p_rel, v, a, done = self._sched.sample(t)
            self.pos = self._p_start + p_rel
            self.vel = v
            self.acc = a
            self._done = done
            if done:
                self.acc = 0.0
            self._check_hw()
        if self._home_phase is not None:
            self._home_step()

    def _home_step(self) -> None:
        spec = self._home_spec
        phase = self._home_phase
        # The switch region is strictly below the datum, so a homed axis
        # resting exactly at the datum does not hold the switch flag.
        on_switch = self.pos < HOME_DATUM - self._EPS
        if phase == "seek" and on_switch:
            self._home_phase = "stop1"
            self._start(MotionProfileSpec(kind=JOG, v=0.0,
                                          a1=spec.a1, a2=spec.a2, v0=self.vel))
        elif phase == "stop1" and self._done:
            self._home_phase = "backoff"
            self._start(MotionProfileSpec(kind=JOG, v=spec.v2,
                                          a1=spec.a1, a2=spec.a2, v0=self.vel))
        elif phase == "backoff" and self.pos > HOME_DATUM + _HOME_RELEASE:
            self._home_phase = "stop2"
            self._start(MotionProfileSpec(kind=JOG, v=0.0,
                                          a1=spec.a1, a2=spec.a2, v0=self.vel))
        elif phase == "stop2" and self._done:
            self._home_phase = "approach"
            self._start(MotionProfileSpec(kind=JOG, v=-spec.v3,
                                          a1=spec.a1, a2=spec.a2, v0=self.vel))
        elif phase == "approach" and on_switch:
            # Trip edge is the datum; pin the coordinate there.
            self.pos = HOME_DATUM
            self.homed = True
            self._home_phase = None
            self._halt()

    def _check_hw(self) -> None:
        if self.pos > self.cfg.hw_lim_pos:
            self.pos = self.cfg.hw_lim_pos
            self._hw_fault = True
            self._halt()
        elif self.pos < self.cfg.hw_lim_neg:
            self.pos = self.cfg.hw_lim_neg
            self._hw_fault = True
            self._halt()

    # -- status ------------------------------------------------------------

    def flags(self) -> dict:
        moving = (abs(self.vel) > self._EPS
                  or (self._sched is not None and not self._done
                      and self._home_phase is None)
                  or self._home_phase is not None)
        in_pos = not moving
        return {
            "homLim": self.pos < HOME_DATUM - self._EPS,
            "hwLimN": self.pos <= self.cfg.hw_lim_neg + self._EPS,
            "hwLimP": self.pos >= self.cfg.hw_lim_pos - self._EPS,
            "swLimN": self.pos < self.cfg.sw_lim_neg - self._EPS,
            "swLimP": self.pos > self.cfg.sw_lim_pos + self._EPS,
            "moving": moving,
            "decel": self.acc * self.vel < 0.0,
            "stall": self.stall,
            "drvFault": self.drive_fault,
            "inPosition": in_pos,
            "cmdError": self.cmd_error,
            "emergency": self.emergency,
        }

    def read(self):
        word = encode_status(self.flags())
        err = self.vel / self.cfg.servo_kv
        return word, self.pos, self.vel, err

    # -- fault injection (plant-side, not an access) -----------------------

    def force_position(self, pos: float) -> None:
        self.pos = pos
        self._halt()
        self._check_hw()

    def trigger_emergency(self) -> None:
        self.emergency = True
        self._halt()


class MotionControllerSim:
    """The motion board: command/status entry points that count accesses."""

    def __init__(self, axes_cfg, clock, ledger):
        self.axes = [AxisSim(cfg, clock) for cfg in axes_cfg]
        self.ledger = ledger

    def pe_motion_command(self, axis: int, spec: MotionProfileSpec):
        self.ledger.record("motion")
        return self.axes[axis].command(spec)

    def pe_motion_read_status(self, axis: int):
        self.ledger.record("motion")
        return self.axes[axis].read()

    def step(self) -> None:
        for ax in self.axes:
            if ax.active or ax.emergency:
                ax.step()

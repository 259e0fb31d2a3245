"""DAQ board simulation with a small peripheral plant behind it.

Digital outputs drive the plant (spindle, vacuum, coolant, lamp, air).
Digital inputs and the vacuum analog input reflect the plant's response:
feedback contacts close a configured delay after their actuator energises,
and vacuum pressure follows a first-order lag. Inputs are evaluated lazily
and exactly from the command timeline, so stepping costs nothing.
"""
from __future__ import annotations

import math

from ..config import (
    DO_SPINDLE, DO_VACUUM, DO_COOLANT, DO_AIR,
    DI_SPINDLE_FB, DI_COOLANT_FLOW, DI_BLADE_BROKEN, DI_AIR_OK,
    DI_WAFER_PRESENT, DI_DOOR_CLOSED, AI_VACUUM,
)


class DaqSim:
    def __init__(self, plant_cfg, clock, ledger):
        self.cfg = plant_cfg
        self.clock = clock
        self.ledger = ledger
        self.do = [False] * plant_cfg.do_channels
        self.ao = [0.0] * plant_cfg.ao_channels
        self._do_on_tick = [None] * plant_cfg.do_channels
        self._forced_di = {}
        self._forced_ai = {}
        self._wafer_present = False
        self._door_closed = True
        # Vacuum lag state: value at _vac_tick, updated analytically on read.
        self._vac_volts = 0.0
        self._vac_tick = 0

    # -- board entry points (each records one access) ------------------------

    def pe_daq_read(self, kind: str, port: int):
        self.ledger.record("daq")
        if kind == "di":
            if not 0 <= port < self.cfg.di_channels:
                raise ValueError(f"DI port {port} out of range")
            return self._di_value(port)
        if kind == "ai":
            if not 0 <= port < self.cfg.ai_channels:
                raise ValueError(f"AI port {port} out of range")
            return self._ai_value(port)
        if kind == "do":
            if not 0 <= port < self.cfg.do_channels:
                raise ValueError(f"DO port {port} out of range")
            return self.do[port]
        if kind == "ao":
            if not 0 <= port < self.cfg.ao_channels:
                raise ValueError(f"AO port {port} out of range")
            return self.ao[port]
        raise ValueError(f"unknown read kind {kind!r}")

    def pe_daq_write(self, kind: str, port: int, value) -> None:
        self.ledger.record("daq")
        if kind == "do":
            if not 0 <= port < self.cfg.do_channels:
                raise ValueError(f"DO port {port} out of range")
            self._set_do(port, bool(value))
        elif kind == "ao":
            if not 0 <= port < self.cfg.ao_channels:
                raise ValueError(f"AO port {port} out of range")
            self.ao[port] = float(value)
        else:
            raise ValueError(f"unknown write kind {kind!r}")

    # -- plant --------------------------------------------------------------

    def _set_do(self, port: int, value: bool) -> None:
        if port == DO_VACUUM and bool(self.do[port]) != value:
            # Fold the lag accumulated so far into the state before the
            # target changes.
            self._vac_volts = self._vacuum_now()
            self._vac_tick = self.clock.tick
        if value and not self.do[port]:
            self._do_on_tick[port] = self.clock.tick
        if not value:
            self._do_on_tick[port] = None
        self.do[port] = value

    def _delayed_fb(self, do_port: int, delay_s: float) -> bool:
        on_tick = self._do_on_tick[do_port]
        if not self.do[do_port] or on_tick is None:
            return False
        return (self.clock.tick - on_tick) * self.clock.tick_duration_s >= delay_s

    def _di_value(self, port: int) -> bool:
        if port in self._forced_di:
            return self._forced_di[port]
        if port == DI_SPINDLE_FB:
            return self._delayed_fb(DO_SPINDLE, self.cfg.spindle_feedback_delay_s)
        if port == DI_COOLANT_FLOW:
            return self._delayed_fb(DO_COOLANT, self.cfg.coolant_flow_delay_s)
        if port == DI_AIR_OK:
            return self._delayed_fb(DO_AIR, self.cfg.air_ok_delay_s)
        if port == DI_BLADE_BROKEN:
            return False
        if port == DI_WAFER_PRESENT:
            return self._wafer_present
        if port == DI_DOOR_CLOSED:
            return self._door_closed
        return False

    def _vacuum_now(self) -> float:
        target = self.cfg.vacuum_full_volts if self.do[DO_VACUUM] else 0.0
        dt = (self.clock.tick - self._vac_tick) * self.clock.tick_duration_s
        if dt <= 0.0:
            return self._vac_volts
        return target + (self._vac_volts - target) * math.exp(-dt / self.cfg.vacuum_tau_s)

    def _ai_value(self, port: int) -> float:
        if port in self._forced_ai:
            return self._forced_ai[port]
        if port == AI_VACUUM:
            return self._vacuum_now()
        return 0.0

    # -- injection hooks (plant physics, never counted) ----------------------

    def force_di(self, port: int, value) -> None:
        if value is None:
            self._forced_di.pop(port, None)
        else:
            self._forced_di[port] = bool(value)

    def force_ai(self, port: int, volts) -> None:
        if volts is None:
            self._forced_ai.pop(port, None)
        else:
            self._forced_ai[port] = float(volts)

    def set_wafer_present(self, present: bool) -> None:
        self._wafer_present = present

    def set_door_closed(self, closed: bool) -> None:
        self._door_closed = closed

"""Simulation clock. Lockstep by default: time moves only when stepped."""
from __future__ import annotations

LOCKSTEP = "lockstep"
REALTIME = "realtime"


class SimClock:
    def __init__(self, tick_duration_s: float = 0.001, mode: str = LOCKSTEP):
        if tick_duration_s <= 0:
            raise ValueError("tick_duration_s must be positive")
        if mode not in (LOCKSTEP, REALTIME):
            raise ValueError(f"unknown clock mode {mode!r}")
        self.tick = 0
        self.tick_duration_s = tick_duration_s
        self.mode = mode

    @property
    def time_s(self) -> float:
        return self.tick * self.tick_duration_s

    def advance(self, n_ticks: int = 1) -> None:
        if n_ticks < 0:
            raise ValueError("clock cannot run backwards")
        self.tick += n_ticks

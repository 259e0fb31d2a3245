"""Deterministic simulations of the four installed boards.

Everything observable about the machine flows through the four ``pe_*``
entry-point families here (motion, vision, daq, net); each call records one
access in the ledger. Stepping the simulation records none.
"""
from __future__ import annotations

from ..config import MachineConfig, X, Y, THETA
from ..ledger import AccessLedger
from .clock import SimClock, LOCKSTEP, REALTIME
from .motion import MotionControllerSim, AxisSim, encode_status, decode_status, FLAG_NAMES
from .daq import DaqSim
from .vision import FrameGrabberSim, FrameBuffer
from .network import NetEndpointSim, FactoryServerStub
from .wafer import WaferSim, Groove

__all__ = [
    "EquipmentSim", "SimClock", "LOCKSTEP", "REALTIME",
    "MotionControllerSim", "AxisSim", "encode_status", "decode_status",
    "FLAG_NAMES", "DaqSim", "FrameGrabberSim", "FrameBuffer",
    "NetEndpointSim", "FactoryServerStub", "WaferSim", "Groove",
]


class EquipmentSim:
    """The machine's physical side: one clock, four boards, one wafer."""

    def __init__(self, config: MachineConfig, wafer: WaferSim | None = None,
                 bin_ticks: int = 1000, mode: str = "", seed: int = 0,
                 clock_mode: str = LOCKSTEP):
        config.validate()
        self.config = config
        self.clock = SimClock(config.tick_duration_s, clock_mode)
        self.ledger = AccessLedger(self.clock, bin_ticks=bin_ticks,
                                   mode=mode, seed=seed)
        self.wafer = wafer if wafer is not None else WaferSim()
        self.motion = MotionControllerSim(config.axes, self.clock, self.ledger)
        self.daq = DaqSim(config.plant, self.clock, self.ledger)
        self.daq.set_wafer_present(self.wafer.present)
        self.fg = FrameGrabberSim(config.camera, self.clock, self.ledger,
                                  self.wafer, self.stage_pose)
        self.net = NetEndpointSim(self.clock, self.ledger)

    def stage_pose(self):
        axes = self.motion.axes
        return axes[X].pos, axes[Y].pos, axes[THETA].pos

    def step_simulation(self, n_ticks: int = 1) -> None:
        """Advance lockstep time. Never records an access."""
        if self.clock.mode != LOCKSTEP:
            raise RuntimeError("explicit stepping requires lockstep mode")
        for _ in range(n_ticks):
            self.clock.advance(1)
            self.motion.step()

"""Machine configuration.

Everything the simulator needs to be deterministic lives here: tick length,
axis limits and rates, plant response constants, camera geometry, matching
threshold, and layer periods. Configs round-trip through JSON so a run can be
pinned to a file.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict

X, Y, Z, THETA = 0, 1, 2, 3
AXIS_NAMES = ("X", "Y", "Z", "THETA")

# DO port roles
DO_SPINDLE, DO_VACUUM, DO_COOLANT, DO_LAMP, DO_AIR = 0, 1, 2, 3, 4
# DI port roles
DI_SPINDLE_FB, DI_COOLANT_FLOW, DI_BLADE_BROKEN, DI_AIR_OK = 0, 1, 2, 3
DI_WAFER_PRESENT, DI_DOOR_CLOSED, DI_SPARE6, DI_SPARE7 = 4, 5, 6, 7
# AI port roles
AI_VACUUM = 0


@dataclass
class AxisConfig:
    index: int
    name: str
    unit: str = "mm"
    vmax: float = 500.0
    amax: float = 3000.0
    jmax: float = 60000.0
    sw_lim_neg: float = -170.0
    sw_lim_pos: float = 170.0
    hw_lim_neg: float = -175.0
    hw_lim_pos: float = 175.0
    jog_v: float = 20.0
    servo_kv: float = 30.0
    home_v: float = 40.0
    home_v2: float = 10.0
    home_v3: float = 2.0

    def validate(self) -> None:
        if not (self.hw_lim_neg < self.sw_lim_neg < self.sw_lim_pos < self.hw_lim_pos):
            raise ValueError(
                f"axis {self.name}: hw limits must strictly enclose sw limits")
        if not (self.vmax > 0 and self.amax > 0 and self.jmax > 0):
            raise ValueError(f"axis {self.name}: rates must be positive")


@dataclass
class PlantConfig:
    """Response constants of the simulated peripheral plant."""
    spindle_feedback_delay_s: float = 0.05
    coolant_flow_delay_s: float = 0.08
    air_ok_delay_s: float = 0.03
    vacuum_tau_s: float = 0.1
    vacuum_full_volts: float = 10.0
    di_channels: int = 32
    do_channels: int = 32
    ai_channels: int = 8
    ao_channels: int = 8


@dataclass
class CameraConfig:
    width: int = 256
    height: int = 256
    px_scale_mm: float = 0.1
    # World positions of the two downward cameras; fiducials sit under them
    # when the stage is at the inspection pose.
    cam_x_mm: tuple = (-100.0, 100.0)
    cam_y_mm: tuple = (0.0, 0.0)
    template_px: int = 48
    ncc_threshold: float = 0.6
    find_time_s: float = 0.008


@dataclass
class LayerConfig:
    bl_period_ticks: int = 1
    ll_period_ticks: int = 2
    dl_period_ticks: int = 10
    pl_period_ticks: int = 1
    # The signal-capture cycle may refresh the DAQ bank on a sub-multiple of
    # its own period; 1 means every cycle.
    daq_refresh_cycles: int = 1
    spindle_feedback_timeout_s: float = 0.2
    coolant_feedback_timeout_s: float = 0.2
    vacuum_min_kpa: float = -60.0
    vacuum_settle_s: float = 0.5

    def validate(self) -> None:
        for name in ("bl_period_ticks", "ll_period_ticks",
                     "dl_period_ticks", "pl_period_ticks", "daq_refresh_cycles"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


def default_axes() -> list:
    return [
        AxisConfig(0, "X"),
        AxisConfig(1, "Y"),
        AxisConfig(2, "Z", vmax=50.0, amax=1000.0, jmax=20000.0,
                   sw_lim_neg=-2.0, sw_lim_pos=15.0,
                   hw_lim_neg=-3.0, hw_lim_pos=16.0,
                   jog_v=5.0, home_v=10.0, home_v2=3.0, home_v3=1.0),
        AxisConfig(3, "THETA", unit="deg", vmax=45.0, amax=200.0, jmax=4000.0,
                   sw_lim_neg=-190.0, sw_lim_pos=190.0,
                   hw_lim_neg=-200.0, hw_lim_pos=200.0,
                   jog_v=5.0, home_v=20.0, home_v2=5.0, home_v3=1.0),
    ]


@dataclass
class MachineConfig:
    tick_duration_s: float = 0.001
    axes: list = field(default_factory=default_axes)
    plant: PlantConfig = field(default_factory=PlantConfig)
    camera: CameraConfig = field(default_factory=CameraConfig)
    layers: LayerConfig = field(default_factory=LayerConfig)
    monitored_di: list = field(default_factory=lambda: list(range(8)))
    monitored_ai: list = field(default_factory=lambda: [AI_VACUUM])
    driven_do: list = field(default_factory=lambda: list(range(5)))
    live_channels: list = field(default_factory=lambda: [0, 1])
    cim_period_s: float = 30.0
    product_id: str = "WFR-300"

    def validate(self) -> None:
        if len(self.axes) != 4:
            raise ValueError("the machine has exactly four axes (X, Y, Z, THETA)")
        for ax in self.axes:
            ax.validate()
        self.layers.validate()

    def to_dict(self) -> dict:
        d = asdict(self)
        d["camera"]["cam_x_mm"] = list(self.camera.cam_x_mm)
        d["camera"]["cam_y_mm"] = list(self.camera.cam_y_mm)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "MachineConfig":
        d = dict(d)
        d["axes"] = [AxisConfig(**a) for a in d.get("axes", [])] or default_axes()
        if "plant" in d:
            d["plant"] = PlantConfig(**d["plant"])
        if "camera" in d:
            cam = dict(d["camera"])
            cam["cam_x_mm"] = tuple(cam.get("cam_x_mm", (-100.0, 100.0)))
            cam["cam_y_mm"] = tuple(cam.get("cam_y_mm", (0.0, 0.0)))
            d["camera"] = CameraConfig(**cam)
        if "layers" in d:
            d["layers"] = LayerConfig(**d["layers"])
        cfg = cls(**d)
        cfg.validate()
        return cfg

    def to_json(self, path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True)
            f.write("\n")

    @classmethod
    def from_json(cls, path) -> "MachineConfig":
        with open(path, encoding="utf-8") as f:
            return cls.from_dict(json.load(f))

"""State of the wafer on the chuck.

The wafer sits on the rotary chuck with a hidden true misalignment
(translation plus rotation in chuck coordinates). Fiducial marks sit at the
camera stations' nominal positions, so a perfectly aligned wafer shows each
mark dead-centre in its camera. Completed cut strokes are recorded in order,
and their grooves render into subsequent camera views.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass
class Groove:
    """One recorded groove in wafer coordinates."""
    along: str          # "x" or "y": axis the groove runs along
    coord: float        # perpendicular coordinate of the line, mm
    span: tuple         # (min, max) extent along the groove, mm
    width: float        # kerf width, mm


@dataclass
class WaferSim:
    diameter_mm: float = 300.0
    dx_mm: float = 0.0
    dy_mm: float = 0.0
    dtheta_deg: float = 0.0
    fiducials: list = field(default_factory=lambda: [(-100.0, 0.0), (100.0, 0.0)])
    fiducials_visible: bool = True
    present: bool = True
    cut_record: list = field(default_factory=list)
    grooves: list = field(default_factory=list)

    def state_token(self) -> tuple:
        return (self.dx_mm, self.dy_mm, self.dtheta_deg,
                self.fiducials_visible, self.present, len(self.cut_record))

    def record_cut(self, stroke, groove: Groove) -> None:
        self.cut_record.append(stroke)
        self.grooves.append(groove)

    def chuck_to_wafer(self, cx: float, cy: float) -> tuple:
        """Map a chuck-frame point into wafer coordinates."""
        ux, uy = cx - self.dx_mm, cy - self.dy_mm
        th = -math.radians(self.dtheta_deg)
        c, s = math.cos(th), math.sin(th)
        return c * ux - s * uy, s * ux + c * uy

    def wafer_to_chuck(self, wx: float, wy: float) -> tuple:
        th = math.radians(self.dtheta_deg)
        c, s = math.cos(th), math.sin(th)
        return (c * wx - s * wy + self.dx_mm,
                s * wx + c * wy + self.dy_mm)

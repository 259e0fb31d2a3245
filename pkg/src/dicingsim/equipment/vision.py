"""Frame grabber simulation: synthetic wafer views and pattern search.

Two fixed downward cameras watch the chuck. A capture renders what the
camera sees for the current stage pose and wafer state; rendering is lazy,
so a capture whose pixels are never consumed costs only the access record.
Pattern search is exhaustive normalised cross-correlation over every valid
placement, refined to subpixel by a parabolic fit around the peak.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.signal import fftconvolve

BACKGROUND = 30.0
WAFER_SHADE = 110.0
MARK_SHADE = 250.0
GROOVE_SHADE = 25.0


class FrameBuffer:
    """One captured frame; pixel materialisation is deferred."""

    def __init__(self, width, height, channel, capture_tick, render_fn):
        self.width = width
        self.height = height
        self.channel = channel
        self.capture_tick = capture_tick
        self._render_fn = render_fn
        self._pixels = None

    @property
    def pixels(self) -> np.ndarray:
        if self._pixels is None:
            self._pixels = self._render_fn()
        return self._pixels


def _cross_coverage(u, w, half_len, half_w, edge):
    """Antialiased coverage of a centred cross; u/w in mm arrays."""
    def slab(d, half):
        return np.clip((half - np.abs(d)) / edge + 0.5, 0.0, 1.0)
    arm1 = slab(u, half_len) * slab(w, half_w)
    arm2 = slab(u, half_w) * slab(w, half_len)
    return np.maximum(arm1, arm2)


class FrameGrabberSim:
    def __init__(self, cam_cfg, clock, ledger, wafer, stage_pose_fn):
        self.cfg = cam_cfg
        self.clock = clock
        self.ledger = ledger
        self.wafer = wafer
        self.stage_pose = stage_pose_fn
        self.mark_half_len = 1.5
        self.mark_half_w = 0.3
        self._render_cache = {}

    # -- board entry points --------------------------------------------------

    def pe_fg_capture(self, channel: int) -> FrameBuffer:
        self.ledger.record("vision")
        if channel not in (0, 1):
            raise ValueError(f"channel {channel} out of range")
        x, y, theta = self.stage_pose()
        key = (channel, x, y, theta, self.wafer.state_token())
        return FrameBuffer(self.cfg.width, self.cfg.height, channel,
                           self.clock.tick, lambda k=key: self._render(k))

    def pe_fg_find_pattern(self, frame: FrameBuffer, template: np.ndarray):
        """Exhaustive NCC argmax. Returns (dx_px, dy_px, score).

        Offsets locate the template centre relative to the frame centre,
        +x right and +y up. A zero-variance frame region scores 0.
        """
        self.ledger.record("vision")
        img = frame.pixels.astype(np.float64)
        tpl = template.astype(np.float64)
        th, tw = tpl.shape
        if th > img.shape[0] or tw > img.shape[1]:
            raise ValueError("template larger than frame")
        t0 = tpl - tpl.mean()
        t_energy = float(np.sum(t0 * t0))
        if t_energy <= 0.0:
            return 0.0, 0.0, 0.0
        corr = fftconvolve(img, t0[::-1, ::-1], mode="valid")
        ones = np.ones_like(tpl)
        s1 = fftconvolve(img, ones, mode="valid")
        s2 = fftconvolve(img * img, ones, mode="valid")
        var = s2 - s1 * s1 / (th * tw)
        np.clip(var, 0.0, None, out=var)
        denom = np.sqrt(var * t_energy)
        ncc = np.where(denom > 1e-9, corr / np.maximum(denom, 1e-30), 0.0)
        r, c = np.unravel_index(int(np.argmax(ncc)), ncc.shape)
        score = float(min(max(ncc[r, c], 0.0), 1.0))
        rr = r + _parabolic_shift(ncc[:, c], r)
        cc = c + _parabolic_shift(ncc[r, :], c)
        center_r = rr + (th - 1) / 2.0
        center_c = cc + (tw - 1) / 2.0
        dx = center_c - (frame.width - 1) / 2.0
        dy = (frame.height - 1) / 2.0 - center_r
        return float(dx), float(dy), score

    def pe_fg_find_edge(self, frame: FrameBuffer, orientation: str = "h"):
        """Locate a dark groove crossing the frame centre.

        ``orientation`` is the direction the groove runs ("h" or "v").
        Returns (offset_px, strength); offset is +up for horizontal grooves
        and +right for vertical ones. strength 0 means no groove found.
        """
        self.ledger.record("vision")
        img = frame.pixels.astype(np.float64)
        h, w = img.shape
        if orientation == "h":
            band = img[:, w // 4: 3 * w // 4]
            profile = band.mean(axis=1)
        elif orientation == "v":
            band = img[h // 4: 3 * h // 4, :]
            profile = band.mean(axis=0)
        else:
            raise ValueError(f"unknown orientation {orientation!r}")
        baseline = float(np.median(profile))
        idx = int(np.argmin(profile))
        depth = baseline - float(profile[idx])
        strength = max(depth, 0.0) / 255.0
        if strength < 0.1:
            return 0.0, strength
        pos = idx + _parabolic_shift(-profile, idx)
        if orientation == "h":
            offset = (h - 1) / 2.0 - pos
        else:
            offset = pos - (w - 1) / 2.0
        return float(offset), strength

    # -- rendering -----------------------------------------------------------

    def render_template(self) -> np.ndarray:
        n = self.cfg.template_px
        s = self.cfg.px_scale_mm
        c = (n - 1) / 2.0
        cols, rows = np.meshgrid(np.arange(n), np.arange(n))
        u = (cols - c) * s
        w = (c - rows) * s
        cov = _cross_coverage(u, w, self.mark_half_len, self.mark_half_w, s)
        img = WAFER_SHADE + (MARK_SHADE - WAFER_SHADE) * cov
        return np.clip(np.rint(img), 0, 255).astype(np.uint8)

    def _render(self, key) -> np.ndarray:
        cached = self._render_cache.get(key)
        if cached is not None:
            return cached
        channel, sx, sy, theta, _token = key
        img = self._render_scene(channel, sx, sy, theta)
        if len(self._render_cache) > 128:
            self._render_cache.clear()
        self._render_cache[key] = img
        return img

    def _render_scene(self, channel, sx, sy, theta_deg) -> np.ndarray:
        cfg = self.cfg
        s = cfg.px_scale_mm
        cam_x, cam_y = cfg.cam_x_mm[channel], cfg.cam_y_mm[channel]
        cols = np.arange(cfg.width)
        rows = np.arange(cfg.height)
        wx = cam_x + (cols - (cfg.width - 1) / 2.0) * s
        wy = cam_y + ((cfg.height - 1) / 2.0 - rows) * s
        gx, gy = np.meshgrid(wx, wy)
        # world -> chuck -> wafer coordinates
        th = -math.radians(theta_deg)
        cth, sth = math.cos(th), math.sin(th)
        ex, ey = gx - sx, gy - sy
        chx = cth * ex - sth * ey
        chy = sth * ex + cth * ey
        wfr = self.wafer
        dth = -math.radians(wfr.dtheta_deg)
        c2, s2 = math.cos(dth), math.sin(dth)
        ux, uy = chx - wfr.dx_mm, chy - wfr.dy_mm
        px = c2 * ux - s2 * uy
        py = s2 * ux + c2 * uy

        img = np.full(px.shape, BACKGROUND)
        if wfr.present:
            radius = wfr.diameter_mm / 2.0
            on_wafer = px * px + py * py <= radius * radius
            img[on_wafer] = WAFER_SHADE
            if wfr.fiducials_visible:
                for fx, fy in wfr.fiducials:
                    cov = _cross_coverage(px - fx, py - fy,
                                          self.mark_half_len, self.mark_half_w, s)
                    img += (MARK_SHADE - img) * cov * on_wafer
            if wfr.grooves:
                bounds = {"x": (py.min(), py.max(), px.min(), px.max()),
                          "y": (px.min(), px.max(), py.min(), py.max())}
                for groove in wfr.grooves:
                    perp_lo, perp_hi, para_lo, para_hi = bounds[groove.along]
                    half_w = groove.width / 2.0 + s
                    if (groove.coord + half_w < perp_lo
                            or groove.coord - half_w > perp_hi
                            or groove.span[1] < para_lo
                            or groove.span[0] > para_hi):
                        continue
                    if groove.along == "x":
                        perp, para = py, px
                    else:
                        perp, para = px, py
                    gcov = np.clip(
                        (groove.width / 2.0 - np.abs(perp - groove.coord)) / s + 0.5,
                        0.0, 1.0)
                    gcov = gcov * ((para >= groove.span[0]) & (para <= groove.span[1])) * on_wafer
                    img += (GROOVE_SHADE - img) * gcov
        return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def _parabolic_shift(profile: np.ndarray, i: int) -> float:
    """Subpixel peak refinement on a 1D profile around index ``i``."""
    if i <= 0 or i >= len(profile) - 1:
        return 0.0
    a, b, c = float(profile[i - 1]), float(profile[i]), float(profile[i + 1])
    denom = a - 2.0 * b + c
    if denom >= 0.0:
        return 0.0
    shift = 0.5 * (a - c) / denom
    return float(max(-0.5, min(0.5, shift)))

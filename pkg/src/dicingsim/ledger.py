"""Per-device-class access counting.

Every command or status call on a simulated equipment board records exactly
one access in the active ledger, binned over simulation time. Reads of
mirrored adapter state record nothing; that asymmetry is the whole point of
the measurement.
"""
from __future__ import annotations

from contextlib import contextmanager

DEVICE_CLASSES = ("motion", "vision", "daq", "net")


class AccessViolation(RuntimeError):
    """Raised when equipment is accessed from a context where access is banned."""


class AccessLedger:
    """Counts equipment accesses per device class, with a binned time series.

    Totals always equal the sum of the per-bin series. Bins are indexed by
    ``tick // bin_ticks``; missing bins are zero.
    """

    def __init__(self, clock, bin_ticks: int = 1000, mode: str = "", seed: int = 0):
        if bin_ticks < 1:
            raise ValueError("bin_ticks must be >= 1")
        self.clock = clock
        self.bin_ticks = bin_ticks
        self.mode = mode
        self.seed = seed
        self.totals = {cls: 0 for cls in DEVICE_CLASSES}
        self.series = {cls: [] for cls in DEVICE_CLASSES}
        self._forbidden = None

    def record(self, device_class: str) -> None:
        if self._forbidden is not None:
            raise AccessViolation(
                f"equipment access ({device_class}) from banned context: {self._forbidden}"
            )
        bins = self.series[device_class]
        idx = self.clock.tick // self.bin_ticks
        short = idx + 1 - len(bins)
        if short > 0:
            bins.extend([0] * short)
        bins[idx] += 1
        self.totals[device_class] += 1

    @contextmanager
    def forbid(self, who: str):
        """Ban equipment access for the duration of the context.

        Used to enforce that snapshot readers (display windows, the gateway)
        can never reach a physical board, even by accident.
        """
        prev = self._forbidden
        self._forbidden = who
        try:
            yield
        finally:
            self._forbidden = prev

    def grand_total(self) -> int:
        return sum(self.totals.values())

    def snapshot_totals(self) -> dict:
        return dict(self.totals)

    def padded_series(self, n_bins: int | None = None) -> dict:
        """Series per class, right-padded with zeros to a common length."""
        if n_bins is None:
            n_bins = max((len(s) for s in self.series.values()), default=0)
        return {
            cls: list(s) + [0] * (n_bins - len(s))
            for cls, s in self.series.items()
        }

    def n_bins_for(self, ticks: int) -> int:
        if ticks <= 0:
            return 0
        return (ticks + self.bin_ticks - 1) // self.bin_ticks

"""Per-element on-off switch schedules realizing a phase profile.

A controller running the baseband at f0 divides each period into ticks;
channel p rises at the tick nearest its profile phase and falls half a
period later (50% duty).  Logic high maps to the pulse reflection state
(pair.gamma_off); swapping that mapping only flips the sign of the state
difference, a global phase with no effect on pattern magnitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import ReflectionPair
from .steering import PhaseProfile  # noqa: F401  (typical input type)

DEFAULT_TICKS_PER_PERIOD = 360
DEFAULT_AMPLITUDE_V = 3.3


class ScheduleStructureError(ValueError):
    """Malformed channel edge list."""


@dataclass(frozen=True)
class SwitchSchedule:
    """Edge ticks per channel: (rise_tick, fall_tick), 50% duty."""

    f0: float
    ticks_per_period: int
    channels: tuple
    amplitude_v: float = DEFAULT_AMPLITUDE_V

    def __post_init__(self):
        if not self.f0 > 0.0:
            raise ValueError(f"f0 must be positive, got {self.f0}")
        if self.ticks_per_period < 2 or self.ticks_per_period % 2 != 0:
            raise ValueError(
                f"ticks_per_period must be even and >= 2, got {self.ticks_per_period}"
            )
        object.__setattr__(
            self, "channels", tuple((int(r), int(f)) for r, f in self.channels)
        )

    @property
    def period(self) -> float:
        return 1.0 / self.f0

    @property
    def tick_duration(self) -> float:
        return self.period / self.ticks_per_period


def build_switch_schedule(
    profile,
    f0: float,
    ticks_per_period: int = DEFAULT_TICKS_PER_PERIOD,
    amplitude_v: float = DEFAULT_AMPLITUDE_V,
) -> SwitchSchedule:
    """Map profile phases to rise/fall ticks (rise = round-half-up of psi)."""
    if ticks_per_period % 2 != 0:
        raise ValueError(f"ticks_per_period must be even, got {ticks_per_period}")
    phases = getattr(profile, "phases_deg", profile)
    half = ticks_per_period // 2
    channels = []
    for psi in phases:
        rise = math.floor((float(psi) % 360.0) * ticks_per_period / 360.0 + 0.5)
        rise %= ticks_per_period
        channels.append((rise, (rise + half) % ticks_per_period))
    return SwitchSchedule(
        f0=f0,
        ticks_per_period=ticks_per_period,
        channels=tuple(channels),
        amplitude_v=amplitude_v,
    )


def schedule_roundtrip_phases(s: SwitchSchedule) -> list[float]:
    """Recover per-channel phases; error bounded by half a tick in degrees."""
    half = s.ticks_per_period // 2
    phases = []
    for ch in s.channels:
        if len(ch) != 2:
            raise ScheduleStructureError(f"channel {ch!r} must have exactly two edges")
        rise, fall = ch
        if not (0 <= rise < s.ticks_per_period and 0 <= fall < s.ticks_per_period):
            raise ScheduleStructureError(f"edge ticks {ch!r} out of range")
        if (rise + half) % s.ticks_per_period != fall:
            raise ScheduleStructureError(
                f"channel {ch!r} is not a 50% duty rise/fall pair"
            )
        phases.append(rise * 360.0 / s.ticks_per_period)
    return phases


def sample_levels(s: SwitchSchedule, t):
    """Logic level (0/1) of every channel at time(s) t."""
    pos = (np.asarray(t, dtype=float) % s.period) * s.f0 * s.ticks_per_period
    half = s.ticks_per_period / 2.0
    out = []
    for rise, _fall in s.channels:
        rel = (pos - rise) % s.ticks_per_period
        level = (rel < half).astype(int)
        out.append(int(level) if np.ndim(t) == 0 else level)
    return out


def sample_gamma(s: SwitchSchedule, t, pair: ReflectionPair, channel: int = 0):
    """Reflection state driven by one channel: high -> pulse state (gamma_off)."""
    level = sample_levels(s, t)[channel]
    return np.where(np.asarray(level, dtype=bool), pair.gamma_off, pair.gamma_on)


def tick_table(s: SwitchSchedule) -> np.ndarray:
    """0/1 level table of shape (ticks_per_period, channels)."""
    ticks = np.arange(s.ticks_per_period)
    half = s.ticks_per_period // 2
    cols = [((ticks - rise) % s.ticks_per_period < half).astype(int) for rise, _ in s.channels]
    return np.stack(cols, axis=1)


def tick_table_text(s: SwitchSchedule) -> str:
    """Flat firmware-ingestion format: one row per tick, one 0/1 per channel."""
    table = tick_table(s)
    return "\n".join(" ".join(str(v) for v in row) for row in table) + "\n"


def schedule_doc(s: SwitchSchedule) -> dict:
    """Structured-document export of the schedule."""
    return {
        "f0_hz": s.f0,
        "ticks_per_period": s.ticks_per_period,
        "amplitude_v": s.amplitude_v,
        "channels": [{"rise_tick": r, "fall_tick": f} for r, f in s.channels],
    }

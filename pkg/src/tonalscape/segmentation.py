"""Equal-duration segmentation of the tick timeline and per-segment
duration-weighted pitch-class vectors.

Weights are accumulated in integer ticks (exact conservation) and returned as
float64; normalization downstream removes the scale anyway.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ZeroLengthSegment
from .midi import NoteEvent, TempoMap, seconds_to_tick, tick_to_seconds

WEIGHTINGS = ("duration", "onset", "velocity")

_RESOLUTION_RE = re.compile(r"^\s*(?:(\d+)\s*/\s*(\d+)|(\d+(?:\.\d+)?)\s*(s)?)\s*$")


@dataclass(frozen=True)
class Resolution:
    """Segment duration: a whole-note fraction ("note_value") or "seconds"."""

    unit: str
    value: Fraction | float

    def __post_init__(self):
        if self.unit not in ("note_value", "seconds"):
            raise ValueError(f"unknown resolution unit {self.unit!r}")
        if self.value <= 0:
            raise ValueError("resolution must be strictly positive")

    @classmethod
    def note_value(cls, value) -> "Resolution":
        return cls("note_value", Fraction(value))

    @classmethod
    def seconds(cls, value: float) -> "Resolution":
        return cls("seconds", float(value))

    @classmethod
    def parse(cls, text: str) -> "Resolution":
        """CLI grammar: ``1/8`` (note value) or ``0.5s`` (seconds)."""
        m = _RESOLUTION_RE.match(text)
        if not m:
            raise ValueError(f"cannot parse resolution {text!r} (use e.g. 1/8 or 0.5s)")
        if m.group(1):
            return cls.note_value(Fraction(int(m.group(1)), int(m.group(2))))
        if m.group(4):
            return cls.seconds(float(m.group(3)))
        return cls.note_value(Fraction(m.group(3)))

    def __str__(self) -> str:
        if self.unit == "note_value":
            return str(self.value)
        return f"{self.value}s"


@dataclass(frozen=True)
class SegmentGrid:
    """Tick boundaries of the equal-duration segments, length n_segments + 1."""

    boundaries_ticks: tuple[int, ...]
    resolution: Resolution

    def __post_init__(self):
        b = self.boundaries_ticks
        if len(b) < 2 or b[0] != 0:
            raise ValueError("grid needs boundaries starting at tick 0")
        if any(t1 <= t0 for t0, t1 in zip(b, b[1:])):
            raise ValueError("grid boundaries must be strictly increasing")

    @property
    def n_segments(self) -> int:
        return len(self.boundaries_ticks) - 1

    @property
    def span_end_tick(self) -> int:
        return self.boundaries_ticks[-1]


def _round_half_up(x: Fraction) -> int:
    return int(x + Fraction(1, 2)) if x >= 0 else -int(-x + Fraction(1, 2))


def make_grid(span_end_tick: int, spec: Resolution, tempo_map: TempoMap,
              ppq: int) -> SegmentGrid:
    """Divide [0, span_end_tick] into segments of the given duration.

    The final segment is partial when the span does not divide evenly;
    dropping it would silently truncate codas.
    """
    if span_end_tick <= 0:
        raise ValueError("span_end_tick must be positive")
    if spec.unit == "note_value":
        length = _round_half_up(Fraction(spec.value) * 4 * ppq)
        if length < 1:
            raise ZeroLengthSegment(
                f"resolution {spec} rounds to zero ticks at ppq {ppq}")
        boundaries = list(range(0, span_end_tick, length))
        boundaries.append(span_end_tick)
    else:
        total_seconds = tick_to_seconds(tempo_map, ppq, span_end_tick)
        boundaries = [0]
        m = 1
        while m * spec.value < total_seconds:
            tick = round(seconds_to_tick(tempo_map, ppq, m * spec.value))
            if tick >= span_end_tick:
                break
            if tick <= boundaries[-1]:
                raise ZeroLengthSegment(
                    f"resolution {spec} rounds to zero ticks near tick {tick}")
            boundaries.append(tick)
            m += 1
        boundaries.append(span_end_tick)
    return SegmentGrid(boundaries_ticks=tuple(boundaries), resolution=spec)


def segment_weights(notes: list[NoteEvent], grid: SegmentGrid,
                    weighting: str = "duration") -> np.ndarray:
    """One 12-dimensional pitch-class weight vector per segment, shape (N, 12).

    duration: each note adds its tick overlap with every segment it crosses.
    onset:    each note adds 1 to the segment containing its onset.
    velocity: like duration, scaled by the note's velocity.
    """
    if weighting not in WEIGHTINGS:
        raise ValueError(f"weighting must be one of {WEIGHTINGS}, got {weighting!r}")
    boundaries = np.asarray(grid.boundaries_ticks, dtype=np.int64)
    span = int(boundaries[-1])
    acc = np.zeros((grid.n_segments, 12), dtype=np.int64)
    for note in notes:
        pc = note.pitch % 12
        onset = note.onset_tick
        if weighting == "onset":
            if 0 <= onset < span:
                seg = int(np.searchsorted(boundaries, onset, side="right")) - 1
                acc[seg, pc] += 1
            continue
        start = max(onset, 0)
        end = min(onset + note.duration_ticks, span)
        if end <= start:
            continue
        first = int(np.searchsorted(boundaries, start, side="right")) - 1
        last = int(np.searchsorted(boundaries, end, side="left")) - 1
        lows = np.maximum(boundaries[first:last + 1], start)
        highs = np.minimum(boundaries[first + 1:last + 2], end)
        overlap = highs - lows
        if weighting == "velocity":
            overlap = overlap * note.velocity
        acc[first:last + 1, pc] += overlap
    return acc.astype(np.float64)


def coarsen(vectors: np.ndarray, max_columns: int) -> np.ndarray:
    """Merge adjacent vectors into at most max_columns near-equal groups,
    conserving total weight exactly. Identity when already small enough."""
    if max_columns < 1:
        raise ValueError("max_columns must be >= 1")
    arr = np.asarray(vectors, dtype=np.float64)
    n = arr.shape[0]
    if n <= max_columns:
        return arr
    group = math.ceil(n / max_columns)
    n_groups = math.ceil(n / group)
    base, rem = divmod(n, n_groups)
    sizes = [base + 1] * rem + [base] * (n_groups - rem)
    offsets = np.cumsum([0] + sizes[:-1])
    return np.add.reduceat(arr, offsets, axis=0)

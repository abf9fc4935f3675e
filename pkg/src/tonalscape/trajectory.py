"""Sliding-window coefficient trajectories: the data behind the six animated
disks and their playback synchronization."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .errors import EmptyTrajectory, WindowTooLong
from .midi import TempoMap, tick_to_seconds
from .segmentation import SegmentGrid
from .wavescape import coefficient_prefix


@dataclass(frozen=True, eq=False)
class TrajectoryPoint:
    window_start: int
    time_center_seconds: float
    coeffs: np.ndarray     # shape (6,), complex128, indices k-1 for k = 1..6
    zero_weight: bool


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Hop-1 sliding-window points; N - window_len + 1 of them."""

    window_len: int
    points: tuple[TrajectoryPoint, ...]
    segment_seconds: tuple[float, ...]  # duration of each base segment


def sliding_trajectory(vectors: np.ndarray, grid: SegmentGrid,
                       tempo_map: TempoMap, ppq: int,
                       window_len: int) -> Trajectory:
    """Normalized coefficients 1..6 for every length-window_len run of
    segments, hop 1; window_len = N degenerates to the single whole-piece
    point (the wavescape tip)."""
    if window_len < 1:
        raise ValueError("window_len must be >= 1")
    arr = np.asarray(vectors, dtype=np.float64)
    n = arr.shape[0]
    if window_len > n:
        raise WindowTooLong(f"window of {window_len} segments exceeds the {n} available")
    table = coefficient_prefix(arr)
    prefix = table.raw
    boundaries = grid.boundaries_ticks
    seconds_at = [tick_to_seconds(tempo_map, ppq, t) for t in boundaries]

    raw = prefix[window_len:n + 1] - prefix[0:n - window_len + 1]
    weights = raw[:, 0].real
    silent = weights <= 0
    safe = np.where(silent, 1.0, weights)
    coeffs = np.where(silent[:, None], 0.0, raw[:, 1:7] / safe[:, None])

    points = []
    for start in range(n - window_len + 1):
        mid_tick = (boundaries[start] + boundaries[start + window_len]) / 2
        row = coeffs[start].copy()
        row.flags.writeable = False
        points.append(TrajectoryPoint(
            window_start=start,
            time_center_seconds=tick_to_seconds(tempo_map, ppq, mid_tick),
            coeffs=row,
            zero_weight=bool(silent[start]),
        ))
    segment_seconds = tuple(b - a for a, b in zip(seconds_at, seconds_at[1:]))
    return Trajectory(window_len=window_len, points=tuple(points),
                      segment_seconds=segment_seconds)


def window_at_time(traj: Trajectory, t_seconds: float) -> int:
    """Index of the point whose time center is nearest to t; ties break to
    the earlier index, out-of-range times clamp to the ends."""
    if not traj.points:
        raise EmptyTrajectory("trajectory has no points")
    centers = [p.time_center_seconds for p in traj.points]
    pos = bisect_left(centers, t_seconds)
    if pos == 0:
        return 0
    if pos == len(centers):
        return len(centers) - 1
    before, after = centers[pos - 1], centers[pos]
    return pos - 1 if t_seconds - before <= after - t_seconds else pos

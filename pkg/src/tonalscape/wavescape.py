"""Hierarchical window coefficients (the triangular wavescape) and the
phase/magnitude color mapping.

DFT linearity lets a prefix table of raw coefficient sums answer any window
in O(1): one subtraction and one division per cell. The 12-vector route
exists only in the test oracle.
"""

from __future__ import annotations

import colorsys
import math
from dataclasses import dataclass

import numpy as np

from .dft import dft12_rows
from .errors import EmptyInput, OutOfRange, ZeroWeightWindow

RGBA = tuple[int, int, int, int]


@dataclass(frozen=True, eq=False)
class PrefixTable:
    """Cumulative raw coefficient sums: raw[i] = sum of dft12 over segments < i."""

    raw: np.ndarray  # shape (N+1, 7), complex128

    @property
    def n_segments(self) -> int:
        return self.raw.shape[0] - 1


@dataclass(frozen=True, eq=False)
class WavescapeMatrix:
    """Normalized k-th coefficients of every contiguous window of n segments.

    Row h holds the n-h windows of length h+1; cell (h, i) covers segments
    i..i+h. Zero-weight (silent) windows carry value 0 and a flag instead of
    poisoning the plot.
    """

    k: int
    n: int
    values: np.ndarray       # (n, n) complex128; row h uses columns 0..n-1-h
    zero_weight: np.ndarray  # (n, n) bool, same layout

    def cell(self, h: int, i: int) -> complex:
        if not (0 <= h < self.n and 0 <= i < self.n - h):
            raise OutOfRange(f"no cell at row {h}, column {i} for n={self.n}")
        return complex(self.values[h, i])

    def is_zero_weight(self, h: int, i: int) -> bool:
        if not (0 <= h < self.n and 0 <= i < self.n - h):
            raise OutOfRange(f"no cell at row {h}, column {i} for n={self.n}")
        return bool(self.zero_weight[h, i])

    @property
    def n_cells(self) -> int:
        return self.n * (self.n + 1) // 2


def coefficient_prefix(vectors: np.ndarray) -> PrefixTable:
    """Prefix sums of the raw per-segment coefficient rows; O(N) transforms."""
    arr = np.asarray(vectors, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] != 12:
        raise EmptyInput("need a nonempty (N, 12) array of segment vectors")
    raw = np.zeros((arr.shape[0] + 1, 7), dtype=np.complex128)
    np.cumsum(dft12_rows(arr), axis=0, out=raw[1:])
    raw.flags.writeable = False
    return PrefixTable(raw=raw)


def window_coefficient(table: PrefixTable, start: int, length: int, k: int) -> complex:
    """Normalized k-th coefficient of the window covering segments
    start..start+length-1."""
    n = table.n_segments
    if not 1 <= k <= 6:
        raise OutOfRange(f"coefficient index must be in 1..6, got {k}")
    if start < 0 or length < 1 or start + length > n:
        raise OutOfRange(f"window [{start}, {start + length}) outside 0..{n}")
    raw = table.raw[start + length] - table.raw[start]
    weight = raw[0].real
    if weight <= 0:
        raise ZeroWeightWindow(f"window [{start}, {start + length}) has zero weight")
    return complex(raw[k] / weight)


def build_wavescape(vectors: np.ndarray, k: int) -> WavescapeMatrix:
    """All n(n+1)/2 window coefficients for one k, via the prefix table."""
    if not 1 <= k <= 6:
        raise OutOfRange(f"coefficient index must be in 1..6, got {k}")
    table = coefficient_prefix(vectors)
    n = table.n_segments
    values = np.zeros((n, n), dtype=np.complex128)
    zero = np.zeros((n, n), dtype=bool)
    prefix = table.raw
    for h in range(n):
        raw = prefix[h + 1:n + 1] - prefix[0:n - h]
        weights = raw[:, 0].real
        silent = weights <= 0
        safe = np.where(silent, 1.0, weights)
        values[h, :n - h] = np.where(silent, 0.0, raw[:, k] / safe)
        zero[h, :n - h] = silent
    values.flags.writeable = False
    zero.flags.writeable = False
    return WavescapeMatrix(k=k, n=n, values=values, zero_weight=zero)


def phase_color(z: complex, hue_anchor_deg: float = 0.0,
                clockwise: bool = False) -> RGBA:
    """Map a unit-disk value to RGBA: phase drives the hue wheel (0 = red,
    counterclockwise by default), magnitude drives opacity linearly.

    The anchor/direction arguments are the hook for alternative wheels; the
    defaults are the package convention.
    """
    phase = math.atan2(z.imag, z.real) if z != 0 else 0.0
    turns = (phase / (2 * math.pi)) % 1.0
    if clockwise:
        turns = (1.0 - turns) % 1.0
    hue = (turns + hue_anchor_deg / 360.0) % 1.0
    r, g, b = colorsys.hsv_to_rgb(hue, 1.0, 1.0)
    alpha = min(max(abs(z), 0.0), 1.0)
    half_up = lambda x: int(math.floor(x + 0.5))
    return (half_up(r * 255), half_up(g * 255), half_up(b * 255), half_up(alpha * 255))

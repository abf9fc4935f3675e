"""Deterministic SVG output for wavescapes and coefficient disks.

All coordinates are printed with fixed 4-decimal precision so identical
inputs produce byte-identical documents, which is what the golden-file tests
pin down. Complex-plane orientation: +real right, +imaginary up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .dft import PrototypePoint
from .errors import MismatchedCoefficient
from .trajectory import Trajectory
from .wavescape import RGBA, WavescapeMatrix, phase_color

SQRT3 = math.sqrt(3.0)
_RIM_SEGMENTS = 120  # hue wheel drawn as short chords, 3 degrees each


@dataclass(frozen=True)
class RenderOptions:
    width_px: int = 600
    background: RGBA = (255, 255, 255, 255)
    show_prototypes: bool = True
    marker_index: int | None = None
    label_font_size: float = 11.0

    def __post_init__(self):
        if self.width_px < 64:
            raise ValueError("width_px must be at least 64")
        if self.label_font_size <= 0:
            raise ValueError("label_font_size must be positive")


def _fmt(x: float) -> str:
    # normalize -0.0000 so formatting stays platform-stable
    s = f"{x:.4f}"
    return "0.0000" if s == "-0.0000" else s


def _hex_color(rgba: RGBA) -> str:
    return f"#{rgba[0]:02x}{rgba[1]:02x}{rgba[2]:02x}"


def _svg_open(width: float, height: float, background: RGBA) -> list[str]:
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
    ]
    parts.append(
        f'<rect class="background" x="0" y="0" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" fill="{_hex_color(background)}" '
        f'fill-opacity="{_fmt(background[3] / 255)}"/>'
    )
    return parts


def render_wavescape_svg(m: WavescapeMatrix, opts: RenderOptions) -> str:
    """Triangular plot: cell (h, i) is a diamond centered over the midpoint of
    its window, row height 1/n of the triangle, apex cell topmost."""
    width = float(opts.width_px)
    height = width * SQRT3 / 2
    n = m.n
    cell_w = width / n
    cell_h = height / n
    parts = _svg_open(width, height, opts.background)
    parts.append('<g class="cells">')
    for h in range(n):
        for i in range(n - h):
            cx = (i + (h + 1) / 2) / n * width
            y_bottom = height - h * cell_h
            y_mid = height - (h + 0.5) * cell_h
            y_top = height - (h + 1) * cell_h
            points = (
                f"{_fmt(cx)},{_fmt(y_bottom)} "
                f"{_fmt(cx - cell_w / 2)},{_fmt(y_mid)} "
                f"{_fmt(cx)},{_fmt(y_top)} "
                f"{_fmt(cx + cell_w / 2)},{_fmt(y_mid)}"
            )
            if m.zero_weight[h, i]:
                fill, alpha = "#000000", 0
            else:
                r, g, b, alpha = phase_color(complex(m.values[h, i]))
                fill = _hex_color((r, g, b, alpha))
            parts.append(
                f'<polygon class="cell" data-row="{h}" data-col="{i}" '
                f'points="{points}" fill="{fill}" fill-opacity="{_fmt(alpha / 255)}"/>'
            )
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _disk_geometry(width: float) -> tuple[float, float, float]:
    cx = cy = width / 2
    radius = width / 2 - max(18.0, width * 0.08)
    return cx, cy, radius


def _to_device(z: complex, cx: float, cy: float, radius: float) -> tuple[float, float]:
    # clamp to the rim; +imag is up, so the device y axis flips
    mag = abs(z)
    if mag > 1.0:
        z = z / mag
    return cx + z.real * radius, cy - z.imag * radius


def render_disk_svg(k: int, traj: Trajectory | None,
                    prototypes: list[PrototypePoint],
                    opts: RenderOptions) -> str:
    """One Fourier coefficient space: hue-wheel rim, prototype labels,
    trajectory path, optional white playback dot."""
    for proto in prototypes:
        if proto.k != k:
            raise MismatchedCoefficient(
                f"prototype {proto.label!r} is for coefficient {proto.k}, disk is {k}")
    width = float(opts.width_px)
    cx, cy, radius = _disk_geometry(width)
    parts = _svg_open(width, width, opts.background)

    parts.append('<g class="rim">')
    rim_width = max(2.0, width * 0.012)
    for s in range(_RIM_SEGMENTS):
        a0 = 2 * math.pi * s / _RIM_SEGMENTS
        a1 = 2 * math.pi * (s + 1) / _RIM_SEGMENTS
        mid = (a0 + a1) / 2
        color = phase_color(complex(math.cos(mid), math.sin(mid)))
        x0, y0 = cx + radius * math.cos(a0), cy - radius * math.sin(a0)
        x1, y1 = cx + radius * math.cos(a1), cy - radius * math.sin(a1)
        parts.append(
            f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}" '
            f'stroke="{_hex_color(color)}" stroke-width="{_fmt(rim_width)}" '
            f'stroke-linecap="round"/>'
        )
    parts.append("</g>")
    parts.append(
        f'<circle class="outline" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(radius)}" '
        f'fill="none" stroke="#888888" stroke-width="0.5000"/>'
    )
    parts.append(f'<text class="disk-label" x="{_fmt(8.0)}" y="{_fmt(8.0 + opts.label_font_size)}" '
                 f'font-size="{_fmt(opts.label_font_size)}" fill="#444444">k={k}</text>')

    if opts.show_prototypes:
        parts.append('<g class="prototypes">')
        for proto in prototypes:
            x, y = _to_device(proto.position, cx, cy, radius)
            parts.append(
                f'<text class="prototype" x="{_fmt(x)}" y="{_fmt(y)}" '
                f'text-anchor="middle" dominant-baseline="middle" '
                f'font-size="{_fmt(opts.label_font_size)}" '
                f'fill="#222222">{escape(proto.label)}</text>'
            )
        parts.append("</g>")

    if traj is not None:
        visible = [p for p in traj.points if not p.zero_weight]
        if visible:
            coords = " ".join(
                "{},{}".format(*map(_fmt, _to_device(complex(p.coeffs[k - 1]), cx, cy, radius)))
                for p in visible
            )
            parts.append(
                f'<polyline class="trajectory" points="{coords}" fill="none" '
                f'stroke="#555555" stroke-width="1.0000" stroke-opacity="0.7000"/>'
            )
        if opts.marker_index is not None and traj.points:
            idx = min(max(opts.marker_index, 0), len(traj.points) - 1)
            point = traj.points[idx]
            x, y = _to_device(complex(point.coeffs[k - 1]), cx, cy, radius)
            parts.append(
                f'<circle class="marker" cx="{_fmt(x)}" cy="{_fmt(y)}" '
                f'r="{_fmt(max(3.0, width * 0.01))}" fill="#ffffff" '
                f'stroke="#000000" stroke-width="1.0000"/>'
            )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def wavescape_filename(stem: str, k: int) -> str:
    return f"{stem}.wavescape.k{k}.svg"


def disk_filename(stem: str, k: int) -> str:
    return f"{stem}.disk.k{k}.svg"

"""Full-pipeline orchestration and the serialized bundle contract shared by
the CLI and the browser UI.

One bundle carries both visualizations' data (wavescapes on a capped fixed
segmentation, the trajectory on the user segmentation) so a client never has
to re-parse MIDI for parameter changes that only affect rendering.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import dft
from .errors import NoNotes
from .midi import build_tempo_map, extract_notes, parse_smf, tick_to_seconds
from .segmentation import WEIGHTINGS, Resolution, coarsen, make_grid, segment_weights
from .trajectory import Trajectory, TrajectoryPoint, sliding_trajectory
from .wavescape import WavescapeMatrix, build_wavescape, coefficient_prefix

SCHEMA_VERSION = "1"
DEFAULT_MAX_COLUMNS = 250


@dataclass(frozen=True)
class AnalysisConfig:
    resolution: Resolution = Resolution.note_value(Fraction(1, 8))
    window_len: int = 1
    wavescape_max_columns: int = DEFAULT_MAX_COLUMNS
    include_percussion: bool = True
    weighting: str = "duration"

    def __post_init__(self):
        if self.window_len < 1:
            raise ValueError("window_len must be >= 1")
        if self.wavescape_max_columns < 1:
            raise ValueError("wavescape_max_columns must be >= 1")
        if self.weighting not in WEIGHTINGS:
            raise ValueError(f"weighting must be one of {WEIGHTINGS}")


@dataclass(frozen=True, eq=False)
class AnalysisBundle:
    metadata: dict
    segment_coeffs: np.ndarray       # (N, 6) complex, normalized per segment
    segment_zero_weight: np.ndarray  # (N,) bool
    wavescapes: tuple[WavescapeMatrix, ...]
    trajectory: Trajectory
    config: AnalysisConfig


def window_span(resolution: Resolution, window_len: int) -> dict:
    """Length of the sliding window in the resolution's own unit, e.g.
    resolution 1/8 with window 300 spans 37.5 whole notes."""
    if resolution.unit == "note_value":
        return {"value": float(Fraction(resolution.value) * window_len),
                "unit": "whole_notes"}
    return {"value": float(resolution.value) * window_len, "unit": "seconds"}


def analyze(midi_bytes: bytes, cfg: AnalysisConfig, name: str = "") -> AnalysisBundle:
    """Parse, segment, and transform a MIDI file into a complete bundle.

    Deterministic in (midi_bytes, cfg, name); raises NoNotes for files with
    zero usable note events and propagates parser errors unchanged.
    """
    doc = parse_smf(midi_bytes)
    extraction = extract_notes(doc, include_percussion=cfg.include_percussion)
    notes = extraction.notes
    if not notes:
        raise NoNotes("file contains no usable note events")
    tempo_map = build_tempo_map(doc)
    span_end = max(n.onset_tick + n.duration_ticks for n in notes)
    grid = make_grid(span_end, cfg.resolution, tempo_map, doc.ppq)
    vectors = segment_weights(notes, grid, cfg.weighting)

    coarse = coarsen(vectors, cfg.wavescape_max_columns)
    wavescapes = tuple(build_wavescape(coarse, k) for k in range(1, 7))
    traj = sliding_trajectory(vectors, grid, tempo_map, doc.ppq, cfg.window_len)

    table = coefficient_prefix(vectors)
    raw = table.raw[1:] - table.raw[:-1]
    weights = raw[:, 0].real
    silent = weights <= 0
    safe = np.where(silent, 1.0, weights)
    segment_coeffs = np.where(silent[:, None], 0.0, raw[:, 1:7] / safe[:, None])

    metadata = {
        "name": name,
        "format": doc.format,
        "ppq": doc.ppq,
        "duration_seconds": tick_to_seconds(tempo_map, doc.ppq, span_end),
        "n_segments": grid.n_segments,
        "n_wavescape_columns": int(coarse.shape[0]),
        "n_notes": len(notes),
        "dangling_note_offs": extraction.dangling_offs,
        "unterminated_notes": extraction.unterminated,
        "content_hash": hashlib.sha256(midi_bytes).hexdigest(),
        "window_span": window_span(cfg.resolution, cfg.window_len),
    }
    return AnalysisBundle(
        metadata=metadata,
        segment_coeffs=segment_coeffs,
        segment_zero_weight=silent,
        wavescapes=wavescapes,
        trajectory=traj,
        config=cfg,
    )


# Serialization ---------------------------------------------------------------

def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _coeff_row(coeffs) -> list[list[float]]:
    return [_pair(complex(c)) for c in coeffs]


def resolution_payload(res: Resolution) -> dict:
    if res.unit == "note_value":
        return {"unit": "note_value", "value": str(res.value)}
    return {"unit": "seconds", "value": float(res.value)}


def resolution_from_payload(obj: dict) -> Resolution:
    if obj["unit"] == "note_value":
        return Resolution.note_value(Fraction(obj["value"]))
    return Resolution.seconds(obj["value"])


def config_payload(cfg: AnalysisConfig) -> dict:
    return {
        "resolution": resolution_payload(cfg.resolution),
        "window_len": cfg.window_len,
        "wavescape_max_columns": cfg.wavescape_max_columns,
        "include_percussion": cfg.include_percussion,
        "weighting": cfg.weighting,
    }


def trajectory_payload(traj: Trajectory) -> dict:
    points = []
    for p in traj.points:
        obj = {
            "window_start": p.window_start,
            "time_center_seconds": p.time_center_seconds,
            "coeffs": _coeff_row(p.coeffs),
        }
        if p.zero_weight:
            obj["zero_weight"] = True
        points.append(obj)
    return {
        "window_len": traj.window_len,
        "segment_seconds": list(traj.segment_seconds),
        "points": points,
    }


def _wavescape_payload(m: WavescapeMatrix) -> dict:
    rows = [_coeff_row(m.values[h, :m.n - h]) for h in range(m.n)]
    obj = {"k": m.k, "n": m.n, "rows": rows}
    zw = [[int(h), int(i)] for h, i in np.argwhere(m.zero_weight)]
    if zw:
        obj["zero_weight"] = sorted(zw)
    return obj


def prototypes_payload() -> dict:
    out = {}
    for k in range(1, 7):
        out[str(k)] = [
            {"label": p.label, "pcs": list(p.pcs), "position": _pair(p.position)}
            for p in dft.prototype_positions(k)
        ]
    return out


def serialize_bundle(b: AnalysisBundle) -> str:
    """Bundle as JSON text: complex numbers as [re, im] pairs, schema version
    "1", stable key order, empty zero-weight sets omitted."""
    segments = {"coeffs": [_coeff_row(row) for row in b.segment_coeffs]}
    zw = [int(i) for i in np.flatnonzero(b.segment_zero_weight)]
    if zw:
        segments["zero_weight"] = zw
    obj = {
        "schema_version": SCHEMA_VERSION,
        "metadata": b.metadata,
        "config": config_payload(b.config),
        "prototypes": prototypes_payload(),
        "segments": segments,
        "wavescapes": [_wavescape_payload(m) for m in b.wavescapes],
        "trajectory": trajectory_payload(b.trajectory),
    }
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def _complex_of(pair) -> complex:
    return complex(pair[0], pair[1])


def deserialize_bundle(text: str) -> AnalysisBundle:
    obj = json.loads(text)
    if obj.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {obj.get('schema_version')!r}")

    cfg_obj = obj["config"]
    cfg = AnalysisConfig(
        resolution=resolution_from_payload(cfg_obj["resolution"]),
        window_len=cfg_obj["window_len"],
        wavescape_max_columns=cfg_obj["wavescape_max_columns"],
        include_percussion=cfg_obj["include_percussion"],
        weighting=cfg_obj["weighting"],
    )

    seg_obj = obj["segments"]
    segment_coeffs = np.array(
        [[_complex_of(p) for p in row] for row in seg_obj["coeffs"]],
        dtype=np.complex128).reshape(len(seg_obj["coeffs"]), 6)
    segment_zero = np.zeros(len(seg_obj["coeffs"]), dtype=bool)
    for i in seg_obj.get("zero_weight", []):
        segment_zero[i] = True

    wavescapes = []
    for m_obj in obj["wavescapes"]:
        n = m_obj["n"]
        values = np.zeros((n, n), dtype=np.complex128)
        for h, row in enumerate(m_obj["rows"]):
            values[h, :n - h] = [_complex_of(p) for p in row]
        zero = np.zeros((n, n), dtype=bool)
        for h, i in m_obj.get("zero_weight", []):
            zero[h, i] = True
        wavescapes.append(WavescapeMatrix(k=m_obj["k"], n=n, values=values,
                                          zero_weight=zero))

    t_obj = obj["trajectory"]
    points = tuple(
        TrajectoryPoint(
            window_start=p["window_start"],
            time_center_seconds=p["time_center_seconds"],
            coeffs=np.array([_complex_of(c) for c in p["coeffs"]],
                            dtype=np.complex128),
            zero_weight=p.get("zero_weight", False),
        )
        for p in t_obj["points"]
    )
    traj = Trajectory(window_len=t_obj["window_len"], points=points,
                      segment_seconds=tuple(t_obj["segment_seconds"]))

    return AnalysisBundle(
        metadata=obj["metadata"],
        segment_coeffs=segment_coeffs,
        segment_zero_weight=segment_zero,
        wavescapes=tuple(wavescapes),
        trajectory=traj,
        config=cfg,
    )

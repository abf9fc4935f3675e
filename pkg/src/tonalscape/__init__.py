"""Tonality analysis of symbolic music through the pitch-class DFT:
wavescapes, Fourier-coefficient-space trajectories, and deterministic SVG
rendering, with a CLI and a JSON bundle contract for UIs."""

from .analysis import AnalysisBundle, AnalysisConfig, analyze, deserialize_bundle, serialize_bundle
from .dft import (
    CoefficientSet,
    PitchClassDistribution,
    PrototypePoint,
    coefficient,
    dft12,
    normalize_l1,
    parse_pc_text,
    prototype_positions,
    transpose,
)
from .errors import TonalscapeError
from .midi import MidiDocument, NoteEvent, TempoMap, build_tempo_map, extract_notes, parse_smf, tick_to_seconds
from .segmentation import Resolution, SegmentGrid, coarsen, make_grid, segment_weights
from .trajectory import Trajectory, TrajectoryPoint, sliding_trajectory, window_at_time
from .wavescape import (
    PrefixTable,
    WavescapeMatrix,
    build_wavescape,
    coefficient_prefix,
    phase_color,
    window_coefficient,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisBundle", "AnalysisConfig", "analyze", "serialize_bundle",
    "deserialize_bundle", "CoefficientSet", "PitchClassDistribution",
    "PrototypePoint", "coefficient", "dft12", "normalize_l1", "parse_pc_text",
    "prototype_positions", "transpose", "TonalscapeError", "MidiDocument",
    "NoteEvent", "TempoMap", "build_tempo_map", "extract_notes", "parse_smf",
    "tick_to_seconds", "Resolution", "SegmentGrid", "coarsen", "make_grid",
    "segment_weights", "Trajectory", "TrajectoryPoint", "sliding_trajectory",
    "window_at_time", "PrefixTable", "WavescapeMatrix", "build_wavescape",
    "coefficient_prefix", "phase_color", "window_coefficient", "__version__",
]

"""Full-pipeline orchestration, serialization round trips, and the schema."""

import json
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

import smf
from tonalscape.analysis import (
    AnalysisConfig,
    analyze,
    deserialize_bundle,
    serialize_bundle,
    window_span,
)
from tonalscape.errors import NoNotes, WindowTooLong
from tonalscape.segmentation import Resolution

SCHEMA_PATH = Path(__file__).parent.parent / "schema" / "analysis_bundle.schema.json"


def quarter_cfg(window_len: int = 1, **kwargs) -> AnalysisConfig:
    return AnalysisConfig(resolution=Resolution.note_value(Fraction(1, 4)),
                          window_len=window_len, **kwargs)


def one_chord_file(n_quarters: int = 4) -> bytes:
    return smf.chord_file([60, 64, 67], duration=480 * n_quarters)


def test_pipeline_identity_one_chord():
    bundle = analyze(one_chord_file(4), quarter_cfg(), name="chord.mid")
    assert bundle.metadata["n_segments"] == 4
    assert len(bundle.trajectory.points) == 4
    assert bundle.metadata["n_notes"] == 3
    assert len(bundle.wavescapes) == 6
    # constant harmony: every per-segment coefficient row is identical
    assert np.allclose(bundle.segment_coeffs, bundle.segment_coeffs[0], atol=1e-12)


def test_no_notes():
    data = smf.header(0, 1, 480) + smf.track(smf.text_meta(0))
    with pytest.raises(NoNotes):
        analyze(data, quarter_cfg())


def test_parser_errors_propagate():
    from tonalscape.errors import MissingHeader
    with pytest.raises(MissingHeader):
        analyze(b"not midi", quarter_cfg())


def test_window_too_long_propagates():
    with pytest.raises(WindowTooLong):
        analyze(one_chord_file(2), quarter_cfg(window_len=50))


def test_window_span_eighth_note_window_300():
    # resolution 1/8 with window 300 spans 37.5 whole notes, exactly
    span = window_span(Resolution.note_value(Fraction(1, 8)), 300)
    assert span == {"value": 37.5, "unit": "whole_notes"}


def test_window_span_recorded_in_metadata():
    notes = [(i * 240, 60 + (i % 12), 240, 80) for i in range(320)]
    cfg = AnalysisConfig(resolution=Resolution.note_value(Fraction(1, 8)), window_len=300)
    bundle = analyze(smf.simple_file(notes), cfg)
    assert bundle.metadata["window_span"] == {"value": 37.5, "unit": "whole_notes"}
    assert bundle.metadata["n_segments"] == 320
    assert len(bundle.trajectory.points) == 21


def test_window_span_seconds():
    assert window_span(Resolution.seconds(0.5), 4) == {"value": 2.0, "unit": "seconds"}


def test_analyze_deterministic():
    data = smf.simple_file([(0, 60, 480, 64), (480, 65, 480, 64), (960, 67, 960, 64)])
    a = serialize_bundle(analyze(data, quarter_cfg(window_len=2), name="x.mid"))
    b = serialize_bundle(analyze(data, quarter_cfg(window_len=2), name="x.mid"))
    assert a == b


def test_tip_consistency_between_wavescapes_and_trajectory():
    rng = np.random.default_rng(30)
    for trial in range(5):
        notes = [
            (int(rng.integers(0, 4000)), int(rng.integers(30, 100)),
             int(rng.integers(1, 900)), int(rng.integers(1, 128)))
            for _ in range(40)
        ]
        data = smf.simple_file(notes)
        bundle = analyze(data, quarter_cfg())
        n = bundle.metadata["n_segments"]
        full_cfg = quarter_cfg(window_len=n)
        tip_traj = analyze(data, full_cfg).trajectory.points[0]
        for k in range(1, 7):
            tip = bundle.wavescapes[k - 1]
            assert tip.cell(tip.n - 1, 0) == pytest.approx(tip_traj.coeffs[k - 1], abs=1e-9)


def test_tip_consistency_survives_coarsening():
    notes = [(i * 120, 48 + (i * 5) % 24, 120, 90) for i in range(64)]
    data = smf.simple_file(notes)
    bundle = analyze(data, quarter_cfg(wavescape_max_columns=5))
    # 16 segments, cap 5: groups of ceil(16/5)=4 make ceil(16/4)=4 columns
    assert bundle.metadata["n_wavescape_columns"] == 4
    n = bundle.metadata["n_segments"]
    tip_traj = analyze(data, quarter_cfg(window_len=n)).trajectory.points[0]
    for k in range(1, 7):
        m = bundle.wavescapes[k - 1]
        assert m.cell(m.n - 1, 0) == pytest.approx(tip_traj.coeffs[k - 1], abs=1e-9)


def test_percussion_flag_changes_weights():
    body = (smf.note_on(0, 36, 90, channel=9) + smf.note_off(480, 36, channel=9)
            + smf.note_on(0, 60, 64) + smf.note_off(480, 60))
    data = smf.header(0, 1, 480) + smf.track(body)
    with_perc = analyze(data, quarter_cfg())
    without = analyze(data, quarter_cfg(include_percussion=False))
    assert with_perc.metadata["n_notes"] == 2
    assert without.metadata["n_notes"] == 1


# -- serialization ----------------------------------------------------------------

def test_complex_encoding():
    bundle = analyze(one_chord_file(2), quarter_cfg())
    obj = json.loads(serialize_bundle(bundle))
    pair = obj["segments"]["coeffs"][0][0]
    assert isinstance(pair, list) and len(pair) == 2
    assert obj["schema_version"] == "1"


def test_empty_zero_weight_omitted():
    bundle = analyze(one_chord_file(2), quarter_cfg())
    obj = json.loads(serialize_bundle(bundle))
    assert "zero_weight" not in obj["segments"]
    for m in obj["wavescapes"]:
        assert "zero_weight" not in m


def test_zero_weight_serialized_when_present():
    # a gap between two notes leaves silent middle segments
    data = smf.simple_file([(0, 60, 480, 64), (1440, 64, 480, 64)])
    bundle = analyze(data, quarter_cfg())
    obj = json.loads(serialize_bundle(bundle))
    assert obj["segments"]["zero_weight"] == [1, 2]
    assert [0, 1] in obj["wavescapes"][0]["zero_weight"]


def test_round_trip_field_by_field():
    rng = np.random.default_rng(31)
    notes = [
        (int(rng.integers(0, 2000)), int(rng.integers(20, 110)),
         int(rng.integers(1, 600)), int(rng.integers(1, 128)))
        for _ in range(25)
    ]
    data = smf.simple_file(notes, tempo_us=420000)
    bundle = analyze(data, quarter_cfg(window_len=3), name="rt.mid")
    text = serialize_bundle(bundle)
    again = deserialize_bundle(text)

    assert again.metadata == bundle.metadata
    assert again.config == bundle.config
    assert np.array_equal(again.segment_coeffs, bundle.segment_coeffs)
    assert np.array_equal(again.segment_zero_weight, bundle.segment_zero_weight)
    for m1, m2 in zip(bundle.wavescapes, again.wavescapes):
        assert m1.k == m2.k and m1.n == m2.n
        assert np.array_equal(m1.values, m2.values)
        assert np.array_equal(m1.zero_weight, m2.zero_weight)
    assert again.trajectory.window_len == bundle.trajectory.window_len
    assert again.trajectory.segment_seconds == bundle.trajectory.segment_seconds
    for p1, p2 in zip(bundle.trajectory.points, again.trajectory.points):
        assert p1.window_start == p2.window_start
        assert p1.time_center_seconds == p2.time_center_seconds
        assert p1.zero_weight == p2.zero_weight
        assert np.array_equal(p1.coeffs, p2.coeffs)
    # and byte-stable through a second round
    assert serialize_bundle(again) == text


def test_seconds_resolution_round_trip():
    data = smf.simple_file([(0, 60, 960, 64)], tempo_us=500000)
    cfg = AnalysisConfig(resolution=Resolution.seconds(0.25), window_len=1)
    bundle = analyze(data, cfg)
    again = deserialize_bundle(serialize_bundle(bundle))
    assert again.config.resolution == Resolution.seconds(0.25)


def test_bundle_validates_against_schema():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))
    data = smf.simple_file([(0, 60, 480, 64), (1440, 64, 480, 64)])
    bundle = analyze(data, quarter_cfg(window_len=2), name="schema.mid")
    jsonschema.validate(json.loads(serialize_bundle(bundle)), schema)


def test_bad_schema_version_rejected():
    bundle = analyze(one_chord_file(2), quarter_cfg())
    obj = json.loads(serialize_bundle(bundle))
    obj["schema_version"] = "999"
    with pytest.raises(ValueError):
        deserialize_bundle(json.dumps(obj))

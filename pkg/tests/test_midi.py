"""SMF parser, note pairing, and tempo map tests against hand-assembled bytes."""

import pytest

import smf
from tonalscape.errors import BadVarLen, MissingHeader, TruncatedChunk, UnsupportedFormat
from tonalscape.midi import (
    NoteEvent,
    build_tempo_map,
    extract_notes,
    parse_smf,
    seconds_to_tick,
    tick_to_seconds,
)


def test_header_decoding():
    data = smf.header(0, 1, 480) + smf.track(b"")
    doc = parse_smf(data)
    assert doc.format == 0
    assert doc.ppq == 480
    assert len(doc.tracks) == 1


def test_missing_header():
    with pytest.raises(MissingHeader):
        parse_smf(b"RIFF" + bytes(20))
    with pytest.raises(MissingHeader):
        parse_smf(b"MT")


def test_format_2_rejected():
    with pytest.raises(UnsupportedFormat):
        parse_smf(smf.header(2, 1, 480) + smf.track(b""))


def test_smpte_division_rejected():
    with pytest.raises(UnsupportedFormat):
        parse_smf(smf.header(0, 1, 0xE250) + smf.track(b""))


def test_truncated_track_chunk():
    data = smf.header(0, 1, 480) + b"MTrk" + (100).to_bytes(4, "big") + b"\x00"
    with pytest.raises(TruncatedChunk):
        parse_smf(data)


def test_missing_track_chunk():
    with pytest.raises(TruncatedChunk):
        parse_smf(smf.header(1, 2, 480) + smf.track(b""))


def test_bad_varlen():
    body = b"\xff\xff\xff\xff\xff" + bytes([0x90, 60, 64])
    with pytest.raises(BadVarLen):
        parse_smf(smf.header(0, 1, 480) + smf.track(body, append_eot=False))


def test_alien_chunks_skipped():
    alien = b"XFIH" + (4).to_bytes(4, "big") + b"\xde\xad\xbe\xef"
    data = smf.header(0, 1, 480) + alien + smf.track(smf.note_on(0, 60, 64) + smf.note_off(480, 60))
    doc = parse_smf(data)
    assert len(doc.tracks) == 1
    assert extract_notes(doc).notes == [NoteEvent(60, 0, 480, 64, 0, 0)]


def test_running_status():
    # second note-on omits the status byte
    body = (smf.varlen(0) + bytes([0x90, 60, 64])
            + smf.varlen(0) + bytes([64, 70])
            + smf.varlen(480) + bytes([60, 0])
            + smf.varlen(0) + bytes([64, 0]))
    doc = parse_smf(smf.header(0, 1, 480) + smf.track(body))
    notes = extract_notes(doc).notes
    assert notes == [NoteEvent(60, 0, 480, 64, 0, 0), NoteEvent(64, 0, 480, 70, 0, 0)]


def test_data_byte_without_running_status():
    body = smf.varlen(0) + bytes([60, 64])
    with pytest.raises(TruncatedChunk):
        parse_smf(smf.header(0, 1, 480) + smf.track(body, append_eot=False))


def test_sysex_skipped():
    body = (smf.varlen(0) + bytes([0xF0, 0x03, 0x01, 0x02, 0xF7])
            + smf.note_on(0, 60, 64) + smf.note_off(480, 60))
    doc = parse_smf(smf.header(0, 1, 480) + smf.track(body))
    assert extract_notes(doc).notes == [NoteEvent(60, 0, 480, 64, 0, 0)]


def test_single_data_byte_messages():
    # program change and channel pressure take one data byte, not two
    body = (smf.varlen(0) + bytes([0xC0, 5])
            + smf.varlen(0) + bytes([0xD0, 100])
            + smf.note_on(0, 60, 64) + smf.note_off(480, 60))
    doc = parse_smf(smf.header(0, 1, 480) + smf.track(body))
    assert extract_notes(doc).notes == [NoteEvent(60, 0, 480, 64, 0, 0)]


def test_two_track_format1_with_tempo():
    t0 = smf.track(smf.tempo(0, 500000))
    t1 = smf.track(smf.note_on(0, 62, 50) + smf.note_off(240, 62))
    doc = parse_smf(smf.header(1, 2, 480) + t0 + t1)
    assert doc.format == 1
    tempo_events = [ev for ev in doc.tracks[0] if ev.meta_type == 0x51]
    assert len(tempo_events) == 1
    assert extract_notes(doc).notes == [NoteEvent(62, 0, 240, 50, 1, 0)]


# -- note pairing -------------------------------------------------------------

def test_velocity_zero_is_note_off():
    body = smf.note_on(0, 60, 64) + smf.note_on(240, 60, 0)
    doc = parse_smf(smf.header(0, 1, 480) + smf.track(body))
    assert extract_notes(doc).notes == [NoteEvent(60, 0, 240, 64, 0, 0)]


def test_dangling_note_off():
    body = smf.note_off(0, 60)
    doc = parse_smf(smf.header(0, 1, 480) + smf.track(body))
    ext = extract_notes(doc)
    assert ext.notes == []
    assert ext.dangling_offs == 1


def test_overlapping_same_pitch_fifo():
    body = (smf.note_on(0, 60, 40) + smf.note_on(120, 60, 50)
            + smf.note_off(120, 60) + smf.note_off(240, 60))
    doc = parse_smf(smf.header(0, 1, 480) + smf.track(body))
    notes = extract_notes(doc).notes
    # first off closes the first on
    assert notes == [NoteEvent(60, 0, 240, 40, 0, 0), NoteEvent(60, 120, 360, 50, 0, 0)]


def test_unterminated_note_closed_at_track_end():
    body = smf.note_on(0, 60, 64) + smf.text_meta(960)
    doc = parse_smf(smf.header(0, 1, 480) + smf.track(body))
    ext = extract_notes(doc)
    assert ext.notes == [NoteEvent(60, 0, 960, 64, 0, 0)]
    assert ext.unterminated == 1


def test_zero_length_note_dropped():
    body = smf.note_on(0, 60, 64) + smf.note_off(0, 60)
    doc = parse_smf(smf.header(0, 1, 480) + smf.track(body))
    ext = extract_notes(doc)
    assert ext.notes == []
    assert ext.dropped_zero_length == 1


def test_percussion_channel_filter():
    body = (smf.note_on(0, 36, 90, channel=9) + smf.note_off(120, 36, channel=9)
            + smf.note_on(0, 60, 64) + smf.note_off(360, 60))
    doc = parse_smf(smf.header(0, 1, 480) + smf.track(body))
    assert len(extract_notes(doc).notes) == 2
    kept = extract_notes(doc, include_percussion=False).notes
    assert kept == [NoteEvent(60, 120, 360, 64, 0, 0)]


def test_notes_sorted_with_positive_durations():
    data = smf.simple_file([(960, 72, 120, 33), (0, 60, 480, 64), (480, 64, 240, 80)])
    notes = extract_notes(parse_smf(data)).notes
    assert [n.onset_tick for n in notes] == sorted(n.onset_tick for n in notes)
    assert all(n.duration_ticks >= 1 for n in notes)


def test_parse_determinism_golden_listing():
    data = smf.simple_file([(0, 60, 480, 64), (480, 64, 240, 80), (720, 67, 240, 70)])
    listing = "\n".join(
        f"{n.track_index} {n.pitch} {n.onset_tick} {n.duration_ticks} {n.velocity}"
        for n in extract_notes(parse_smf(data)).notes
    )
    golden = "0 60 0 480 64\n0 64 480 240 80\n0 67 720 240 70"
    assert listing == golden
    assert listing == "\n".join(
        f"{n.track_index} {n.pitch} {n.onset_tick} {n.duration_ticks} {n.velocity}"
        for n in extract_notes(parse_smf(data)).notes
    )


# -- tempo map ----------------------------------------------------------------

def test_default_tempo_map():
    doc = parse_smf(smf.header(0, 1, 480) + smf.track(b""))
    assert build_tempo_map(doc).entries == ((0, 500000),)


def test_tempo_conversion_120_then_60_bpm():
    body = smf.tempo(0, 500000) + smf.tempo(960, 1000000)
    doc = parse_smf(smf.header(0, 1, 480) + smf.track(body))
    assert build_tempo_map(doc).entries == ((0, 500000), (960, 1000000))


def test_simultaneous_tempo_events_last_wins():
    body = smf.tempo(0, 500000) + smf.tempo(0, 250000)
    doc = parse_smf(smf.header(0, 1, 480) + smf.track(body))
    assert build_tempo_map(doc).entries == ((0, 250000),)


def test_tempo_merged_across_tracks():
    t0 = smf.track(smf.tempo(0, 500000))
    t1 = smf.track(smf.tempo(480, 250000))
    tm = build_tempo_map(parse_smf(smf.header(1, 2, 480) + t0 + t1))
    assert tm.entries == ((0, 500000), (480, 250000))


def test_tick_to_seconds_single_tempo():
    doc = parse_smf(smf.header(0, 1, 480) + smf.track(b""))
    tm = build_tempo_map(doc)
    assert tick_to_seconds(tm, 480, 480) == 0.5
    assert tick_to_seconds(tm, 480, 0) == 0.0


def test_tick_to_seconds_two_segments():
    # 480 ticks at 120 BPM then 480 ticks at 60 BPM: 0.5 s + 1.0 s
    body = smf.tempo(0, 500000) + smf.tempo(480, 1000000)
    tm = build_tempo_map(parse_smf(smf.header(0, 1, 480) + smf.track(body)))
    assert tick_to_seconds(tm, 480, 960) == pytest.approx(1.5, abs=1e-12)


def test_tick_to_seconds_monotone():
    body = smf.tempo(0, 500000) + smf.tempo(100, 100000) + smf.tempo(700, 900000)
    tm = build_tempo_map(parse_smf(smf.header(0, 1, 480) + smf.track(body)))
    values = [tick_to_seconds(tm, 480, t) for t in range(0, 2000, 7)]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_seconds_to_tick_inverts():
    body = smf.tempo(0, 500000) + smf.tempo(480, 1000000)
    tm = build_tempo_map(parse_smf(smf.header(0, 1, 480) + smf.track(body)))
    for tick in (0, 100, 480, 777, 1600):
        s = tick_to_seconds(tm, 480, tick)
        assert seconds_to_tick(tm, 480, s) == pytest.approx(tick, abs=1e-6)

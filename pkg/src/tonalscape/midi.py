"""Standard MIDI File ingestion: header/track decoding, note pairing, and the
tempo map that links the tick timeline to seconds.

Formats 0 and 1 with metrical division only. Format 2 and SMPTE division are
rejected loudly instead of being silently misread.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import BadVarLen, MissingHeader, TruncatedChunk, UnsupportedFormat

DEFAULT_TEMPO_US = 500_000  # 120 BPM, the SMF default when no tempo event exists
PERCUSSION_CHANNEL = 9      # "channel 10" in 1-based MIDI talk

_META = 0xFF
_META_TEMPO = 0x51
_META_END_OF_TRACK = 0x2F


@dataclass(frozen=True)
class TrackEvent:
    """One decoded track event at an absolute tick.

    status is the full status byte for channel events and 0xFF for meta
    events (meta_type then identifies which); sysex payloads are skipped
    during parsing and never stored.
    """

    tick: int
    status: int
    data: bytes = b""
    meta_type: int = -1

    @property
    def channel(self) -> int:
        return self.status & 0x0F if self.status < 0xF0 else -1


@dataclass(frozen=True)
class MidiDocument:
    format: int
    ppq: int
    tracks: tuple[tuple[TrackEvent, ...], ...]


@dataclass(frozen=True)
class NoteEvent:
    pitch: int
    onset_tick: int
    duration_ticks: int
    velocity: int
    track_index: int
    channel: int = 0


@dataclass(frozen=True)
class TempoMap:
    """Tempo entries (tick, microseconds per quarter), strictly increasing
    ticks, first entry always at tick 0."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.entries or self.entries[0][0] != 0:
            raise ValueError("tempo map must start with an entry at tick 0")
        for (t0, us0), (t1, _) in zip(self.entries, self.entries[1:]):
            if t1 <= t0:
                raise ValueError("tempo map ticks must be strictly increasing")
        for _, us in self.entries:
            if us <= 0:
                raise ValueError("microseconds per quarter must be positive")


@dataclass
class NoteExtraction:
    """Matched notes plus tallies of the irregularities seen on the way."""

    notes: list[NoteEvent]
    dangling_offs: int = 0
    unterminated: int = 0
    dropped_zero_length: int = 0


def _read_varlen(buf: bytes, i: int) -> tuple[int, int]:
    value = 0
    for _ in range(4):
        if i >= len(buf):
            raise TruncatedChunk("track ended inside a variable-length quantity")
        b = buf[i]
        i += 1
        value = (value << 7) | (b & 0x7F)
        if not b & 0x80:
            return value, i
    raise BadVarLen("variable-length quantity longer than 4 bytes")


def _parse_track(chunk: bytes) -> tuple[TrackEvent, ...]:
    events: list[TrackEvent] = []
    i = 0
    tick = 0
    running: int | None = None
    n = len(chunk)
    while i < n:
        delta, i = _read_varlen(chunk, i)
        tick += delta
        if i >= n:
            raise TruncatedChunk("track ended after a delta time")
        b0 = chunk[i]
        if b0 == _META:
            if i + 2 > n:
                raise TruncatedChunk("truncated meta event")
            meta_type = chunk[i + 1]
            length, j = _read_varlen(chunk, i + 2)
            if j + length > n:
                raise TruncatedChunk("meta event payload past end of track")
            events.append(TrackEvent(tick, _META, bytes(chunk[j:j + length]), meta_type))
            i = j + length
            running = None  # meta events cancel running status
            if meta_type == _META_END_OF_TRACK:
                break
        elif b0 in (0xF0, 0xF7):
            length, j = _read_varlen(chunk, i + 1)
            if j + length > n:
                raise TruncatedChunk("sysex payload past end of track")
            i = j + length  # skipped, not stored
            running = None
        else:
            if b0 & 0x80:
                status = b0
                running = status
                i += 1
            elif running is None:
                raise TruncatedChunk("data byte with no running status")
            else:
                status = running
            width = 1 if status & 0xF0 in (0xC0, 0xD0) else 2
            if i + width > n:
                raise TruncatedChunk("channel event data past end of track")
            events.append(TrackEvent(tick, status, bytes(chunk[i:i + width])))
            i += width
    return tuple(events)


def parse_smf(data: bytes) -> MidiDocument:
    """Decode a Standard MIDI File (formats 0 and 1, metrical division)."""
    if len(data) < 4 or data[:4] != b"MThd":
        raise MissingHeader("no MThd chunk at offset 0")
    if len(data) < 14:
        raise TruncatedChunk("header chunk shorter than its fixed 6-byte body")
    header_len = int.from_bytes(data[4:8], "big")
    if header_len < 6 or 8 + header_len > len(data):
        raise TruncatedChunk("declared header length does not fit the file")
    fmt = int.from_bytes(data[8:10], "big")
    ntrks = int.from_bytes(data[10:12], "big")
    division = int.from_bytes(data[12:14], "big")
    if fmt not in (0, 1):
        raise UnsupportedFormat(f"SMF format {fmt} not supported (only 0 and 1)")
    if division & 0x8000:
        raise UnsupportedFormat("SMPTE time division not supported")
    if division == 0:
        raise UnsupportedFormat("ticks-per-quarter of zero")

    tracks: list[tuple[TrackEvent, ...]] = []
    offset = 8 + header_len
    while len(tracks) < ntrks:
        if offset + 8 > len(data):
            raise TruncatedChunk(f"expected {ntrks} track chunks, found {len(tracks)}")
        ctype = data[offset:offset + 4]
        clen = int.from_bytes(data[offset + 4:offset + 8], "big")
        if offset + 8 + clen > len(data):
            raise TruncatedChunk("track chunk body past end of file")
        body = data[offset + 8:offset + 8 + clen]
        if ctype == b"MTrk":
            tracks.append(_parse_track(body))
        # unknown chunk types are skipped per the SMF spec
        offset += 8 + clen
    return MidiDocument(format=fmt, ppq=division, tracks=tuple(tracks))


def extract_notes(doc: MidiDocument, include_percussion: bool = True) -> NoteExtraction:
    """Pair note-ons with note-offs, FIFO per (track, channel, pitch).

    Velocity-0 note-ons count as note-offs. Unterminated notes are closed at
    the last event tick of their track; zero-length results are dropped and
    tallied rather than emitted.
    """
    result = NoteExtraction(notes=[])
    for track_index, events in enumerate(doc.tracks):
        last_tick = events[-1].tick if events else 0
        active: dict[tuple[int, int], deque[tuple[int, int]]] = {}
        for ev in events:
            kind = ev.status & 0xF0
            if kind not in (0x80, 0x90):
                continue
            channel = ev.channel
            if not include_percussion and channel == PERCUSSION_CHANNEL:
                continue
            pitch, velocity = ev.data[0], ev.data[1]
            is_on = kind == 0x90 and velocity > 0
            key = (channel, pitch)
            if is_on:
                active.setdefault(key, deque()).append((ev.tick, velocity))
            else:
                queue = active.get(key)
                if not queue:
                    result.dangling_offs += 1
                    continue
                onset, on_vel = queue.popleft()
                duration = ev.tick - onset
                if duration >= 1:
                    result.notes.append(NoteEvent(pitch, onset, duration, on_vel,
                                                  track_index, channel))
                else:
                    result.dropped_zero_length += 1
        for (channel, pitch), queue in active.items():
            for onset, on_vel in queue:
                result.unterminated += 1
                duration = last_tick - onset
                if duration >= 1:
                    result.notes.append(NoteEvent(pitch, onset, duration, on_vel,
                                                  track_index, channel))
                else:
                    result.dropped_zero_length += 1
    result.notes.sort(key=lambda nv: nv.onset_tick)
    return result


def build_tempo_map(doc: MidiDocument) -> TempoMap:
    """Merge tempo meta events across tracks; later file position wins ties."""
    by_tick: dict[int, int] = {}
    for events in doc.tracks:
        for ev in events:
            if ev.status == _META and ev.meta_type == _META_TEMPO and len(ev.data) >= 3:
                us = int.from_bytes(ev.data[:3], "big")
                if us > 0:
                    by_tick[ev.tick] = us
    if 0 not in by_tick:
        by_tick[0] = DEFAULT_TEMPO_US
    return TempoMap(entries=tuple(sorted(by_tick.items())))


def tick_to_seconds(tempo_map: TempoMap, ppq: int, tick: float) -> float:
    """Seconds elapsed at a tick, integrating microseconds-per-quarter over
    the tempo segments. Monotone nondecreasing in tick."""
    if ppq <= 0:
        raise ValueError("ppq must be positive")
    if tick <= 0:
        return 0.0
    total_us = 0
    entries = tempo_map.entries
    for idx, (start, us) in enumerate(entries):
        if tick <= start:
            break
        end = entries[idx + 1][0] if idx + 1 < len(entries) else tick
        span = min(tick, end) - start
        if span > 0:
            total_us += span * us
    return total_us / (ppq * 1_000_000)


def seconds_to_tick(tempo_map: TempoMap, ppq: int, seconds: float) -> float:
    """Inverse of tick_to_seconds (exact on each linear tempo segment)."""
    if seconds <= 0:
        return 0.0
    entries = tempo_map.entries
    elapsed = 0.0
    for idx, (start, us) in enumerate(entries):
        if idx + 1 < len(entries):
            end = entries[idx + 1][0]
            span_s = (end - start) * us / (ppq * 1_000_000)
            if elapsed + span_s >= seconds:
                return start + (seconds - elapsed) * 1_000_000 * ppq / us
            elapsed += span_s
        else:
            return start + (seconds - elapsed) * 1_000_000 * ppq / us
    raise AssertionError("unreachable: last tempo segment is unbounded")

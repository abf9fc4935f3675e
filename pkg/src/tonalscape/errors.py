"""Exception types shared across the engine.

Everything user-facing derives from TonalscapeError so callers (CLI, web
bridge) can map the whole family to one "bad input" exit path.
"""


class TonalscapeError(Exception):
    """Base class for all errors raised by this package."""


# MIDI ingestion -------------------------------------------------------------

class MidiError(TonalscapeError):
    """Base class for Standard MIDI File parsing failures."""


class MissingHeader(MidiError):
    """File does not start with an MThd chunk."""


class UnsupportedFormat(MidiError):
    """SMF format 2 or SMPTE time division; refused rather than misread."""


class TruncatedChunk(MidiError):
    """Chunk or event data ends before its declared length."""


class BadVarLen(MidiError):
    """Variable-length quantity longer than 4 bytes."""


# Segmentation ---------------------------------------------------------------

class ZeroLengthSegment(TonalscapeError):
    """Resolution rounds to a zero-tick segment length."""


# Pitch-class DFT ------------------------------------------------------------

class ZeroVector(TonalscapeError):
    """All-zero pitch-class vector; signals an empty window upstream."""


class BadIndex(TonalscapeError):
    """Coefficient index outside 1..6."""


class NegativeWeight(TonalscapeError):
    """Pitch-class weight below zero in text input."""


class ParseError(TonalscapeError):
    """Malformed pitch-class set text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# Wavescape ------------------------------------------------------------------

class EmptyInput(TonalscapeError):
    """No segment vectors to transform."""


class ZeroWeightWindow(TonalscapeError):
    """Window covers only silence, so no distribution exists."""


class OutOfRange(TonalscapeError):
    """Window start/length or coefficient index outside the table."""


# Trajectory -----------------------------------------------------------------

class WindowTooLong(TonalscapeError):
    """Sliding window longer than the number of segments."""


class EmptyTrajectory(TonalscapeError):
    """Time lookup on a trajectory with no points."""


# Render / analysis ----------------------------------------------------------

class MismatchedCoefficient(TonalscapeError):
    """Prototype points passed to a disk of a different coefficient."""


class NoNotes(TonalscapeError):
    """Parsed file contains zero usable note events."""

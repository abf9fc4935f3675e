"""Pitch-class DFT core: normalization, the 12-point transform, set parsing,
transposition, and the prototype catalogs for the six coefficient disks.

Sign convention, fixed for reproducibility across the whole package:

    c_k = sum_{p=0..11} v[p] * exp(-2j*pi*k*p/12)        with C = pitch class 0

Phases are reported in (-pi, pi]; the phase of a zero coefficient is 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadIndex, NegativeWeight, ParseError, ZeroVector

PITCH_NAMES = ("C", "C♯", "D", "D♯", "E", "F", "F♯", "G", "G♯", "A", "A♯", "B")

# Rows k = 0..6 of the 12-point Fourier basis; coefficients 7..11 are the
# conjugates of 5..1 for real input and carry no extra information.
_BASIS = np.exp(-2j * np.pi * np.outer(np.arange(7), np.arange(12)) / 12.0)


def _as_vector(v) -> np.ndarray:
    arr = np.asarray(getattr(v, "d", v), dtype=np.float64)
    if arr.shape != (12,):
        raise ValueError(f"expected 12 pitch-class weights, got shape {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False)
class PitchClassDistribution:
    """Nonnegative 12-vector with unit L1 norm."""

    d: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.d, dtype=np.float64)
        if arr.shape != (12,):
            raise ValueError("distribution must have 12 entries")
        if np.any(arr < 0):
            raise ValueError("distribution entries must be nonnegative")
        if abs(arr.sum() - 1.0) > 1e-9:
            raise ValueError("distribution must sum to 1")
        arr.flags.writeable = False
        object.__setattr__(self, "d", arr)


@dataclass(frozen=True, eq=False)
class CoefficientSet:
    """Fourier coefficients 0..6 of one pitch-class vector."""

    c: np.ndarray          # shape (7,), complex128
    normalized: bool       # True when computed from a distribution

    def magnitude(self, k: int) -> float:
        return float(abs(self.c[k]))

    def phase(self, k: int) -> float:
        """Phase in (-pi, pi]; 0 for a vanishing coefficient."""
        return float(np.angle(self.c[k]))


@dataclass(frozen=True)
class PrototypePoint:
    """A labeled landmark set and its position on the k-th coefficient disk."""

    label: str
    pcs: tuple[int, ...]
    k: int
    position: complex


def normalize_l1(v) -> PitchClassDistribution:
    """Scale a nonnegative weight vector to unit L1 norm.

    Raises ZeroVector for all-zero input (an empty analysis window).
    """
    arr = _as_vector(v)
    total = arr.sum()
    if total <= 0:
        raise ZeroVector("cannot normalize an all-zero pitch-class vector")
    return PitchClassDistribution(arr / total)


def dft12(v) -> CoefficientSet:
    """Fourier coefficients 0..6 of a pitch-class vector or distribution.

    For a PitchClassDistribution the result is flagged normalized and its
    zeroth coefficient pinned to exactly 1.
    """
    is_dist = isinstance(v, PitchClassDistribution)
    c = _BASIS @ _as_vector(v)
    if is_dist:
        c[0] = 1.0 + 0.0j
    c.flags.writeable = False
    return CoefficientSet(c=c, normalized=is_dist)


def dft12_rows(vectors: np.ndarray) -> np.ndarray:
    """Raw (unnormalized) coefficients 0..6 for each row of an (N, 12) array."""
    arr = np.asarray(vectors, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 12:
        raise ValueError(f"expected an (N, 12) array, got shape {arr.shape}")
    return arr @ _BASIS.T


def coefficient(d: PitchClassDistribution, k: int) -> complex:
    """The k-th normalized coefficient, k in 1..6."""
    if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= 6:
        raise BadIndex(f"coefficient index must be in 1..6, got {k!r}")
    return complex(dft12(d).c[k])


def transpose(v, t: int) -> np.ndarray:
    """Shift every pitch class up by t semitones: w'[p] = w[(p - t) mod 12]."""
    return np.roll(_as_vector(v), t % 12)


# Pitch-class set text -------------------------------------------------------

_WS = " \t\r\n"


def parse_pc_text(s: str) -> np.ndarray:
    """Parse a pitch-class multiset like ``{0, 4, 7}`` or ``0:2, 4:1, 7:0.5``.

    Braces are optional; repeats add 1 each; ``pc:weight`` items add the given
    weight. Pitch classes must be integers 0..11 (12 is rejected, not wrapped).
    """
    w = np.zeros(12, dtype=np.float64)
    i = 0
    n = len(s)

    def skip_ws(j: int) -> int:
        while j < n and s[j] in _WS:
            j += 1
        return j

    def read_number(j: int) -> tuple[str, int]:
        start = j
        if j < n and s[j] in "+-":
            j += 1
        while j < n and (s[j].isdigit() or s[j] == "."):
            j += 1
        if j == start or s[start:j] in ("+", "-"):
            raise ParseError("expected a number", start)
        return s[start:j], start

    i = skip_ws(i)
    braced = False
    if i < n and s[i] == "{":
        braced = True
        i = skip_ws(i + 1)

    expect_item = False  # after a comma an item is mandatory
    while True:
        i = skip_ws(i)
        if i >= n or s[i] == "}":
            if expect_item:
                raise ParseError("expected a pitch class after ','", i)
            break
        tok, pos = read_number(i)
        i = skip_ws(i + len(tok))
        if "." in tok:
            raise ParseError("pitch class must be an integer", pos)
        pc = int(tok)
        if not 0 <= pc <= 11:
            raise ParseError(f"pitch class {pc} out of range 0..11", pos)
        if i < n and s[i] == ":":
            i = skip_ws(i + 1)
            wtok, wpos = read_number(i)
            i += len(wtok)
            weight = float(wtok)
            if weight < 0:
                raise NegativeWeight(f"negative weight {wtok} for pitch class {pc}")
            w[pc] += weight
        else:
            w[pc] += 1.0
        i = skip_ws(i)
        if i < n and s[i] == ",":
            i += 1
            expect_item = True
        elif i < n and s[i] != "}":
            raise ParseError("expected ',' between items", i)
        else:
            expect_item = False

    if braced:
        if i >= n or s[i] != "}":
            raise ParseError("missing closing '}'", i)
        i = skip_ws(i + 1)
    if i < n:
        raise ParseError(f"unexpected character {s[i]!r}", i)
    return w


# Prototype catalogs ---------------------------------------------------------

def _aug(root: int) -> tuple[int, ...]:
    return tuple(sorted((root + i) % 12 for i in (0, 4, 8)))


def _dim7(root: int) -> tuple[int, ...]:
    return tuple(sorted((root + i) % 12 for i in (0, 3, 6, 9)))


def _hexatonic(a: int) -> tuple[int, ...]:
    return tuple(sorted(set(_aug(a)) | set(_aug(a + 1))))


def _octatonic(a: int) -> tuple[int, ...]:
    return tuple(sorted(set(_dim7(a)) | set(_dim7(a + 1))))


def _diatonic(t: int) -> tuple[int, ...]:
    return tuple(sorted((p + t) % 12 for p in (0, 2, 4, 5, 7, 9, 11)))


_FIFTHS_ORDER = tuple((7 * i) % 12 for i in range(12))  # C G D A E B F# C# G# D# A# F

# Diatonic scales labeled by key signature, sharpwise then flatwise.
_DIATONIC_LABELS = (
    ("0♯/♭", 0), ("1♯", 7), ("2♯", 2), ("3♯", 9), ("4♯", 4), ("5♯", 11),
    ("6♯/6♭", 6), ("5♭", 1), ("4♭", 8), ("3♭", 3), ("2♭", 10), ("1♭", 5),
)


def default_prototype_catalog() -> dict[int, list[tuple[str, tuple[int, ...]]]]:
    """Labeled landmark sets per coefficient; positions are computed on demand.

    Only k=3 (augmented triads, hexatonic scales) and k=5 (singletons,
    diatonic scales by key signature) are conventional; the rest are
    maximal-magnitude sets for their coefficient.
    """
    catalog: dict[int, list[tuple[str, tuple[int, ...]]]] = {
        1: [(PITCH_NAMES[p], (p,)) for p in range(12)],
        2: [(f"{PITCH_NAMES[p]}-{PITCH_NAMES[p + 6]}", (p, p + 6)) for p in range(6)],
        3: [(f"+ on {PITCH_NAMES[r]}", _aug(r)) for r in range(4)]
           + [(f"H{a},{a + 1}", _hexatonic(a)) for a in range(4)],
        4: [(f"°7 on {PITCH_NAMES[r]}", _dim7(r)) for r in range(3)]
           + [(f"Oct{a},{a + 1}", _octatonic(a)) for a in range(3)],
        5: [(PITCH_NAMES[p], (p,)) for p in _FIFTHS_ORDER]
           + [(label, _diatonic(t)) for label, t in _DIATONIC_LABELS],
        6: [("WT0", tuple(range(0, 12, 2))), ("WT1", tuple(range(1, 12, 2)))],
    }
    return catalog


def prototype_positions(k: int, catalog=None) -> list[PrototypePoint]:
    """Landmark points for the k-th coefficient disk, positions computed
    from the catalog sets, never hard-coded."""
    if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= 6:
        raise BadIndex(f"coefficient index must be in 1..6, got {k!r}")
    entries = (catalog or default_prototype_catalog())[k]
    points = []
    for label, pcs in entries:
        w = np.zeros(12)
        for p in pcs:
            w[p] += 1.0
        position = coefficient(normalize_l1(w), k)
        points.append(PrototypePoint(label=label, pcs=tuple(pcs), k=k, position=position))
    return points

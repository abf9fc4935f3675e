"""Generate the frontend test fixtures from the engine.

Writes tests/fixtures/{bundle.json, expected_markers.json, pcset_aug.json}.
Every complex value the UI tests assert against originates here, on the
engine side of the boundary. Rerun after engine changes:

    python frontend/scripts/make_fixtures.py
"""

import json
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[2] / "tests"))

import smf  # the test-suite SMF builder

from tonalscape.analysis import AnalysisConfig, analyze, serialize_bundle, deserialize_bundle
from tonalscape.dft import dft12, normalize_l1, parse_pc_text
from tonalscape.segmentation import Resolution
from tonalscape.trajectory import window_at_time

FIXTURES = Path(__file__).resolve().parents[1] / "tests" / "fixtures"

PROGRESSION = [  # one triad per quarter note: I IV V I vi ii V I in C
    (0, 4, 7), (5, 9, 0), (7, 11, 2), (0, 4, 7),
    (9, 0, 4), (2, 5, 9), (7, 11, 2), (0, 4, 7),
]


def fixture_midi() -> bytes:
    notes = []
    for i, triad in enumerate(PROGRESSION):
        for pc in triad:
            notes.append((i * 480, 60 + pc, 480, 80))
    return smf.simple_file(notes)


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    cfg = AnalysisConfig(resolution=Resolution.note_value(Fraction(1, 4)), window_len=2)
    text = serialize_bundle(analyze(fixture_midi(), cfg, name="progression.mid"))
    (FIXTURES / "bundle.json").write_text(text + "\n", encoding="utf-8")

    bundle = deserialize_bundle(text)
    duration = bundle.metadata["duration_seconds"]
    markers = []
    t = -0.25
    while t <= duration + 0.5:
        markers.append({"t": round(t, 4),
                        "index": window_at_time(bundle.trajectory, t)})
        t += 0.125
    (FIXTURES / "expected_markers.json").write_text(
        json.dumps(markers, indent=1) + "\n", encoding="utf-8")

    coeffs = dft12(normalize_l1(parse_pc_text("{0,4,8}")))
    pcset = {"coeffs": [[float(z.real), float(z.imag)] for z in coeffs.c[1:7]],
             "zero_weight": False}
    (FIXTURES / "pcset_aug.json").write_text(
        json.dumps(pcset) + "\n", encoding="utf-8")
    print(f"wrote fixtures to {FIXTURES}")


if __name__ == "__main__":
    main()

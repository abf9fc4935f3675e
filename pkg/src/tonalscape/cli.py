"""Command-line front end: batch analysis, SVG emission, and quick
pitch-class-set inspection.

Exit codes: 0 success, 1 usage error, 2 input error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from . import dft
from .analysis import DEFAULT_MAX_COLUMNS, AnalysisConfig, analyze, serialize_bundle
from .errors import TonalscapeError
from .render import RenderOptions, disk_filename, render_disk_svg, render_wavescape_svg, wavescape_filename
from .segmentation import WEIGHTINGS, Resolution

MAX_COLUMNS_ENV = "TONALSCAPE_MAX_COLUMNS"


def _resolution(text: str) -> Resolution:
    try:
        return Resolution.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _max_columns(args) -> int:
    if args.max_columns is not None:
        return args.max_columns
    env = os.environ.get(MAX_COLUMNS_ENV)
    if env is not None:
        value = int(env)  # ValueError surfaces as an input error
        if value < 1:
            raise ValueError(f"{MAX_COLUMNS_ENV} must be >= 1, got {value}")
        return value
    return DEFAULT_MAX_COLUMNS


def _config(args, window_len: int = 1) -> AnalysisConfig:
    return AnalysisConfig(
        resolution=args.resolution,
        window_len=window_len,
        wavescape_max_columns=_max_columns(args),
        include_percussion=not args.exclude_percussion,
        weighting=args.weighting,
    )


def _read_file(path: str) -> bytes:
    return Path(path).read_bytes()


def _add_common_input_flags(sub: argparse.ArgumentParser, with_window: bool):
    sub.add_argument("file", help="Standard MIDI File (format 0 or 1)")
    sub.add_argument("--resolution", type=_resolution, default=Resolution.note_value("1/8"),
                     help="segment duration: note value like 1/8 or seconds like 0.5s")
    if with_window:
        sub.add_argument("--window", type=int, default=1,
                         help="sliding-window length in segments")
    sub.add_argument("--max-columns", type=int, default=None,
                     help=f"wavescape segment cap (default {DEFAULT_MAX_COLUMNS}, "
                          f"or ${MAX_COLUMNS_ENV})")
    sub.add_argument("--exclude-percussion", action="store_true",
                     help="drop channel-10 notes")
    sub.add_argument("--weighting", choices=WEIGHTINGS, default="duration")


def _cmd_analyze(args) -> int:
    bundle = analyze(_read_file(args.file), _config(args, args.window),
                     name=Path(args.file).name)
    text = serialize_bundle(bundle)
    if args.out == "-":
        sys.stdout.write(text + "\n")
    else:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    return 0


def _cmd_wavescape(args) -> int:
    bundle = analyze(_read_file(args.file), _config(args), name=Path(args.file).name)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.file).stem
    opts = RenderOptions(width_px=args.width)
    ks = args.k or list(range(1, 7))
    for k in ks:
        svg = render_wavescape_svg(bundle.wavescapes[k - 1], opts)
        (out_dir / wavescape_filename(stem, k)).write_text(svg, encoding="utf-8")
    return 0


def _cmd_disks(args) -> int:
    bundle = analyze(_read_file(args.file), _config(args, args.window),
                     name=Path(args.file).name)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.file).stem
    opts = RenderOptions(width_px=args.width, show_prototypes=not args.no_prototypes)
    for k in range(1, 7):
        svg = render_disk_svg(k, bundle.trajectory, dft.prototype_positions(k), opts)
        (out_dir / disk_filename(stem, k)).write_text(svg, encoding="utf-8")
    return 0


def _cmd_set(args) -> int:
    coeffs = dft.dft12(dft.normalize_l1(dft.parse_pc_text(args.pcs)))
    print("k  magnitude  phase_deg")
    for k in range(1, 7):
        print(f"{k}  {coeffs.magnitude(k):.4f}     {math.degrees(coeffs.phase(k)):.4f}")
    return 0


def _cmd_serve(args) -> int:
    # imported lazily so the core package works without the web extra
    import uvicorn

    from .server import create_app

    app = create_app(static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tonalscape",
        description="Pitch-class DFT tonality analysis of MIDI files",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="write the full analysis bundle as JSON")
    _add_common_input_flags(p, with_window=True)
    p.add_argument("--out", default="-", help="output path, - for stdout")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("wavescape", help="emit wavescape SVGs")
    _add_common_input_flags(p, with_window=False)
    p.add_argument("-k", type=int, choices=range(1, 7), action="append",
                   help="coefficient index, repeatable (default: all six)")
    p.add_argument("--out-dir", default=".", help="directory for the SVG files")
    p.add_argument("--width", type=int, default=600)
    p.set_defaults(func=_cmd_wavescape)

    p = sub.add_parser("disks", help="emit coefficient-space SVGs")
    _add_common_input_flags(p, with_window=True)
    p.add_argument("--out-dir", default=".", help="directory for the SVG files")
    p.add_argument("--width", type=int, default=480)
    p.add_argument("--no-prototypes", action="store_true")
    p.set_defaults(func=_cmd_disks)

    p = sub.add_parser("set", help="inspect a pitch-class set, e.g. \"{0,4,7}\"")
    p.add_argument("pcs", help="pitch-class multiset text")
    p.set_defaults(func=_cmd_set)

    p = sub.add_parser("serve", help="serve the analysis API and the browser UI")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8507)
    p.add_argument("--static-dir", default=None,
                   help="built frontend directory to serve at /")
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help; we use 2 for
        # input errors, so usage problems map to 1
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except TonalscapeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

"""Local bridge between the engine and the browser UI.

Serves the bundle JSON contract over HTTP and keeps a small in-memory cache
of parsed files so changing the sliding-window length recomputes only the
trajectory, never re-parsing or re-segmenting. Everything runs on the user's
machine; nothing is persisted.
"""

from __future__ import annotations

import hashlib
import threading
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np
from fastapi import FastAPI, File, Form, UploadFile
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from . import dft
from .analysis import (
    AnalysisConfig,
    analyze,
    serialize_bundle,
    trajectory_payload,
    window_span,
)
from .errors import NoNotes, TonalscapeError, ZeroVector
from .midi import build_tempo_map, extract_notes, parse_smf
from .segmentation import Resolution, make_grid, segment_weights
from .trajectory import sliding_trajectory

_CACHE_LIMIT = 8


@dataclass
class _Prepared:
    """Parse/segment products reused across window-length changes."""

    vectors: np.ndarray
    grid: object
    tempo_map: object
    ppq: int


class _SegmentCache:
    def __init__(self, limit: int = _CACHE_LIMIT):
        self._data: OrderedDict[tuple, _Prepared] = OrderedDict()
        self._lock = threading.Lock()
        self._limit = limit

    def get(self, key: tuple) -> _Prepared | None:
        with self._lock:
            item = self._data.get(key)
            if item is not None:
                self._data.move_to_end(key)
            return item

    def put(self, key: tuple, value: _Prepared) -> None:
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self._limit:
                self._data.popitem(last=False)


def _coeff_pairs(values) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in values]


def _pcset_response(weights) -> dict:
    try:
        coeffs = dft.dft12(dft.normalize_l1(weights))
    except ZeroVector:
        return {"coeffs": [[0.0, 0.0]] * 6, "zero_weight": True}
    return {"coeffs": _coeff_pairs(coeffs.c[1:7]), "zero_weight": False}


def create_app(static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="tonalscape bridge", docs_url=None, redoc_url=None)
    cache = _SegmentCache()

    @app.exception_handler(TonalscapeError)
    async def _engine_error(_request, exc: TonalscapeError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    def _cache_key(content_hash: str, cfg: AnalysisConfig) -> tuple:
        return (content_hash, str(cfg.resolution), cfg.weighting, cfg.include_percussion)

    def _prepare(data: bytes, cfg: AnalysisConfig) -> _Prepared:
        doc = parse_smf(data)
        extraction = extract_notes(doc, include_percussion=cfg.include_percussion)
        notes = extraction.notes
        if not notes:
            raise NoNotes("file contains no usable note events")
        tempo_map = build_tempo_map(doc)
        span_end = max(n.onset_tick + n.duration_ticks for n in notes)
        grid = make_grid(span_end, cfg.resolution, tempo_map, doc.ppq)
        vectors = segment_weights(notes, grid, cfg.weighting)
        return _Prepared(vectors=vectors, grid=grid, tempo_map=tempo_map, ppq=doc.ppq)

    @app.get("/api/health")
    async def health():
        return {"status": "ok", "schema_version": "1"}

    @app.post("/api/analyze")
    def api_analyze(
        file: UploadFile = File(...),
        resolution: str = Form("1/8"),
        window_len: int = Form(1),
        max_columns: int = Form(250),
        include_percussion: bool = Form(True),
        weighting: str = Form("duration"),
    ):
        data = file.file.read()
        cfg = AnalysisConfig(
            resolution=Resolution.parse(resolution),
            window_len=window_len,
            wavescape_max_columns=max_columns,
            include_percussion=include_percussion,
            weighting=weighting,
        )
        bundle = analyze(data, cfg, name=file.filename or "")
        cache.put(_cache_key(hashlib.sha256(data).hexdigest(), cfg),
                  _prepare(data, cfg))
        return Response(content=serialize_bundle(bundle), media_type="application/json")

    @app.post("/api/trajectory")
    def api_trajectory(payload: dict):
        cfg = AnalysisConfig(
            resolution=Resolution.parse(payload.get("resolution", "1/8")),
            window_len=int(payload["window_len"]),
            include_percussion=bool(payload.get("include_percussion", True)),
            weighting=payload.get("weighting", "duration"),
        )
        key = _cache_key(payload["content_hash"], cfg)
        prepared = cache.get(key)
        if prepared is None:
            return JSONResponse(status_code=404,
                                content={"detail": "not cached; run /api/analyze again"})
        traj = sliding_trajectory(prepared.vectors, prepared.grid, prepared.tempo_map,
                                  prepared.ppq, cfg.window_len)
        return {
            "trajectory": trajectory_payload(traj),
            "window_span": window_span(cfg.resolution, cfg.window_len),
        }

    @app.post("/api/pcset")
    def api_pcset(payload: dict):
        return _pcset_response(dft.parse_pc_text(payload.get("text", "")))

    @app.post("/api/vector")
    def api_vector(payload: dict):
        weights = payload.get("weights")
        if not isinstance(weights, list) or len(weights) != 12:
            return JSONResponse(status_code=422,
                                content={"detail": "weights must be a 12-element list"})
        return _pcset_response(np.asarray(weights, dtype=float))

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app

import { App } from "./app.js";
import type { AnalyzeParams } from "./boundary.js";
import { HttpBoundary } from "./boundary.js";
import { parseBundle } from "./bundle.js";
import { toDevice } from "./disk_view.js";
import { MidiInput } from "./midi_input.js";
import { PlaybackClock } from "./playback.js";

const boundary = new HttpBoundary("");
const app = new App(boundary);
const clock = new PlaybackClock();

const el = <T extends HTMLElement>(id: string): T => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
};

const fileInput = el<HTMLInputElement>("file-input");
const resolutionInput = el<HTMLInputElement>("resolution");
const windowInput = el<HTMLInputElement>("window-len");
const percussionInput = el<HTMLInputElement>("include-percussion");
const prototypesInput = el<HTMLInputElement>("show-prototypes");
const setInput = el<HTMLInputElement>("set-input");
const midiButton = el<HTMLButtonElement>("midi-button");
const clearButton = el<HTMLButtonElement>("clear-overlay");
const playButton = el<HTMLButtonElement>("play-pause");
const seekInput = el<HTMLInputElement>("seek");
const timeLabel = el<HTMLSpanElement>("time-label");
const statusLabel = el<HTMLSpanElement>("status");
const errorBanner = el<HTMLDivElement>("error-banner");
const wavescapePanel = el<HTMLDivElement>("wavescape-panel");
const diskPanel = el<HTMLDivElement>("disk-panel");

function params(): AnalyzeParams {
  return {
    resolution: resolutionInput.value.trim() || "1/8",
    windowLen: Math.max(1, Number(windowInput.value) || 1),
    includePercussion: percussionInput.checked,
  };
}

function showError(): void {
  const message = app.state.error;
  errorBanner.textContent = message ?? "";
  errorBanner.style.display = message ? "block" : "none";
}

function renderAll(): void {
  const surfaces = app.render();
  wavescapePanel.innerHTML = surfaces.wavescapes
    .map((svg, i) => `<figure><figcaption>k=${i + 1}</figcaption>${svg}</figure>`)
    .join("");
  diskPanel.innerHTML = surfaces.disks.map((svg) => `<div class="disk-box">${svg}</div>`).join("");
  const meta = app.state.bundle?.metadata;
  if (meta) {
    const span = meta.window_span;
    statusLabel.textContent =
      `${meta.name}: ${meta.n_notes} notes, ${meta.n_segments} segments, ` +
      `window = ${span.value} ${span.unit.replace("_", " ")}`;
    seekInput.max = String(meta.duration_seconds);
  }
  showError();
}

/** Move the white dots without rebuilding the SVG documents. */
function updateMarkers(): void {
  const bundle = app.state.bundle;
  const index = app.state.markerIndex;
  if (!bundle || index === null) return;
  const point = bundle.trajectory.points[index];
  if (!point) return;
  diskPanel.querySelectorAll<SVGCircleElement>("circle.marker").forEach((marker, i) => {
    const { x, y } = toDevice(point.coeffs[i], app.diskWidth);
    marker.setAttribute("cx", x.toFixed(2));
    marker.setAttribute("cy", y.toFixed(2));
  });
  timeLabel.textContent = `${app.state.playbackSeconds.toFixed(2)} s`;
  seekInput.value = String(app.state.playbackSeconds);
}

fileInput.addEventListener("change", () => {
  const file = fileInput.files?.[0];
  if (!file) return;
  void (async () => {
    if (file.name.endsWith(".json")) {
      try {
        app.loadBundle(parseBundle(await file.text()));
      } catch (err) {
        app.state.error = `bundle load failed: ${(err as Error).message}`;
      }
    } else {
      await app.loadFile(file, file.name, params());
    }
    if (app.state.bundle) {
      windowInput.value = String(app.state.bundle.config.window_len);
      clock.seek(0);
    }
    renderAll();
    updateMarkers();
  })();
});

windowInput.addEventListener("change", () => {
  void app.setWindowLen(Math.max(1, Number(windowInput.value) || 1), params()).then(() => {
    renderAll();
    updateMarkers();
  });
});

resolutionInput.addEventListener("change", () => {
  const file = fileInput.files?.[0];
  if (!file || file.name.endsWith(".json")) return;
  void app.loadFile(file, file.name, params()).then(() => {
    renderAll();
    updateMarkers();
  });
});

prototypesInput.addEventListener("change", () => {
  app.state.showPrototypes = prototypesInput.checked;
  renderAll();
  updateMarkers();
});

percussionInput.addEventListener("change", () => {
  const file = fileInput.files?.[0];
  if (!file || file.name.endsWith(".json")) return;
  void app.loadFile(file, file.name, params()).then(() => {
    renderAll();
    updateMarkers();
  });
});

setInput.addEventListener("change", () => {
  void app.setOverlayFromText(setInput.value).then(() => {
    renderAll();
    updateMarkers();
  });
});

clearButton.addEventListener("click", () => {
  setInput.value = "";
  app.clearOverlay();
  renderAll();
  updateMarkers();
});

const midi = new MidiInput((held) => {
  void app.setOverlayFromHeldPitches(held).then(() => {
    renderAll();
    updateMarkers();
  });
});

midiButton.addEventListener("click", () => {
  void midi.connect().then((ok) => {
    midiButton.textContent = ok ? "MIDI input: on" : "MIDI input: unavailable";
    midiButton.disabled = ok;
  });
});

playButton.addEventListener("click", () => {
  if (clock.playing) {
    clock.pause();
    playButton.textContent = "Play";
  } else {
    if (clock.position() >= app.durationSeconds) clock.seek(0);
    clock.play();
    playButton.textContent = "Pause";
  }
  app.state.playing = clock.playing;
});

seekInput.addEventListener("input", () => {
  clock.seek(Number(seekInput.value));
  app.setPlayback(clock.position());
  updateMarkers();
});

function tick(): void {
  if (clock.playing) {
    const t = clock.position();
    if (t >= app.durationSeconds) {
      clock.pause();
      clock.seek(app.durationSeconds);
      playButton.textContent = "Play";
    }
    app.setPlayback(clock.position());
    updateMarkers();
  }
  requestAnimationFrame(tick);
}

requestAnimationFrame(tick);
renderAll();

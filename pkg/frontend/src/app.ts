import type { AnalyzeParams, EngineBoundary } from "./boundary.js";
import { NotCachedError } from "./boundary.js";
import { diskSvg } from "./disk_view.js";
import { windowAtTime } from "./timing.js";
import type { Bundle, ComplexPair } from "./types.js";
import { wavescapeSvg } from "./wavescape_view.js";

export interface UiState {
  bundle: Bundle | null;
  playbackSeconds: number;
  playing: boolean;
  markerIndex: number | null;
  /** live/manual input coefficients 1..6, or null when no keys are held */
  overlay: ComplexPair[] | null;
  showPrototypes: boolean;
  error: string | null;
}

export interface Surfaces {
  wavescapes: string[];
  disks: string[];
}

/**
 * View-model of the whole page. Owns no coefficient math: every complex value
 * comes from the loaded bundle or an engine boundary response. Rendering is a
 * pure function of the state so tests can drive it without a DOM.
 */
export class App {
  state: UiState = {
    bundle: null,
    playbackSeconds: 0,
    playing: false,
    markerIndex: null,
    overlay: null,
    showPrototypes: true,
    error: null,
  };

  private lastFile: { blob: Blob; name: string } | null = null;

  constructor(
    private boundary: EngineBoundary,
    public wavescapeWidth = 280,
    public diskWidth = 220,
  ) {}

  /** Analyze a user-selected MIDI file; on failure keep the previous state. */
  async loadFile(blob: Blob, filename: string, params: AnalyzeParams): Promise<void> {
    try {
      const bundle = await this.boundary.analyze(blob, filename, params);
      this.lastFile = { blob, name: filename };
      this.loadBundle(bundle);
    } catch (err) {
      this.state.error = `analysis failed: ${(err as Error).message}`;
    }
  }

  /** Install an already-serialized bundle (e.g. produced by the CLI). */
  loadBundle(bundle: Bundle): void {
    this.state.bundle = bundle;
    this.state.error = null;
    this.state.playing = false;
    this.setPlayback(0);
  }

  get durationSeconds(): number {
    return this.state.bundle?.metadata.duration_seconds ?? 0;
  }

  /** Move the playback position; the marker follows the nearest window center. */
  setPlayback(tSeconds: number): void {
    const bundle = this.state.bundle;
    if (!bundle) return;
    const t = Math.min(Math.max(tSeconds, 0), this.durationSeconds);
    this.state.playbackSeconds = t;
    this.state.markerIndex =
      bundle.trajectory.points.length > 0 ? windowAtTime(bundle.trajectory, t) : null;
  }

  /** Swap the sliding-window length, reusing the bundle's wavescapes.
   * The engine recomputes only the trajectory (from its parse cache); a cache
   * miss falls back to a full re-analysis of the retained file. */
  async setWindowLen(windowLen: number, params: AnalyzeParams): Promise<void> {
    const bundle = this.state.bundle;
    if (!bundle) return;
    const request = { ...params, windowLen };
    try {
      const result = await this.boundary.trajectory(bundle.metadata.content_hash, request);
      bundle.trajectory = result.trajectory;
      bundle.config.window_len = windowLen;
      bundle.metadata.window_span = result.window_span;
      this.state.error = null;
      this.setPlayback(this.state.playbackSeconds);
    } catch (err) {
      if (err instanceof NotCachedError && this.lastFile) {
        await this.loadFile(this.lastFile.blob, this.lastFile.name, request);
        return;
      }
      this.state.error = `window change failed: ${(err as Error).message}`;
    }
  }

  /** Manual pitch-class set entry; the engine does the transform. */
  async setOverlayFromText(text: string): Promise<void> {
    if (text.trim() === "") {
      this.clearOverlay();
      return;
    }
    try {
      const result = await this.boundary.pcset(text);
      this.state.overlay = result.zero_weight ? null : (result.coeffs as ComplexPair[]);
      this.state.error = null;
    } catch (err) {
      this.state.error = `set input failed: ${(err as Error).message}`;
    }
  }

  /** Live MIDI input: currently held pitches, weight 1 each. */
  async setOverlayFromHeldPitches(pitches: Iterable<number>): Promise<void> {
    const weights = new Array<number>(12).fill(0);
    let any = false;
    for (const p of pitches) {
      weights[((p % 12) + 12) % 12] += 1;
      any = true;
    }
    if (!any) {
      this.clearOverlay();
      return;
    }
    try {
      const result = await this.boundary.vector(weights);
      this.state.overlay = result.zero_weight ? null : (result.coeffs as ComplexPair[]);
    } catch (err) {
      this.state.error = `live input failed: ${(err as Error).message}`;
    }
  }

  clearOverlay(): void {
    this.state.overlay = null;
  }

  /** The twelve visualization surfaces: six wavescapes and six disks. */
  render(): Surfaces {
    const bundle = this.state.bundle;
    if (!bundle) return { wavescapes: [], disks: [] };
    const wavescapes = bundle.wavescapes.map((m) => wavescapeSvg(m, this.wavescapeWidth));
    const disks = [];
    for (let k = 1; k <= 6; k++) {
      disks.push(
        diskSvg({
          k,
          width: this.diskWidth,
          prototypes: bundle.prototypes[String(k)] ?? [],
          points: bundle.trajectory.points,
          markerIndex: this.state.markerIndex,
          overlay: this.state.overlay ? this.state.overlay[k - 1] : null,
          showPrototypes: this.state.showPrototypes,
        }),
      );
    }
    return { wavescapes, disks };
  }
}

import { parseBundle } from "./bundle.js";
import type { Bundle, OverlayResponse, TrajectoryPayload, WindowSpan } from "./types.js";

export interface AnalyzeParams {
  resolution: string;
  windowLen: number;
  maxColumns?: number;
  includePercussion?: boolean;
  weighting?: string;
}

export interface TrajectoryResult {
  trajectory: TrajectoryPayload;
  window_span: WindowSpan;
}

/**
 * The UI's only source of coefficient values: the engine behind the serialized
 * bundle contract. Tests substitute a canned implementation.
 */
export interface EngineBoundary {
  analyze(file: Blob, filename: string, params: AnalyzeParams): Promise<Bundle>;
  trajectory(contentHash: string, params: AnalyzeParams): Promise<TrajectoryResult>;
  pcset(text: string): Promise<OverlayResponse>;
  vector(weights: number[]): Promise<OverlayResponse>;
}

export class NotCachedError extends Error {}

async function fail(response: Response): Promise<never> {
  let detail = `${response.status}`;
  try {
    const body = (await response.json()) as { detail?: string };
    if (body.detail) detail = body.detail;
  } catch {
    // keep the status code
  }
  if (response.status === 404) throw new NotCachedError(detail);
  throw new Error(detail);
}

/** Talks to the local bridge (`tonalscape serve`). */
export class HttpBoundary implements EngineBoundary {
  constructor(private base: string = "") {}

  async analyze(file: Blob, filename: string, params: AnalyzeParams): Promise<Bundle> {
    const form = new FormData();
    form.append("file", file, filename);
    form.append("resolution", params.resolution);
    form.append("window_len", String(params.windowLen));
    if (params.maxColumns !== undefined) form.append("max_columns", String(params.maxColumns));
    if (params.includePercussion !== undefined) {
      form.append("include_percussion", String(params.includePercussion));
    }
    if (params.weighting) form.append("weighting", params.weighting);
    const response = await fetch(`${this.base}/api/analyze`, { method: "POST", body: form });
    if (!response.ok) await fail(response);
    return parseBundle(await response.text());
  }

  async trajectory(contentHash: string, params: AnalyzeParams): Promise<TrajectoryResult> {
    const response = await fetch(`${this.base}/api/trajectory`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        content_hash: contentHash,
        resolution: params.resolution,
        window_len: params.windowLen,
        include_percussion: params.includePercussion ?? true,
        weighting: params.weighting ?? "duration",
      }),
    });
    if (!response.ok) await fail(response);
    return (await response.json()) as TrajectoryResult;
  }

  async pcset(text: string): Promise<OverlayResponse> {
    const response = await fetch(`${this.base}/api/pcset`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text }),
    });
    if (!response.ok) await fail(response);
    return (await response.json()) as OverlayResponse;
  }

  async vector(weights: number[]): Promise<OverlayResponse> {
    const response = await fetch(`${this.base}/api/vector`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ weights }),
    });
    if (!response.ok) await fail(response);
    return (await response.json()) as OverlayResponse;
  }
}

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { AnalyzeParams, EngineBoundary, TrajectoryResult } from "../src/boundary.js";
import { parseBundle } from "../src/bundle.js";
import type { Bundle, OverlayResponse } from "../src/types.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixtureText(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf-8");
}

export function fixtureBundle(): Bundle {
  return parseBundle(fixtureText("bundle.json"));
}

export function expectedMarkers(): { t: number; index: number }[] {
  return JSON.parse(fixtureText("expected_markers.json"));
}

export function augPcsetResponse(): OverlayResponse {
  return JSON.parse(fixtureText("pcset_aug.json"));
}

/** Canned engine: serves the fixtures, records calls, does no math. */
export class FakeBoundary implements EngineBoundary {
  calls: string[] = [];

  async analyze(_file: Blob, _filename: string, _params: AnalyzeParams): Promise<Bundle> {
    this.calls.push("analyze");
    return fixtureBundle();
  }

  async trajectory(_hash: string, params: AnalyzeParams): Promise<TrajectoryResult> {
    this.calls.push(`trajectory:${params.windowLen}`);
    const bundle = fixtureBundle();
    if (params.windowLen > bundle.metadata.n_segments) {
      throw new Error(`window of ${params.windowLen} segments exceeds the available`);
    }
    // a real engine recomputes; the fake only reuses the fixture's trajectory
    return {
      trajectory: { ...bundle.trajectory, window_len: params.windowLen },
      window_span: { value: params.windowLen * 0.25, unit: "whole_notes" },
    };
  }

  async pcset(text: string): Promise<OverlayResponse> {
    this.calls.push(`pcset:${text}`);
    if (text.replace(/\s/g, "") === "{0,4,8}") return augPcsetResponse();
    throw new Error(`no canned response for ${text}`);
  }

  async vector(weights: number[]): Promise<OverlayResponse> {
    this.calls.push(`vector:${weights.join(",")}`);
    // the C-E-G test holds pitch classes 0, 4, 7 — reuse is not possible, so
    // canned: the caller only checks that the overlay originates here
    return augPcsetResponse();
  }
}

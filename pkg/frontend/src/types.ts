/** Shapes of the engine's serialized analysis bundle (schema version "1"). */

export type ComplexPair = [number, number];

export interface WindowSpan {
  value: number;
  unit: "whole_notes" | "seconds";
}

export interface BundleMetadata {
  name: string;
  format: number;
  ppq: number;
  duration_seconds: number;
  n_segments: number;
  n_wavescape_columns: number;
  n_notes: number;
  dangling_note_offs: number;
  unterminated_notes: number;
  content_hash: string;
  window_span: WindowSpan;
}

export interface ResolutionPayload {
  unit: "note_value" | "seconds";
  value: string | number;
}

export interface BundleConfig {
  resolution: ResolutionPayload;
  window_len: number;
  wavescape_max_columns: number;
  include_percussion: boolean;
  weighting: string;
}

export interface PrototypePayload {
  label: string;
  pcs: number[];
  position: ComplexPair;
}

export interface WavescapePayload {
  k: number;
  n: number;
  /** row h holds the n-h windows of length h+1; the last row is the tip */
  rows: ComplexPair[][];
  zero_weight?: [number, number][];
}

export interface TrajectoryPointPayload {
  window_start: number;
  time_center_seconds: number;
  coeffs: ComplexPair[];
  zero_weight?: boolean;
}

export interface TrajectoryPayload {
  window_len: number;
  segment_seconds: number[];
  points: TrajectoryPointPayload[];
}

export interface Bundle {
  schema_version: string;
  metadata: BundleMetadata;
  config: BundleConfig;
  prototypes: Record<string, PrototypePayload[]>;
  segments: { coeffs: ComplexPair[][]; zero_weight?: number[] };
  wavescapes: WavescapePayload[];
  trajectory: TrajectoryPayload;
}

/** Response of the manual/live input endpoints: coefficients 1..6. */
export interface OverlayResponse {
  coeffs: ComplexPair[];
  zero_weight: boolean;
}

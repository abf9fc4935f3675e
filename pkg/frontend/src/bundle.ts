import type { Bundle } from "./types.js";

export const SCHEMA_VERSION = "1";

/** Parse and sanity-check a serialized bundle. Throws on shape mismatches. */
export function parseBundle(text: string): Bundle {
  let obj: unknown;
  try {
    obj = JSON.parse(text);
  } catch {
    throw new Error("not valid JSON");
  }
  const bundle = obj as Bundle;
  if (bundle.schema_version !== SCHEMA_VERSION) {
    throw new Error(`unsupported schema version ${String(bundle.schema_version)}`);
  }
  if (!Array.isArray(bundle.wavescapes) || bundle.wavescapes.length !== 6) {
    throw new Error("bundle must carry exactly six wavescapes");
  }
  for (const m of bundle.wavescapes) {
    if (m.rows.length !== m.n) {
      throw new Error(`wavescape ${m.k} has ${m.rows.length} rows for n=${m.n}`);
    }
    m.rows.forEach((row, h) => {
      if (row.length !== m.n - h) {
        throw new Error(`wavescape ${m.k} row ${h} has ${row.length} cells`);
      }
    });
  }
  for (const p of bundle.trajectory.points) {
    if (p.coeffs.length !== 6) {
      throw new Error("trajectory points must carry six coefficients");
    }
  }
  for (let k = 1; k <= 6; k++) {
    if (!Array.isArray(bundle.prototypes[String(k)])) {
      throw new Error(`missing prototype catalog for coefficient ${k}`);
    }
  }
  return bundle;
}

export function magnitude([re, im]: [number, number]): number {
  return Math.hypot(re, im);
}

export function phase([re, im]: [number, number]): number {
  return re === 0 && im === 0 ? 0 : Math.atan2(im, re);
}

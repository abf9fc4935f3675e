import { magnitude, phase } from "./bundle.js";
import type { ComplexPair } from "./types.js";

export interface Rgba {
  r: number;
  g: number;
  b: number;
  a: number; // 0..255
}

const halfUp = (x: number) => Math.floor(x + 0.5);

function hsvToRgb(hue: number): [number, number, number] {
  // full saturation and value; hue in turns [0, 1)
  const h = ((hue % 1) + 1) % 1;
  const i = Math.floor(h * 6);
  const f = h * 6 - i;
  switch (i % 6) {
    case 0: return [1, f, 0];
    case 1: return [1 - f, 1, 0];
    case 2: return [0, 1, f];
    case 3: return [0, 1 - f, 1];
    case 4: return [f, 0, 1];
    default: return [1, 0, 1 - f];
  }
}

/**
 * Same wheel as the engine: phase 0 is red, hue runs counterclockwise,
 * magnitude maps linearly to opacity.
 */
export function phaseColor(z: ComplexPair): Rgba {
  const turns = ((phase(z) / (2 * Math.PI)) % 1 + 1) % 1;
  const [r, g, b] = hsvToRgb(turns);
  const alpha = Math.min(Math.max(magnitude(z), 0), 1);
  return { r: halfUp(r * 255), g: halfUp(g * 255), b: halfUp(b * 255), a: halfUp(alpha * 255) };
}

export function hexColor({ r, g, b }: Rgba): string {
  const part = (v: number) => v.toString(16).padStart(2, "0");
  return `#${part(r)}${part(g)}${part(b)}`;
}

import { hexColor, phaseColor } from "./color.js";
import type { WavescapePayload } from "./types.js";

const SQRT3 = Math.sqrt(3);

const fmt = (x: number) => {
  const s = x.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
};

/**
 * Triangular plot of one coefficient: cell (h, i) is a diamond centered over
 * the midpoint of its window, row height 1/n, apex cell topmost. Same layout
 * as the engine's SVG export.
 */
export function wavescapeSvg(m: WavescapePayload, width: number): string {
  const height = (width * SQRT3) / 2;
  const n = m.n;
  const cellW = width / n;
  const cellH = height / n;
  const zero = new Set((m.zero_weight ?? []).map(([h, i]) => `${h},${i}`));
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" class="wavescape" data-k="${m.k}" ` +
      `viewBox="0 0 ${fmt(width)} ${fmt(height)}">`,
  ];
  for (let h = 0; h < n; h++) {
    for (let i = 0; i < n - h; i++) {
      const cx = ((i + (h + 1) / 2) / n) * width;
      const yBottom = height - h * cellH;
      const yMid = height - (h + 0.5) * cellH;
      const yTop = height - (h + 1) * cellH;
      const points =
        `${fmt(cx)},${fmt(yBottom)} ${fmt(cx - cellW / 2)},${fmt(yMid)} ` +
        `${fmt(cx)},${fmt(yTop)} ${fmt(cx + cellW / 2)},${fmt(yMid)}`;
      let fill = "#000000";
      let alpha = 0;
      if (!zero.has(`${h},${i}`)) {
        const rgba = phaseColor(m.rows[h][i]);
        fill = hexColor(rgba);
        alpha = rgba.a;
      }
      parts.push(
        `<polygon class="cell" points="${points}" fill="${fill}" ` +
          `fill-opacity="${(alpha / 255).toFixed(4)}"/>`,
      );
    }
  }
  parts.push("</svg>");
  return parts.join("\n");
}

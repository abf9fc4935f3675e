import { hexColor, phaseColor } from "./color.js";
import type { ComplexPair, PrototypePayload, TrajectoryPointPayload } from "./types.js";

const RIM_SEGMENTS = 120;

const fmt = (x: number) => {
  const s = x.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
};

export interface DiskOptions {
  k: number;
  width: number;
  prototypes: PrototypePayload[];
  points: TrajectoryPointPayload[];
  markerIndex: number | null;
  overlay: ComplexPair | null;
  showPrototypes: boolean;
}

export function diskGeometry(width: number): { cx: number; cy: number; radius: number } {
  return { cx: width / 2, cy: width / 2, radius: width / 2 - Math.max(18, width * 0.08) };
}

/** Unit-disk value to device coordinates; +imag is up, magnitudes clamp to the rim. */
export function toDevice(z: ComplexPair, width: number): { x: number; y: number } {
  const { cx, cy, radius } = diskGeometry(width);
  let [re, im] = z;
  const mag = Math.hypot(re, im);
  if (mag > 1) {
    re /= mag;
    im /= mag;
  }
  return { x: cx + re * radius, y: cy - im * radius };
}

/** One Fourier coefficient space: hue rim, prototype labels, trajectory path,
 * white playback dot, and the manual/live input overlay dot. */
export function diskSvg(opts: DiskOptions): string {
  const { k, width, prototypes, points, markerIndex, overlay, showPrototypes } = opts;
  const { cx, cy, radius } = diskGeometry(width);
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" class="disk" data-k="${k}" ` +
      `viewBox="0 0 ${fmt(width)} ${fmt(width)}">`,
  ];
  const rimWidth = Math.max(2, width * 0.012);
  for (let s = 0; s < RIM_SEGMENTS; s++) {
    const a0 = (2 * Math.PI * s) / RIM_SEGMENTS;
    const a1 = (2 * Math.PI * (s + 1)) / RIM_SEGMENTS;
    const mid = (a0 + a1) / 2;
    const color = hexColor(phaseColor([Math.cos(mid), Math.sin(mid)]));
    parts.push(
      `<line x1="${fmt(cx + radius * Math.cos(a0))}" y1="${fmt(cy - radius * Math.sin(a0))}" ` +
        `x2="${fmt(cx + radius * Math.cos(a1))}" y2="${fmt(cy - radius * Math.sin(a1))}" ` +
        `stroke="${color}" stroke-width="${fmt(rimWidth)}" stroke-linecap="round"/>`,
    );
  }
  parts.push(
    `<circle class="outline" cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(radius)}" ` +
      `fill="none" stroke="#888888" stroke-width="0.5"/>`,
  );
  parts.push(
    `<text class="disk-label" x="8" y="${fmt(8 + 11)}" font-size="11">k=${k}</text>`,
  );

  if (showPrototypes) {
    for (const proto of prototypes) {
      const { x, y } = toDevice(proto.position, width);
      parts.push(
        `<text class="prototype" x="${fmt(x)}" y="${fmt(y)}" text-anchor="middle" ` +
          `dominant-baseline="middle" font-size="11">${escapeXml(proto.label)}</text>`,
      );
    }
  }

  const visible = points.filter((p) => !p.zero_weight);
  if (visible.length > 0) {
    const path = visible
      .map((p) => {
        const { x, y } = toDevice(p.coeffs[k - 1], width);
        return `${fmt(x)},${fmt(y)}`;
      })
      .join(" ");
    parts.push(
      `<polyline class="trajectory" points="${path}" fill="none" ` +
        `stroke="#555555" stroke-width="1" stroke-opacity="0.7"/>`,
    );
  }

  if (markerIndex !== null && points.length > 0) {
    const idx = Math.min(Math.max(markerIndex, 0), points.length - 1);
    const { x, y } = toDevice(points[idx].coeffs[k - 1], width);
    parts.push(
      `<circle class="marker" cx="${fmt(x)}" cy="${fmt(y)}" r="${fmt(Math.max(3, width * 0.01))}" ` +
        `fill="#ffffff" stroke="#000000" stroke-width="1"/>`,
    );
  }

  if (overlay !== null) {
    const { x, y } = toDevice(overlay, width);
    parts.push(
      `<circle class="overlay" cx="${fmt(x)}" cy="${fmt(y)}" r="${fmt(Math.max(4, width * 0.013))}" ` +
        `fill="#222222" stroke="#ffffff" stroke-width="1.5"/>`,
    );
  }

  parts.push("</svg>");
  return parts.join("\n");
}

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

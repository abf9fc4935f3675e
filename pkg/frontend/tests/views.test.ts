import { describe, expect, it } from "vitest";

import { phaseColor, hexColor } from "../src/color.js";
import { diskGeometry, diskSvg, toDevice } from "../src/disk_view.js";
import { wavescapeSvg } from "../src/wavescape_view.js";
import { fixtureBundle } from "./helpers.js";

describe("color wheel", () => {
  it("is red at phase zero, invisible at zero magnitude", () => {
    expect(phaseColor([1, 0])).toEqual({ r: 255, g: 0, b: 0, a: 255 });
    expect(phaseColor([0, 0]).a).toBe(0);
  });

  it("matches the engine's quarter-turn color", () => {
    // engine phase_color(0.5i) == (128, 255, 0, 128)
    expect(phaseColor([0, 0.5])).toEqual({ r: 128, g: 255, b: 0, a: 128 });
  });

  it("hex formatting", () => {
    expect(hexColor({ r: 255, g: 0, b: 10, a: 0 })).toBe("#ff000a");
  });
});

describe("wavescape view", () => {
  it("draws n(n+1)/2 cells", () => {
    const m = fixtureBundle().wavescapes[0];
    const svg = wavescapeSvg(m, 280);
    const count = (svg.match(/class="cell"/g) ?? []).length;
    expect(count).toBe((m.n * (m.n + 1)) / 2);
  });

  it("marks zero-weight cells transparent", () => {
    const m = fixtureBundle().wavescapes[0];
    const withGap = { ...m, zero_weight: [[0, 0]] as [number, number][] };
    const svg = wavescapeSvg(withGap, 280);
    expect(svg).toContain('fill-opacity="0.0000"');
  });
});

describe("disk view", () => {
  const bundle = fixtureBundle();

  it("renders rim, trajectory, prototypes, and marker", () => {
    const svg = diskSvg({
      k: 5,
      width: 220,
      prototypes: bundle.prototypes["5"],
      points: bundle.trajectory.points,
      markerIndex: 0,
      overlay: null,
      showPrototypes: true,
    });
    expect(svg).toContain('class="trajectory"');
    expect(svg).toContain('class="marker"');
    expect((svg.match(/class="prototype"/g) ?? []).length).toBe(24);
  });

  it("hides prototypes on request", () => {
    const svg = diskSvg({
      k: 3,
      width: 220,
      prototypes: bundle.prototypes["3"],
      points: [],
      markerIndex: null,
      overlay: null,
      showPrototypes: false,
    });
    expect(svg).not.toContain('class="prototype"');
    expect(svg).not.toContain("polyline");
  });

  it("maps +real to the right and +imag up, clamped to the rim", () => {
    const { cx, cy, radius } = diskGeometry(220);
    expect(toDevice([1, 0], 220)).toEqual({ x: cx + radius, y: cy });
    expect(toDevice([0, 1], 220)).toEqual({ x: cx, y: cy - radius });
    const clamped = toDevice([2, 0], 220);
    expect(clamped.x).toBeCloseTo(cx + radius, 6);
  });

  it("draws the overlay dot where the engine put it", () => {
    const svg = diskSvg({
      k: 3,
      width: 220,
      prototypes: [],
      points: [],
      markerIndex: null,
      overlay: [1, 0],
      showPrototypes: false,
    });
    const { cx, cy, radius } = diskGeometry(220);
    const match = svg.match(/class="overlay" cx="([0-9.]+)" cy="([0-9.]+)"/);
    expect(match).not.toBeNull();
    expect(Number(match![1])).toBeCloseTo(cx + radius, 2);
    expect(Number(match![2])).toBeCloseTo(cy, 2);
  });
});

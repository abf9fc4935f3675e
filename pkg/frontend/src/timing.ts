import type { TrajectoryPayload } from "./types.js";

/**
 * Index of the trajectory point whose time center is nearest to t.
 * Ties break to the earlier index; out-of-range times clamp to the ends.
 * Mirrors the engine's playback rule; the fixture tests pin the parity.
 */
export function windowAtTime(traj: TrajectoryPayload, tSeconds: number): number {
  const points = traj.points;
  if (points.length === 0) {
    throw new Error("trajectory has no points");
  }
  let lo = 0;
  let hi = points.length; // first index with center >= t
  while (lo < hi) {
    const mid = (lo + hi) >> 1;
    if (points[mid].time_center_seconds < tSeconds) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo === 0) return 0;
  if (lo === points.length) return points.length - 1;
  const before = points[lo - 1].time_center_seconds;
  const after = points[lo].time_center_seconds;
  return tSeconds - before <= after - tSeconds ? lo - 1 : lo;
}

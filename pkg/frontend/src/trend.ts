import type { TrendPoint } from "./controller.js";

export interface TrendSeries {
  /** Pixel-space polylines for each metric, points ordered by k. */
  ne: Array<[number, number]>;
  stress: Array<[number, number]>;
  cd: Array<[number, number]>;
}

/**
 * Scale trend points into a width x height box: x positions by k, each
 * metric normalized to its own [min, max] so all three trends share the
 * vertical space.  Display-only; the underlying numbers are untouched.
 */
export function trendSeries(points: TrendPoint[], width: number, height: number): TrendSeries {
  const empty: TrendSeries = { ne: [], stress: [], cd: [] };
  if (points.length === 0) return empty;
  const ks = points.map((p) => p.k);
  const kmin = Math.min(...ks);
  const kspan = Math.max(...ks) - kmin;
  const x = (k: number) => (kspan === 0 ? width / 2 : ((k - kmin) / kspan) * width);
  const channel = (pick: (p: TrendPoint) => number): Array<[number, number]> => {
    const values = points.map(pick);
    const lo = Math.min(...values);
    const span = Math.max(...values) - lo;
    return points.map((p, i): [number, number] => [
      x(p.k),
      span === 0 ? height / 2 : height - ((values[i] - lo) / span) * height,
    ]);
  };
  return {
    ne: channel((p) => p.ne),
    stress: channel((p) => p.stress),
    cd: channel((p) => p.cd),
  };
}

/**
 * Edge colormap, kept numerically identical to the server's SVG renderer:
 * an edge drawn at exactly its target length is green, compressed edges
 * shade toward red, stretched ones toward blue.
 */

export type Rgb = [number, number, number];

/** Piecewise-linear jet anchors at t = 0, 0.25, 0.5, 0.75, 1. */
const JET_STOPS: Array<[number, Rgb]> = [
  [0.0, [0, 0, 255]],
  [0.25, [0, 255, 255]],
  [0.5, [0, 255, 0]],
  [0.75, [255, 255, 0]],
  [1.0, [255, 0, 0]],
];

/** Round half to even, matching Python's round() used by the server. */
export function roundHalfEven(x: number): number {
  const floor = Math.floor(x);
  const frac = x - floor;
  if (frac > 0.5) return floor + 1;
  if (frac < 0.5) return floor;
  return floor % 2 === 0 ? floor : floor + 1;
}

/** Jet colormap value at t, clamped to [0, 1], as 8-bit RGB. */
export function jetColor(t: number): Rgb {
  const tc = Math.min(1, Math.max(0, t));
  for (let i = 0; i + 1 < JET_STOPS.length; i++) {
    const [t0, c0] = JET_STOPS[i];
    const [t1, c1] = JET_STOPS[i + 1];
    if (tc <= t1) {
      const f = (tc - t0) / (t1 - t0);
      return [
        roundHalfEven(c0[0] + f * (c1[0] - c0[0])),
        roundHalfEven(c0[1] + f * (c1[1] - c0[1])),
        roundHalfEven(c0[2] + f * (c1[2] - c0[2])),
      ];
    }
  }
  return JET_STOPS[JET_STOPS.length - 1][1];
}

/**
 * Color for an edge drawn at scaledLength times its ideal length: 1 maps
 * to green, 0 to red, 2 or more to blue.
 */
export function edgeColor(scaledLength: number): Rgb {
  if (scaledLength < 0) {
    throw new Error("scaledLength must be non-negative");
  }
  return jetColor((2 - scaledLength) / 2);
}

export function hexColor(rgb: Rgb): string {
  return "#" + rgb.map((c) => c.toString(16).padStart(2, "0")).join("");
}

import type { JobParams } from "./types.js";

/** Server-side defaults, spelled out so the params hash is always complete. */
export const DEFAULT_PARAMS: JobParams = {
  k: 16,
  c: 10,
  s: 0.1,
  alpha: 0.2,
  max_epochs: 60,
  move_tol: 1e-7,
  seed: 0,
  radius: 2.0,
};

/**
 * Canonical cache key for one embedding request.
 *
 * Every field participates, so two requests collide only when the server
 * would compute the identical job; k alone is not enough once seeds or
 * alpha are edited.
 */
export function paramsKey(graphId: string, params: JobParams): string {
  const ordered = Object.keys(params).sort();
  const body = ordered.map((key) => {
    const value = params[key as keyof JobParams];
    return `${JSON.stringify(key)}:${JSON.stringify(value)}`;
  });
  return `${graphId}|{${body.join(",")}}`;
}

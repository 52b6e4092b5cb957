/**
 * The metric panel must show the server's numbers byte for byte, and a
 * JSON.parse round trip does not guarantee that (2.0 reserializes as 2).
 * So the displayed strings are cut straight out of the raw response text.
 */

export interface MetricLiterals {
  neighborhood_error: string;
  stress: string;
  cluster_distortion: string;
  n_clusters: string;
  radius: string;
}

const METRIC_KEYS = [
  "neighborhood_error",
  "stress",
  "cluster_distortion",
  "n_clusters",
  "radius",
] as const;

/**
 * Extract the exact JSON number literals of the metric report from a raw
 * GET /jobs/{id} response body.  Throws when the payload carries no
 * completed metrics object.
 */
export function metricLiterals(rawPayload: string): MetricLiterals {
  const start = rawPayload.indexOf('"metrics"');
  if (start === -1) {
    throw new Error("payload has no metrics object");
  }
  const section = rawPayload.slice(start);
  const out: Partial<Record<(typeof METRIC_KEYS)[number], string>> = {};
  for (const key of METRIC_KEYS) {
    const match = section.match(
      new RegExp(`"${key}"\\s*:\\s*(-?[0-9]+(?:\\.[0-9]+)?(?:[eE][+-]?[0-9]+)?)`),
    );
    if (!match) {
      throw new Error(`metrics object lacks ${key}`);
    }
    out[key] = match[1];
  }
  return out as MetricLiterals;
}

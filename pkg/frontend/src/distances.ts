import type { ParsedGraph } from "./types.js";

/**
 * All-pairs shortest path lengths by BFS from every vertex (the client
 * graphs are unweighted).  Row-major n*n Float64Array; used only to fix
 * the edge-color scale factor, never for any displayed number.
 */
export function allPairsDistances(graph: ParsedGraph): Float64Array {
  const { n, edges } = graph;
  const heads = new Int32Array(n).fill(-1);
  const next = new Int32Array(edges.length * 2);
  const to = new Int32Array(edges.length * 2);
  let slot = 0;
  for (const [u, v] of edges) {
    to[slot] = v;
    next[slot] = heads[u];
    heads[u] = slot++;
    to[slot] = u;
    next[slot] = heads[v];
    heads[v] = slot++;
  }
  const dist = new Float64Array(n * n).fill(Infinity);
  const queue = new Int32Array(n);
  for (let source = 0; source < n; source++) {
    const row = source * n;
    dist[row + source] = 0;
    queue[0] = source;
    let head = 0;
    let tail = 1;
    while (head < tail) {
      const u = queue[head++];
      const du = dist[row + u];
      for (let e = heads[u]; e !== -1; e = next[e]) {
        const v = to[e];
        if (dist[row + v] === Infinity) {
          dist[row + v] = du + 1;
          queue[tail++] = v;
        }
      }
    }
  }
  return dist;
}

/**
 * Scale factor minimizing sum(((target - s*actual) / target)**2), the
 * same closed form the server applies before coloring:
 * s = sum(actual/target) / sum((actual/target)**2).
 */
export function optimalScale(target: ArrayLike<number>, actual: ArrayLike<number>): number {
  if (target.length !== actual.length) {
    throw new Error("target and actual must have equal length");
  }
  let num = 0;
  let denom = 0;
  for (let i = 0; i < target.length; i++) {
    if (!(target[i] > 0)) {
      throw new Error("target distances must be positive");
    }
    const ratio = actual[i] / target[i];
    num += ratio;
    denom += ratio * ratio;
  }
  if (denom === 0) return 0;
  return num / denom;
}

/** The layout-wide color scale: optimalScale over all vertex pairs. */
export function layoutScale(coords: Array<[number, number]>, dist: Float64Array): number {
  const n = coords.length;
  const pairs = (n * (n - 1)) / 2;
  const target = new Float64Array(pairs);
  const actual = new Float64Array(pairs);
  let at = 0;
  for (let i = 0; i < n; i++) {
    for (let j = i + 1; j < n; j++) {
      target[at] = dist[i * n + j];
      actual[at] = Math.hypot(coords[i][0] - coords[j][0], coords[i][1] - coords[j][1]);
      at++;
    }
  }
  return optimalScale(target, actual);
}

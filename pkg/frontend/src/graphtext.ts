import type { ParsedGraph } from "./types.js";

/**
 * Parse the plain edge-list format accepted by POST /graphs: one "u v"
 * (optionally "u v w") per line, # comments, blank lines skipped,
 * self-loops dropped, duplicate edges collapsed, vertex labels remapped
 * to 0..n-1 in sorted order.  Mirrors the server's parser so the drawing
 * layer indexes the same vertices the job coordinates describe.
 */
export function parseEdgeList(text: string): ParsedGraph {
  const labels = new Set<number>();
  const seen = new Set<string>();
  const rawEdges: Array<[number, number]> = [];
  const lines = text.split("\n");
  for (let lineno = 1; lineno <= lines.length; lineno++) {
    const line = lines[lineno - 1].split("#", 1)[0].trim();
    if (!line) continue;
    const parts = line.split(/\s+/);
    if (parts.length !== 2 && parts.length !== 3) {
      throw new Error(`line ${lineno}: expected 'u v' or 'u v w', got ${parts.length} fields`);
    }
    if (!/^[+-]?\d+$/.test(parts[0]) || !/^[+-]?\d+$/.test(parts[1])) {
      throw new Error(`line ${lineno}: non-integer vertex label in '${line}'`);
    }
    const u = Number(parts[0]);
    const v = Number(parts[1]);
    if (parts.length === 3) {
      const w = Number(parts[2]);
      if (!Number.isFinite(w) || !(w > 0)) {
        throw new Error(`line ${lineno}: non-positive weight ${parts[2]}`);
      }
    }
    if (u === v) continue;
    labels.add(u);
    labels.add(v);
    const lo = Math.min(u, v);
    const hi = Math.max(u, v);
    const key = `${lo},${hi}`;
    if (!seen.has(key)) {
      seen.add(key);
      rawEdges.push([lo, hi]);
    }
  }
  if (rawEdges.length === 0) {
    throw new Error("empty graph: no edges found");
  }
  const sorted = Array.from(labels).sort((a, b) => a - b);
  const remap = new Map<number, number>();
  sorted.forEach((label, index) => remap.set(label, index));
  const edges = rawEdges.map(
    ([u, v]): [number, number] => [remap.get(u)!, remap.get(v)!],
  );
  return { n: sorted.length, edges };
}

import { edgeColor, hexColor } from "./colors.js";
import { layoutScale } from "./distances.js";
import type { ParsedGraph } from "./types.js";

export interface EdgeSegment {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  /** Hex color, identical to the server SVG's stroke for this edge. */
  color: string;
}

export interface DrawList {
  segments: EdgeSegment[];
  vertices: Array<[number, number]>;
  /** Data-space view box (x, y, width, height) with 5 percent padding. */
  view: [number, number, number, number];
  strokeWidth: number;
  vertexRadius: number;
}

/**
 * Turn job coordinates into draw operations, reproducing the server's
 * SVG geometry: y flipped to point up, view box padded by 5 percent of
 * the larger span, and every edge colored by how far its drawn length
 * deviates from its graph distance after the global optimal rescaling.
 */
export function buildDrawList(
  graph: ParsedGraph,
  coords: Array<[number, number]>,
  dist: Float64Array,
): DrawList {
  const n = graph.n;
  if (coords.length !== n) {
    throw new Error(`expected ${n} coordinates, got ${coords.length}`);
  }
  const scale = layoutScale(coords, dist);
  const xs = coords.map((p) => p[0]);
  const ys = coords.map((p) => -p[1]);
  const xmin = Math.min(...xs);
  const ymin = Math.min(...ys);
  const xspan = Math.max(...xs) - xmin;
  const yspan = Math.max(...ys) - ymin;
  const span = Math.max(xspan, yspan, 1e-6);
  const pad = 0.05 * span;

  const segments: EdgeSegment[] = graph.edges.map(([u, v]) => {
    const drawn = Math.hypot(xs[u] - xs[v], ys[u] - ys[v]);
    const target = dist[u * n + v];
    return {
      x1: xs[u],
      y1: ys[u],
      x2: xs[v],
      y2: ys[v],
      color: hexColor(edgeColor((scale * drawn) / target)),
    };
  });
  return {
    segments,
    vertices: xs.map((x, i): [number, number] => [x, ys[i]]),
    view: [xmin - pad, ymin - pad, xspan + 2 * pad, yspan + 2 * pad],
    strokeWidth: 0.006 * span,
    vertexRadius: 0.009 * span,
  };
}

/** Minimal 2-d context surface the renderer needs; tests record calls. */
export interface CanvasLike {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  stroke(): void;
  fill(): void;
  strokeStyle: string;
  fillStyle: string;
  lineWidth: number;
  lineCap: string;
}

/** Paint a draw list onto a canvas-like context of the given pixel size. */
export function paintDrawList(
  ctx: CanvasLike,
  list: DrawList,
  width: number,
  height: number,
): void {
  const [vx, vy, vw, vh] = list.view;
  const unit = Math.min(width / vw, height / vh);
  const px = (x: number) => (x - vx) * unit;
  const py = (y: number) => (y - vy) * unit;
  ctx.clearRect(0, 0, width, height);
  ctx.lineCap = "round";
  ctx.lineWidth = Math.max(1, list.strokeWidth * unit);
  for (const seg of list.segments) {
    ctx.strokeStyle = seg.color;
    ctx.beginPath();
    ctx.moveTo(px(seg.x1), py(seg.y1));
    ctx.lineTo(px(seg.x2), py(seg.y2));
    ctx.stroke();
  }
  ctx.fillStyle = "#222222";
  const radius = Math.max(1, list.vertexRadius * unit);
  for (const [x, y] of list.vertices) {
    ctx.beginPath();
    ctx.arc(px(x), py(y), radius, 0, 2 * Math.PI);
    ctx.fill();
  }
}

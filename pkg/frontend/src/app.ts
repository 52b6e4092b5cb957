import { ApiClient } from "./api.js";
import {
  ExplorerController,
  type ExplorerView,
  type HistoryEntry,
} from "./controller.js";
import { paintDrawList, type CanvasLike } from "./draw.js";
import { sampleGraphText } from "./sample.js";
import { trendSeries } from "./trend.js";

export interface AppOptions {
  api: ApiClient;
  /** Context factory; tests inject a recording stub (jsdom has no 2d). */
  getContext?: (canvas: HTMLCanvasElement) => CanvasLike | null;
  debounceMs?: number;
  pollMs?: number;
  schedule?: (fn: () => void, ms: number) => unknown;
  cancel?: (handle: unknown) => void;
}

const TREND_COLORS = { ne: "#d62728", stress: "#1f77b4", cd: "#2ca02c" };

/** Wire the explorer controller to the DOM inside the given root. */
export function createApp(root: Document, options: AppOptions): ExplorerController {
  const pick = <T extends HTMLElement>(id: string): T => {
    const el = root.getElementById(id);
    if (el === null) throw new Error(`missing #${id}`);
    return el as T;
  };
  const graphText = pick<HTMLTextAreaElement>("graph-text");
  const graphFile = pick<HTMLInputElement>("graph-file");
  const loadBtn = pick<HTMLButtonElement>("load-btn");
  const sampleBtn = pick<HTMLButtonElement>("sample-btn");
  const slider = pick<HTMLInputElement>("k-slider");
  const kValue = pick<HTMLElement>("k-value");
  const seedInput = pick<HTMLInputElement>("seed-input");
  const layoutCanvas = pick<HTMLCanvasElement>("layout-canvas");
  const trendCanvas = pick<HTMLCanvasElement>("trend-canvas");
  const status = pick<HTMLElement>("status");
  const banner = pick<HTMLElement>("banner");
  const bannerText = pick<HTMLElement>("banner-text");
  const retryBtn = pick<HTMLButtonElement>("retry-btn");
  const pinBtn = pick<HTMLButtonElement>("pin-btn");
  const snapshotRow = pick<HTMLElement>("snapshots");
  const metricCells = {
    neighborhood_error: pick<HTMLElement>("metric-ne"),
    stress: pick<HTMLElement>("metric-stress"),
    cluster_distortion: pick<HTMLElement>("metric-cd"),
    n_clusters: pick<HTMLElement>("metric-clusters"),
    radius: pick<HTMLElement>("metric-radius"),
  };
  const getContext =
    options.getContext ?? ((canvas) => canvas.getContext("2d") as CanvasLike | null);

  const paintLayout = (canvas: HTMLCanvasElement, entry: HistoryEntry): void => {
    const ctx = getContext(canvas);
    if (ctx !== null) {
      paintDrawList(ctx, entry.drawList, canvas.width, canvas.height);
    }
  };

  const paintTrend = (view: ExplorerView): void => {
    const ctx = getContext(trendCanvas);
    if (ctx === null) return;
    const { width, height } = trendCanvas;
    ctx.clearRect(0, 0, width, height);
    const series = trendSeries(view.trend, width, height);
    for (const name of ["ne", "stress", "cd"] as const) {
      const line = series[name];
      if (line.length === 0) continue;
      ctx.strokeStyle = TREND_COLORS[name];
      ctx.lineWidth = 2;
      ctx.beginPath();
      ctx.moveTo(line[0][0], line[0][1]);
      for (let i = 1; i < line.length; i++) ctx.lineTo(line[i][0], line[i][1]);
      ctx.stroke();
    }
  };

  const renderSnapshots = (view: ExplorerView): void => {
    snapshotRow.textContent = "";
    for (const entry of view.snapshots) {
      const cell = root.createElement("figure");
      cell.className = "snapshot";
      const canvas = root.createElement("canvas");
      canvas.width = 160;
      canvas.height = 160;
      const caption = root.createElement("figcaption");
      caption.textContent = `k = ${entry.k}`;
      const remove = root.createElement("button");
      remove.textContent = "unpin";
      remove.addEventListener("click", () => controller.unpin(entry.key));
      cell.append(canvas, caption, remove);
      snapshotRow.append(cell);
      paintLayout(canvas, entry);
    }
  };

  const controller = new ExplorerController({
    api: options.api,
    debounceMs: options.debounceMs,
    pollMs: options.pollMs,
    schedule: options.schedule,
    cancel: options.cancel,
    onRender: (view) => {
      slider.value = String(view.params.k);
      kValue.textContent = String(view.params.k);
      if (view.graphSize !== null) {
        slider.max = String(Math.max(2, view.graphSize.n - 1));
      }
      if (view.entry !== null) {
        for (const [key, cell] of Object.entries(metricCells)) {
          cell.textContent = view.entry.literals[key as keyof typeof metricCells];
        }
        paintLayout(layoutCanvas, view.entry);
      }
      status.textContent =
        view.running !== null
          ? `embedding k=${view.running.k}: epoch ${view.running.epoch}/${view.running.maxEpochs}`
          : view.entry !== null
            ? `job ${view.entry.jobId} done (${view.entry.payload.progress.epoch} epochs)`
            : "";
      banner.hidden = view.banner === null;
      bannerText.textContent = view.banner ?? "";
      retryBtn.hidden = !view.canRetry;
      paintTrend(view);
      renderSnapshots(view);
    },
  });

  const load = (text: string): void => {
    graphText.value = text;
    controller.loadGraph(text).catch(() => {
      // the controller already surfaced the banner
    });
  };
  loadBtn.addEventListener("click", () => load(graphText.value));
  sampleBtn.addEventListener("click", () => load(sampleGraphText()));
  graphFile.addEventListener("change", () => {
    const file = graphFile.files?.[0];
    if (file === undefined) return;
    void file.text().then(load);
  });
  slider.addEventListener("input", () => controller.onKChange(Number(slider.value)));
  seedInput.addEventListener("change", () =>
    controller.updateParams({ seed: Number(seedInput.value) }),
  );
  retryBtn.addEventListener("click", () => controller.retry());
  pinBtn.addEventListener("click", () => controller.pinCurrent());
  return controller;
}

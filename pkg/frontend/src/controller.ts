import { ApiClient } from "./api.js";
import { buildDrawList, type DrawList } from "./draw.js";
import { allPairsDistances } from "./distances.js";
import { parseEdgeList } from "./graphtext.js";
import { metricLiterals, type MetricLiterals } from "./metricstext.js";
import { DEFAULT_PARAMS, paramsKey } from "./params.js";
import type { JobParams, JobPayload, ParsedGraph } from "./types.js";

/** One completed embedding, cached under its full params hash. */
export interface HistoryEntry {
  key: string;
  jobId: string;
  k: number;
  raw: string;
  payload: JobPayload;
  literals: MetricLiterals;
  drawList: DrawList;
}

export interface TrendPoint {
  k: number;
  ne: number;
  stress: number;
  cd: number;
}

/** Everything the DOM layer needs to paint one frame. */
export interface ExplorerView {
  graphId: string | null;
  graphSize: { n: number; m: number } | null;
  params: JobParams;
  /** The entry being displayed, when its job has completed. */
  entry: HistoryEntry | null;
  /** Progress of the job for the current selection, while it runs. */
  running: { k: number; epoch: number; maxEpochs: number } | null;
  /** Metric trend per k, ascending, deduplicated by params hash. */
  trend: TrendPoint[];
  /** Pinned completed runs, ascending k (left to right). */
  snapshots: HistoryEntry[];
  banner: string | null;
  canRetry: boolean;
}

export interface SessionState {
  graphId: string | null;
  graph: ParsedGraph | null;
  distances: Float64Array | null;
  graphSize: { n: number; m: number } | null;
  params: JobParams;
  currentKey: string | null;
  history: Map<string, HistoryEntry>;
  trend: Map<string, TrendPoint>;
  snapshots: Set<string>;
  banner: string | null;
}

export interface ControllerOptions {
  api: ApiClient;
  onRender: (view: ExplorerView) => void;
  /** Slider quiet time before a job is submitted; at least 300 ms. */
  debounceMs?: number;
  pollMs?: number;
  schedule?: (fn: () => void, ms: number) => unknown;
  cancel?: (handle: unknown) => void;
}

export const MIN_DEBOUNCE_MS = 300;

/**
 * Single owner of the explorer session.
 *
 * Slider movement is debounced; each settled parameter set maps to one
 * params hash.  A completed job is cached under that hash, so re-selecting
 * it never talks to the server again.  At most one poll loop runs at a
 * time, and every await re-checks that its hash is still the current one,
 * so responses for superseded selections are dropped, never rendered.
 */
export class ExplorerController {
  private readonly api: ApiClient;
  private readonly onRender: (view: ExplorerView) => void;
  private readonly debounceMs: number;
  private readonly pollMs: number;
  private readonly schedule: (fn: () => void, ms: number) => unknown;
  private readonly cancel: (handle: unknown) => void;

  private readonly state: SessionState = {
    graphId: null,
    graph: null,
    distances: null,
    graphSize: null,
    params: { ...DEFAULT_PARAMS },
    currentKey: null,
    history: new Map(),
    trend: new Map(),
    snapshots: new Set(),
    banner: null,
  };

  private debounceHandle: unknown = null;
  private pollToken = 0;
  private runningInfo: ExplorerView["running"] = null;
  private retryable = false;

  constructor(options: ControllerOptions) {
    this.api = options.api;
    this.onRender = options.onRender;
    this.debounceMs = Math.max(MIN_DEBOUNCE_MS, options.debounceMs ?? MIN_DEBOUNCE_MS);
    this.pollMs = options.pollMs ?? 500;
    this.schedule = options.schedule ?? ((fn, ms) => setTimeout(fn, ms));
    this.cancel = options.cancel ?? ((handle) => clearTimeout(handle as number));
  }

  /** Parse, upload and activate a graph; resets trend and snapshots. */
  async loadGraph(text: string): Promise<void> {
    let graph: ParsedGraph;
    let uploaded;
    try {
      graph = parseEdgeList(text);
      uploaded = await this.api.uploadGraph(text);
    } catch (error) {
      this.state.banner = describe(error);
      this.retryable = false;
      this.render();
      throw error;
    }
    this.state.graphId = uploaded.id;
    this.state.graph = graph;
    this.state.distances = allPairsDistances(graph);
    this.state.graphSize = { n: uploaded.n, m: uploaded.m };
    this.state.currentKey = null;
    this.state.trend.clear();
    this.state.snapshots.clear();
    this.state.banner = null;
    this.runningInfo = null;
    this.retryable = false;
    if (this.state.params.k >= uploaded.n) {
      this.state.params = { ...this.state.params, k: uploaded.n - 1 };
    }
    this.render();
  }

  /** Debounced slider path: the job is submitted after a quiet period. */
  onKChange(k: number): void {
    this.updateParams({ k: Math.round(k) });
  }

  /** Debounced change of any parameter subset. */
  updateParams(partial: Partial<JobParams>): void {
    this.state.params = { ...this.state.params, ...partial };
    if (this.debounceHandle !== null) {
      this.cancel(this.debounceHandle);
    }
    this.debounceHandle = this.schedule(() => {
      this.debounceHandle = null;
      void this.submitCurrent();
    }, this.debounceMs);
    this.render();
  }

  /** Re-run the last selection after a failure. */
  retry(): void {
    void this.submitCurrent();
  }

  /**
   * Pin the currently displayed completed run for side-by-side view.
   * Returns false when nothing completed is displayed.
   */
  pinCurrent(): boolean {
    const key = this.state.currentKey;
    if (key === null) return false;
    const entry = this.state.history.get(key);
    if (entry === undefined || entry.payload.status !== "done") return false;
    this.state.snapshots.add(key);
    this.render();
    return true;
  }

  unpin(key: string): void {
    this.state.snapshots.delete(key);
    this.render();
  }

  /** The active selection's hash; exposed for the DOM layer and tests. */
  get currentKey(): string | null {
    return this.state.currentKey;
  }

  private async submitCurrent(): Promise<void> {
    const { graphId, graph, distances } = this.state;
    if (graphId === null || graph === null || distances === null) return;
    const params = { ...this.state.params };
    const key = paramsKey(graphId, params);
    this.state.currentKey = key;
    this.pollToken++;

    const cached = this.state.history.get(key);
    if (cached !== undefined) {
      // instant redraw from the session cache: no request of any kind
      this.state.banner = null;
      this.runningInfo = null;
      this.retryable = false;
      this.render();
      return;
    }

    const token = this.pollToken;
    this.state.banner = null;
    this.retryable = false;
    this.runningInfo = { k: params.k, epoch: 0, maxEpochs: params.max_epochs };
    this.render();
    try {
      const submitted = await this.api.submitJob(graphId, params);
      if (!this.isCurrent(key, token)) return;
      await this.pollJob(submitted.job_id, key, params, token);
    } catch (error) {
      if (!this.isCurrent(key, token)) return;
      this.state.banner = describe(error);
      this.retryable = true;
      this.runningInfo = null;
      this.render();
    }
  }

  private isCurrent(key: string, token: number): boolean {
    return this.state.currentKey === key && this.pollToken === token;
  }

  private async pollJob(
    jobId: string,
    key: string,
    params: JobParams,
    token: number,
  ): Promise<void> {
    const { raw, payload } = await this.api.jobPayload(jobId);
    if (payload.status === "done") {
      this.completeJob(jobId, key, params, raw, payload, token);
      return;
    }
    if (payload.status === "failed") {
      if (this.isCurrent(key, token)) {
        this.state.banner = payload.error ?? "job failed";
        this.retryable = true;
        this.runningInfo = null;
        this.render();
      }
      return;
    }
    if (!this.isCurrent(key, token)) return;
    this.runningInfo = {
      k: params.k,
      epoch: payload.progress.epoch,
      maxEpochs: payload.progress.max_epochs,
    };
    this.render();
    this.schedule(() => {
      if (!this.isCurrent(key, token)) return;
      this.pollJob(jobId, key, params, token).catch((error) => {
        if (!this.isCurrent(key, token)) return;
        this.state.banner = describe(error);
        this.retryable = true;
        this.runningInfo = null;
        this.render();
      });
    }, this.pollMs);
  }

  private completeJob(
    jobId: string,
    key: string,
    params: JobParams,
    raw: string,
    payload: JobPayload,
    token: number,
  ): void {
    const { graph, distances } = this.state;
    if (graph === null || distances === null || payload.result === null) return;
    const entry: HistoryEntry = {
      key,
      jobId,
      k: params.k,
      raw,
      payload,
      literals: metricLiterals(raw),
      drawList: buildDrawList(graph, payload.result.coordinates, distances),
    };
    // completed work is cached and charted even when superseded; only
    // presenting it as the current selection would be stale
    this.state.history.set(key, entry);
    const metrics = payload.result.metrics;
    this.state.trend.set(key, {
      k: params.k,
      ne: metrics.neighborhood_error,
      stress: metrics.stress,
      cd: metrics.cluster_distortion,
    });
    if (!this.isCurrent(key, token)) return;
    this.runningInfo = null;
    this.state.banner = null;
    this.retryable = false;
    this.render();
  }

  private render(): void {
    const entry =
      this.state.currentKey !== null
        ? (this.state.history.get(this.state.currentKey) ?? null)
        : null;
    const snapshots = Array.from(this.state.snapshots)
      .map((key) => this.state.history.get(key))
      .filter((e): e is HistoryEntry => e !== undefined)
      .sort((a, b) => a.k - b.k);
    const trend = Array.from(this.state.trend.values()).sort((a, b) => a.k - b.k);
    this.onRender({
      graphId: this.state.graphId,
      graphSize: this.state.graphSize,
      params: { ...this.state.params },
      entry,
      running: this.runningInfo,
      trend,
      snapshots,
      banner: this.state.banner,
      canRetry: this.retryable,
    });
  }
}

function describe(error: unknown): string {
  if (error instanceof Error) return error.message;
  return String(error);
}

/**
 * Shared fakes for the explorer tests: an in-memory embedding service
 * driven through the injectable fetch, plus deterministic graph and
 * coordinate generators.  Raw job bodies are assembled by string template
 * so tests control every byte the metric panel will display.
 */
import type { FetchLike } from "../src/api.js";
import type { JobParams } from "../src/types.js";

export interface RequestRecord {
  method: string;
  path: string;
  body: string | null;
}

export interface JobRecord {
  id: string;
  graphId: string;
  params: JobParams;
}

export interface DoneOptions {
  job: JobRecord;
  coords: Array<[number, number]>;
  /** Metric literals spliced verbatim into the JSON body. */
  ne: string;
  stress: string;
  cd: string;
  nClusters?: string;
  radius?: string;
  epoch?: number;
}

export function donePayload(opts: DoneOptions): string {
  const { job } = opts;
  const radius = opts.radius ?? "2.0";
  const epoch = opts.epoch ?? job.params.max_epochs;
  return (
    `{"id":"${job.id}","graph_id":"${job.graphId}","status":"done",` +
    `"progress":{"epoch":${epoch},"max_epochs":${job.params.max_epochs}},` +
    `"params":${JSON.stringify(job.params)},"radius":${radius},` +
    `"result":{"coordinates":${JSON.stringify(opts.coords)},"provenance":{},` +
    `"metrics":{"neighborhood_error":${opts.ne},"stress":${opts.stress},` +
    `"cluster_distortion":${opts.cd},"n_clusters":${opts.nClusters ?? "1"},` +
    `"radius":${radius}}},"error":null}`
  );
}

export function runningPayload(job: JobRecord, epoch: number): string {
  return (
    `{"id":"${job.id}","graph_id":"${job.graphId}","status":"running",` +
    `"progress":{"epoch":${epoch},"max_epochs":${job.params.max_epochs}},` +
    `"params":${JSON.stringify(job.params)},"radius":2.0,"result":null,"error":null}`
  );
}

export function failedPayload(job: JobRecord, message: string): string {
  return (
    `{"id":"${job.id}","graph_id":"${job.graphId}","status":"failed",` +
    `"progress":{"epoch":0,"max_epochs":${job.params.max_epochs}},` +
    `"params":${JSON.stringify(job.params)},"radius":2.0,"result":null,` +
    `"error":${JSON.stringify(message)}}`
  );
}

function textResponse(body: string, status = 200): Response {
  return {
    ok: status >= 200 && status < 300,
    status,
    text: async () => body,
  } as unknown as Response;
}

function countGraph(text: string): { n: number; m: number } {
  const labels = new Set<string>();
  const seen = new Set<string>();
  for (const rawLine of text.split("\n")) {
    const line = rawLine.split("#", 1)[0].trim();
    if (!line) continue;
    const parts = line.split(/\s+/);
    const [a, b] = parts;
    if (a === b) continue;
    labels.add(a);
    labels.add(b);
    seen.add(a < b ? `${a},${b}` : `${b},${a}`);
  }
  return { n: labels.size, m: seen.size };
}

/**
 * Minimal fake of the embedding service.  Job poll responses come from
 * `jobBody`; with `manual` set, each GET /jobs/{id} is held open until the
 * test resolves it with respond(), which pins down the exact response
 * ordering the stale-result cases need.
 */
export class FakeServer {
  requests: RequestRecord[] = [];
  jobs = new Map<string, JobRecord>();
  graphs = new Map<string, { n: number; m: number }>();
  manual = false;
  /** When set, the next request rejects at the network level. */
  rejectNext: Error | null = null;
  jobBody: (job: JobRecord, poll: number) => string;
  private waiting = new Map<string, Array<(raw: string) => void>>();
  private polls = new Map<string, number>();
  private graphSeq = 0;
  private jobSeq = 0;

  constructor(jobBody?: (job: JobRecord, poll: number) => string) {
    this.jobBody =
      jobBody ??
      ((job) =>
        donePayload({
          job,
          coords: lineCoords(this.graphs.get(job.graphId)?.n ?? 0, 1),
          ne: "0.5",
          stress: "10.0",
          cd: "0.0",
        }));
  }

  fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    const body = typeof init?.body === "string" ? init.body : null;
    this.requests.push({ method, path, body });
    if (this.rejectNext !== null) {
      const error = this.rejectNext;
      this.rejectNext = null;
      throw error;
    }
    let match: RegExpMatchArray | null = null;
    if (method === "POST" && path === "/graphs") {
      const { text } = JSON.parse(body ?? "{}") as { text: string };
      const { n, m } = countGraph(text);
      const id = `g${++this.graphSeq}`;
      this.graphs.set(id, { n, m });
      return textResponse(JSON.stringify({ id, n, m }), 201);
    }
    if (method === "POST" && (match = path.match(/^\/graphs\/([^/]+)\/jobs$/))) {
      const params = JSON.parse(body ?? "{}") as JobParams;
      const id = `j${++this.jobSeq}`;
      this.jobs.set(id, { id, graphId: match[1], params });
      return textResponse(JSON.stringify({ job_id: id, status: "queued" }), 202);
    }
    if (method === "GET" && (match = path.match(/^\/jobs\/([^/]+)$/))) {
      const job = this.jobs.get(match[1]);
      if (job === undefined) return textResponse('{"detail":"no such job"}', 404);
      const poll = (this.polls.get(job.id) ?? 0) + 1;
      this.polls.set(job.id, poll);
      if (this.manual) {
        return new Promise<Response>((resolve) => {
          const queue = this.waiting.get(job.id) ?? [];
          queue.push((raw) => resolve(textResponse(raw)));
          this.waiting.set(job.id, queue);
        });
      }
      return textResponse(this.jobBody(job, poll));
    }
    return textResponse('{"detail":"no such route"}', 404);
  };

  /** Resolve one held poll of the given job with the raw body. */
  respond(jobId: string, raw: string): void {
    const resolve = this.waiting.get(jobId)?.shift();
    if (resolve === undefined) throw new Error(`no pending poll for ${jobId}`);
    resolve(raw);
  }

  jobPosts(): RequestRecord[] {
    return this.requests.filter(
      (r) => r.method === "POST" && /^\/graphs\/[^/]+\/jobs$/.test(r.path),
    );
  }

  jobGets(jobId: string): number {
    return this.requests.filter((r) => r.method === "GET" && r.path === `/jobs/${jobId}`)
      .length;
  }
}

export function pathGraphText(n: number): string {
  const lines: string[] = [];
  for (let i = 0; i + 1 < n; i++) lines.push(`${i} ${i + 1}`);
  return lines.join("\n") + "\n";
}

/**
 * n points on the x axis, unit spacing except the first gap.  With
 * firstGap 1 every pair sits exactly at its path distance, so all edges
 * color green; any other gap makes the edge colors non-uniform.
 */
export function lineCoords(n: number, firstGap: number): Array<[number, number]> {
  const coords: Array<[number, number]> = [[0, 0]];
  let x = 0;
  for (let i = 1; i < n; i++) {
    x += i === 1 ? firstGap : 1;
    coords.push([x, 0]);
  }
  return coords;
}

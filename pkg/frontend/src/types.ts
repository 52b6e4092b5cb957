/** Shapes of the JSON payloads exchanged with the embedding API. */

export interface GraphUploadResponse {
  id: string;
  n: number;
  m: number;
}

export interface GraphInfo {
  id: string;
  n: number;
  m: number;
  diameter: number;
}

/** Embedding job parameters as the server expects them. */
export interface JobParams {
  k: number;
  c: number;
  s: number;
  alpha: number;
  max_epochs: number;
  move_tol: number;
  seed: number;
  radius: number;
}

export interface JobSubmitResponse {
  job_id: string;
  status: string;
}

export interface MetricReport {
  neighborhood_error: number;
  stress: number;
  cluster_distortion: number;
  n_clusters: number;
  radius: number;
}

export interface JobResult {
  coordinates: [number, number][];
  provenance: Record<string, unknown>;
  metrics: MetricReport;
}

export interface JobPayload {
  id: string;
  graph_id: string;
  status: "queued" | "running" | "done" | "failed";
  progress: { epoch: number; max_epochs: number };
  params: JobParams;
  radius: number;
  result: JobResult | null;
  error: string | null;
}

/** A parsed undirected graph kept client side for drawing. */
export interface ParsedGraph {
  n: number;
  /** Each edge once with u < v. */
  edges: [number, number][];
}

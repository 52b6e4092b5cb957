import type {
  GraphInfo,
  GraphUploadResponse,
  JobParams,
  JobPayload,
  JobSubmitResponse,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

/** A job payload together with the raw bytes it was parsed from. */
export interface RawJobPayload {
  raw: string;
  payload: JobPayload;
}

/** Thin typed client for the embedding service; fetch is injectable. */
export class ApiClient {
  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<string> {
    const response = await this.fetchFn(this.base + path, init);
    const text = await response.text();
    if (!response.ok) {
      let detail = text;
      try {
        detail = JSON.parse(text).detail ?? text;
      } catch {
        // keep the raw body
      }
      throw new ApiError(response.status, `${response.status}: ${detail}`);
    }
    return text;
  }

  private async requestJson<T>(path: string, init?: RequestInit): Promise<T> {
    return JSON.parse(await this.request(path, init)) as T;
  }

  uploadGraph(text: string): Promise<GraphUploadResponse> {
    return this.requestJson<GraphUploadResponse>("/graphs", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ text }),
    });
  }

  graphInfo(graphId: string): Promise<GraphInfo> {
    return this.requestJson<GraphInfo>(`/graphs/${graphId}`);
  }

  submitJob(graphId: string, params: JobParams): Promise<JobSubmitResponse> {
    return this.requestJson<JobSubmitResponse>(`/graphs/${graphId}/jobs`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(params),
    });
  }

  async jobPayload(jobId: string): Promise<RawJobPayload> {
    const raw = await this.request(`/jobs/${jobId}`);
    return { raw, payload: JSON.parse(raw) as JobPayload };
  }

  jobSvgUrl(jobId: string): string {
    return `${this.base}/jobs/${jobId}/svg`;
  }
}

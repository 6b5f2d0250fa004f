import type {
  CompassResponse,
  ConfidenceLevel,
  GraphPayload,
  HealthResponse,
  NodeMetadataPayload,
  ProgressState,
} from './types.js';

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.name = 'ApiError';
    this.status = status;
  }
}

async function readError(response: Response): Promise<ApiError> {
  let detail = response.statusText || `HTTP ${response.status}`;
  try {
    const body = await response.json();
    if (body && typeof body.detail === 'string') {
      detail = body.detail;
    }
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, detail);
}

export interface MetadataPatch {
  confidence?: ConfidenceLevel;
  proofProgress?: ProgressState;
  defProgress?: ProgressState;
}

/**
 * Thin typed client for the depcompass service. Every set computation
 * (review cones, kept sets, filters) happens server-side; this client
 * only moves payloads.
 */
export class ApiClient {
  readonly baseUrl: string;

  constructor(baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/$/, '');
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await fetch(this.baseUrl + path);
    if (!response.ok) throw await readError(response);
    return response.json() as Promise<T>;
  }

  health(): Promise<HealthResponse> {
    return this.getJson('/api/health');
  }

  /** Fetch the graph, filtered by the given query parameters. */
  graph(params?: URLSearchParams): Promise<GraphPayload> {
    const query = params && [...params.keys()].length > 0 ? `?${params}` : '';
    return this.getJson(`/api/graph${query}`);
  }

  async compass(targets: string[]): Promise<CompassResponse> {
    const response = await fetch(`${this.baseUrl}/api/compass`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ targets }),
    });
    if (!response.ok) throw await readError(response);
    return response.json() as Promise<CompassResponse>;
  }

  nodeMetadata(name: string): Promise<NodeMetadataPayload> {
    return this.getJson(`/api/nodes/${encodeURIComponent(name)}/metadata`);
  }

  async patchMetadata(name: string, patch: MetadataPatch): Promise<NodeMetadataPayload> {
    const response = await fetch(
      `${this.baseUrl}/api/nodes/${encodeURIComponent(name)}/metadata`,
      {
        method: 'PATCH',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify(patch),
      },
    );
    if (!response.ok) throw await readError(response);
    return response.json() as Promise<NodeMetadataPayload>;
  }
}

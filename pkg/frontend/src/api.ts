import type {
  CutRequest,
  GammaResponse,
  GraphResponse,
  PartitionResponse,
  ProjectionResponse,
  SessionSummary,
} from './types.js';

export class ApiError extends Error {
  constructor(readonly status: number, readonly code: string, message: string) {
    super(message);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let code = 'error';
  let message = `${response.status} ${response.statusText}`;
  try {
    const body = await response.json();
    if (body && typeof body === 'object') {
      code = body.code ?? code;
      message = body.message ?? message;
    }
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, code, message);
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      headers: { 'Content-Type': 'application/json' },
      ...init,
    });
    if (!response.ok) {
      throw await parseError(response);
    }
    return response.json() as Promise<T>;
  }

  listSessions(): Promise<SessionSummary[]> {
    return this.request('/v1/sessions');
  }

  createSessionFromCsv(pointsCsv: string): Promise<SessionSummary> {
    return this.request('/v1/sessions', {
      method: 'POST',
      body: JSON.stringify({ points_csv: pointsCsv }),
    });
  }

  getSummary(sessionId: string): Promise<SessionSummary> {
    return this.request(`/v1/sessions/${sessionId}`);
  }

  getGraph(sessionId: string): Promise<GraphResponse> {
    return this.request(`/v1/sessions/${sessionId}/graph`);
  }

  postCut(sessionId: string, cut: CutRequest): Promise<PartitionResponse> {
    return this.request(`/v1/sessions/${sessionId}/cut`, {
      method: 'POST',
      body: JSON.stringify(cut),
    });
  }

  getPartition(sessionId: string): Promise<PartitionResponse> {
    return this.request(`/v1/sessions/${sessionId}/partition`);
  }

  getProjection(sessionId: string): Promise<ProjectionResponse> {
    return this.request(`/v1/sessions/${sessionId}/projection`);
  }

  getGamma(sessionId: string): Promise<GammaResponse> {
    return this.request(`/v1/sessions/${sessionId}/gamma`);
  }
}

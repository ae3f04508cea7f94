export class ApiError extends Error {
    status;
    code;
    constructor(status, code, message) {
        super(message);
        this.status = status;
        this.code = code;
    }
}
async function parseError(response) {
    let code = 'error';
    let message = `${response.status} ${response.statusText}`;
    try {
        const body = await response.json();
        if (body && typeof body === 'object') {
            code = body.code ?? code;
            message = body.message ?? message;
        }
    }
    catch {
        // non-JSON error body; keep the status text
    }
    return new ApiError(response.status, code, message);
}
export class ApiClient {
    baseUrl;
    constructor(baseUrl) {
        this.baseUrl = baseUrl;
    }
    async request(path, init) {
        const response = await fetch(`${this.baseUrl}${path}`, {
            headers: { 'Content-Type': 'application/json' },
            ...init,
        });
        if (!response.ok) {
            throw await parseError(response);
        }
        return response.json();
    }
    listSessions() {
        return this.request('/v1/sessions');
    }
    createSessionFromCsv(pointsCsv) {
        return this.request('/v1/sessions', {
            method: 'POST',
            body: JSON.stringify({ points_csv: pointsCsv }),
        });
    }
    getSummary(sessionId) {
        return this.request(`/v1/sessions/${sessionId}`);
    }
    getGraph(sessionId) {
        return this.request(`/v1/sessions/${sessionId}/graph`);
    }
    postCut(sessionId, cut) {
        return this.request(`/v1/sessions/${sessionId}/cut`, {
            method: 'POST',
            body: JSON.stringify(cut),
        });
    }
    getPartition(sessionId) {
        return this.request(`/v1/sessions/${sessionId}/partition`);
    }
    getProjection(sessionId) {
        return this.request(`/v1/sessions/${sessionId}/projection`);
    }
    getGamma(sessionId) {
        return this.request(`/v1/sessions/${sessionId}/gamma`);
    }
}

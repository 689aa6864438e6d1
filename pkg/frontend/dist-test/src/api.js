// Thin fetch client for the workbench service. The fetch function is
// injectable so pure-logic tests can stub the wire.
export class ApiError extends Error {
    status;
    constructor(message, status) {
        super(message);
        this.status = status;
    }
}
export class ApiClient {
    baseUrl;
    fetchFn;
    constructor(baseUrl = "", fetchFn = (input, init) => fetch(input, init)) {
        this.baseUrl = baseUrl;
        this.fetchFn = fetchFn;
    }
    async request(path, init) {
        let response;
        try {
            response = await this.fetchFn(this.baseUrl + path, init);
        }
        catch (error) {
            throw new ApiError(`service unreachable: ${String(error)}`, 0);
        }
        if (!response.ok) {
            let detail = response.statusText;
            try {
                const body = (await response.json());
                if (body.detail)
                    detail = body.detail;
            }
            catch {
                // keep statusText
            }
            throw new ApiError(detail, response.status);
        }
        return (await response.json());
    }
    listRuns(filter = "") {
        const query = filter ? `?filter=${encodeURIComponent(filter)}` : "";
        return this.request(`/runs${query}`);
    }
    getTree(runId) {
        return this.request(`/runs/${encodeURIComponent(runId)}/tree`);
    }
    getTraversals(runId) {
        return this.request(`/runs/${encodeURIComponent(runId)}/traversals`);
    }
    getThoughts(runId) {
        return this.request(`/runs/${encodeURIComponent(runId)}/thoughts`);
    }
    getAnnotations(runId) {
        return this.request(`/runs/${encodeURIComponent(runId)}/annotations`);
    }
    postAnnotation(runId, body) {
        return this.request(`/runs/${encodeURIComponent(runId)}/annotations`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(body),
        });
    }
    rederive(runId, body = {}) {
        return this.request(`/runs/${encodeURIComponent(runId)}/rederive`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(body),
        });
    }
}

// Shared test plumbing: fixture loading and a scripted fetch stub.
import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
const here = dirname(fileURLToPath(import.meta.url));
const fixturesDir = join(here, "..", "..", "tests", "fixtures");
export function fixture(name) {
    return JSON.parse(readFileSync(join(fixturesDir, name), "utf-8"));
}
/** Fetch stub: routes matched by method + exact path, misses return 404. */
export function stubFetch(routes, log = []) {
    return async (input, init) => {
        const method = init?.method ?? "GET";
        const path = input.replace(/^https?:\/\/[^/]+/, "");
        log.push({ method, path, body: init?.body ? JSON.parse(String(init.body)) : undefined });
        const route = routes.find((r) => r.method === method && r.path === path);
        if (!route) {
            return new Response(JSON.stringify({ detail: `no stub for ${method} ${path}` }), { status: 404 });
        }
        return new Response(JSON.stringify(route.body), {
            status: route.status ?? 200,
            headers: { "Content-Type": "application/json" },
        });
    };
}
export function offlineFetch() {
    return async () => {
        throw new TypeError("fetch failed: connection refused");
    };
}

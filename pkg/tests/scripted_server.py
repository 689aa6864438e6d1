"""Threaded scripted chat-completion server for transport tests.

Responses are pure functions of the request body, so a recorded cassette
replays to the same bytes the live server produced. Failure injection
covers the retry paths.
"""

from __future__ import annotations

import hashlib
import json
import threading
from contextlib import contextmanager
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from journey_forge.model.serialize import canonical_json_line


class ScriptedState:
    def __init__(self):
        self.fail_next = 0  # respond 500 to this many requests
        self.duplicate_candidates = False
        self.malformed = False
        self.requests: list[dict] = []
        self.lock = threading.Lock()


def _content_for(body: dict, state: ScriptedState) -> list[str]:
    n = int(body.get("n", 1))
    prompt = body["messages"][0]["content"]
    digest = hashlib.sha256(canonical_json_line(body).encode()).hexdigest()[:8]
    if "VERDICT" in prompt:
        verdict = "NO the step contradicts the prior line." if "wrong" in prompt else "YES consistent with the prior steps."
        return [verdict] * n
    if "POLISH" in prompt:
        draft = prompt.split("Draft:\n", 1)[1].rsplit("\n\nRewritten draft:", 1)[0]
        return [draft] * n
    if state.duplicate_candidates:
        return [f"identical step {digest}"] * n
    return [f"Combine like terms to reach state {digest}-{i}" for i in range(n)]


def _make_handler(state: ScriptedState):
    class Handler(BaseHTTPRequestHandler):
        def do_POST(self):
            length = int(self.headers.get("Content-Length", 0))
            body = json.loads(self.rfile.read(length))
            with state.lock:
                state.requests.append(body)
                if state.fail_next > 0:
                    state.fail_next -= 1
                    self.send_response(500)
                    self.end_headers()
                    self.wfile.write(b"injected failure")
                    return
            if state.malformed:
                payload = b'{"unexpected": "shape"}'
            else:
                doc = {"choices": [{"message": {"content": c}} for c in _content_for(body, state)]}
                payload = json.dumps(doc).encode()
            self.send_response(200)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(payload)))
            self.end_headers()
            self.wfile.write(payload)

        def log_message(self, *args):  # keep pytest output clean
            pass

    return Handler


@contextmanager
def scripted_server():
    state = ScriptedState()
    server = ThreadingHTTPServer(("127.0.0.1", 0), _make_handler(state))
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield f"http://127.0.0.1:{server.server_port}/v1/chat", state
    finally:
        server.shutdown()
        thread.join(timeout=5)

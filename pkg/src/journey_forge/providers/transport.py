"""Wire transports: live HTTP, recording, and cassette replay.

A transport maps one chat-completion request body to one response body.
Cassettes are JSONL files of {request_hash, request, response, timestamp};
lookups go by the hash of the canonical request body, so a replayed build
sees exactly the completions the recorded build saw.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from pathlib import Path
from typing import Any, Optional, Protocol

import requests

from ..model.serialize import canonical_json_line
from .base import CassetteMissError, TransportError


def request_hash(body: dict[str, Any]) -> str:
    return hashlib.sha256(canonical_json_line(body).encode("utf-8")).hexdigest()


class Transport(Protocol):
    def __call__(self, body: dict[str, Any]) -> dict[str, Any]: ...


class TokenBucket:
    """At most ``rate`` requests per second, shared across threads."""

    def __init__(self, rate: float, capacity: Optional[float] = None):
        self.rate = rate
        self.capacity = capacity if capacity is not None else max(1.0, rate)
        self._tokens = self.capacity
        self._last = time.monotonic()
        self._lock = threading.Lock()

    def acquire(self) -> None:
        while True:
            with self._lock:
                now = time.monotonic()
                self._tokens = min(self.capacity, self._tokens + (now - self._last) * self.rate)
                self._last = now
                if self._tokens >= 1.0:
                    self._tokens -= 1.0
                    return
                wait = (1.0 - self._tokens) / self.rate
            time.sleep(wait)


class LiveTransport:
    """POSTs chat-completion bodies to a configurable URL with retries.

    The bearer token is read from the environment variable named in the
    configuration; transient failures (connection errors, 429, 5xx) retry
    with exponential backoff before surfacing as TransportError.
    """

    def __init__(
        self,
        url: str,
        token_env: str = "JOURNEY_FORGE_API_TOKEN",
        max_retries: int = 3,
        timeout: float = 60.0,
        requests_per_second: Optional[float] = None,
        backoff_base: float = 0.2,
    ):
        self.url = url
        self.token_env = token_env
        self.max_retries = max_retries
        self.timeout = timeout
        self.backoff_base = backoff_base
        self._bucket = TokenBucket(requests_per_second) if requests_per_second else None

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        token = os.environ.get(self.token_env, "")
        if token:
            headers["Authorization"] = f"Bearer {token}"
        return headers

    def __call__(self, body: dict[str, Any]) -> dict[str, Any]:
        last_error: Optional[Exception] = None
        for attempt in range(self.max_retries + 1):
            if self._bucket is not None:
                self._bucket.acquire()
            try:
                response = requests.post(self.url, json=body, headers=self._headers(), timeout=self.timeout)
            except requests.RequestException as exc:
                last_error = exc
            else:
                if response.status_code == 200:
                    try:
                        return response.json()
                    except ValueError as exc:
                        raise TransportError(f"non-JSON response from {self.url}: {response.text[:200]!r}") from exc
                if response.status_code in (429,) or response.status_code >= 500:
                    last_error = TransportError(f"HTTP {response.status_code} from {self.url}")
                else:
                    raise TransportError(f"HTTP {response.status_code} from {self.url}: {response.text[:200]!r}")
            if attempt < self.max_retries:
                time.sleep(self.backoff_base * (2**attempt))
        raise TransportError(f"request to {self.url} failed after {self.max_retries + 1} attempts: {last_error}")


class RecordingTransport:
    """Delegates to a live transport and appends every exchange to a cassette."""

    def __init__(self, inner: Transport, cassette_path: Path | str):
        self.inner = inner
        self.cassette_path = Path(cassette_path)
        self._lock = threading.Lock()

    def __call__(self, body: dict[str, Any]) -> dict[str, Any]:
        response = self.inner(body)
        record = {
            "request_hash": request_hash(body),
            "request": body,
            "response": response,
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        }
        with self._lock:
            self.cassette_path.parent.mkdir(parents=True, exist_ok=True)
            with self.cassette_path.open("a", encoding="utf-8") as handle:
                handle.write(canonical_json_line(record) + "\n")
        return response


class ReplayTransport:
    """Serves responses from a cassette; misses are hard errors.

    A request hash recorded several times (the live endpoint sampled
    different completions for identical requests) replays its responses in
    recorded order, then sticks on the last one, so a replayed build walks
    the exact sequence the recorded build saw.
    """

    def __init__(self, cassette_path: Path | str):
        self.cassette_path = Path(cassette_path)
        self._lock = threading.Lock()
        self._responses: dict[str, list[dict[str, Any]]] = {}
        if not self.cassette_path.exists():
            raise CassetteMissError(f"cassette not found: {self.cassette_path}")
        with self.cassette_path.open("r", encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                self._responses.setdefault(record["request_hash"], []).append(record["response"])

    def __call__(self, body: dict[str, Any]) -> dict[str, Any]:
        key = request_hash(body)
        with self._lock:
            queue = self._responses.get(key)
            if not queue:
                raise CassetteMissError(f"no recorded response for request hash {key[:12]}… in {self.cassette_path}")
            response = queue.pop(0) if len(queue) > 1 else queue[0]
        return response

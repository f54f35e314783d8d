"""Chat-completion transports: live HTTP, recorded fixtures, scripted stubs.

The acceptance suite runs with zero network; fixtures and stubs exist so
every LLM-facing code path can be exercised offline.  Live credentials
come from CHILDPLAY_API_KEY and the base URL from CHILDPLAY_API_BASE.
"""

from __future__ import annotations

import json
import os
from typing import Callable, Optional, Union

API_KEY_ENV = "CHILDPLAY_API_KEY"
API_BASE_ENV = "CHILDPLAY_API_BASE"
DEFAULT_API_BASE = "https://api.openai.com/v1"

# incremented by LiveTransport only; lets tests audit that fixture/stub
# runs never touch the network
LIVE_REQUEST_COUNT = 0


class TransportError(RuntimeError):
    retryable = True


class FixtureMismatch(TransportError):
    """A replayed request did not match the recording; retrying cannot help."""

    retryable = False


class Transport:
    def complete(self, request: dict) -> str:
        """Send one chat request {model, temperature, messages}; return the
        completion text verbatim."""
        raise NotImplementedError


class StubTransport(Transport):
    """Scripted completions: a callable on the request, or a canned list."""

    def __init__(self, script: Union[Callable[[dict], str], list]):
        self._script = script
        self._cursor = 0
        self.requests: list = []

    def complete(self, request: dict) -> str:
        self.requests.append(request)
        if callable(self._script):
            return self._script(request)
        if self._cursor >= len(self._script):
            raise TransportError("stub transport ran out of replies")
        reply = self._script[self._cursor]
        self._cursor += 1
        return reply


class FixtureTransport(Transport):
    """Replay a recorded transcript deterministically.

    The transcript is a JSONL file (or list) of {"request": ..., "response":
    ...} entries in call order.  In replay the stored request must match the
    live one; ``record`` mode wraps another transport and captures traffic.
    """

    def __init__(self, fixture, mode: str = "replay", inner: Optional[Transport] = None):
        if mode not in ("replay", "record"):
            raise ValueError(f"unknown fixture mode: {mode!r}")
        self.mode = mode
        self.inner = inner
        self.path = None
        if mode == "replay":
            if isinstance(fixture, (str, os.PathLike)):
                self.path = fixture
                with open(fixture, encoding="utf-8") as handle:
                    self.entries = [json.loads(line) for line in handle if line.strip()]
            else:
                self.entries = list(fixture)
            self._cursor = 0
        else:
            if inner is None:
                raise ValueError("record mode needs an inner transport")
            self.path = fixture
            self.entries = []

    def complete(self, request: dict) -> str:
        if self.mode == "record":
            response = self.inner.complete(request)
            self.entries.append({"request": request, "response": response})
            with open(self.path, "a", encoding="utf-8") as handle:
                handle.write(
                    json.dumps({"request": request, "response": response}) + "\n"
                )
            return response
        if self._cursor >= len(self.entries):
            raise FixtureMismatch("fixture exhausted")
        entry = self.entries[self._cursor]
        self._cursor += 1
        if entry["request"] != request:
            raise FixtureMismatch(
                "request does not match the recording at entry "
                f"{self._cursor - 1}"
            )
        return entry["response"]


class LiveTransport(Transport):
    """Chat-completions-compatible JSON over HTTP.

    Safe for concurrent requests: each call is independent.
    """

    def __init__(
        self,
        endpoint: Optional[str] = None,
        api_key: Optional[str] = None,
        timeout: float = 60.0,
    ):
        base = endpoint or os.environ.get(API_BASE_ENV, DEFAULT_API_BASE)
        self.url = base.rstrip("/") + "/chat/completions"
        self.api_key = api_key or os.environ.get(API_KEY_ENV)
        self.timeout = timeout

    def complete(self, request: dict) -> str:
        global LIVE_REQUEST_COUNT
        import requests

        if not self.api_key:
            raise TransportError(f"no API key: set {API_KEY_ENV}")
        LIVE_REQUEST_COUNT += 1
        try:
            response = requests.post(
                self.url,
                headers={
                    "Authorization": f"Bearer {self.api_key}",
                    "Content-Type": "application/json",
                },
                json=request,
                timeout=self.timeout,
            )
            response.raise_for_status()
            payload = response.json()
            return payload["choices"][0]["message"]["content"]
        except Exception as error:  # noqa: BLE001 - normalized below
            raise TransportError(str(error)) from error


def make_transport(
    name: str,
    fixture_path: Optional[str] = None,
    stub_script=None,
    endpoint: Optional[str] = None,
) -> Transport:
    if name == "live":
        return LiveTransport(endpoint=endpoint)
    if name == "fixture":
        if fixture_path is None:
            raise ValueError("fixture transport needs a fixture path")
        return FixtureTransport(fixture_path)
    if name == "stub":
        return StubTransport(stub_script if stub_script is not None else [])
    raise ValueError(f"unknown transport: {name!r}")

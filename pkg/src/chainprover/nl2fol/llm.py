"""Chat-completion client with an HTTP transport and a scripted file-backed double."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import httpx

from chainprover.errors import TransportError

COMPLETIONS_PATH = "/v1/chat/completions"


@dataclass(frozen=True)
class LlmEndpointConfig:
    base_url: str
    model_name: str
    api_key_env_var: str = "OPENAI_API_KEY"
    temperature: float = 0.0
    request_timeout_ms: int = 60_000


class Transport(Protocol):
    def send(self, body: dict) -> dict: ...


class HttpTransport:
    def __init__(self, cfg: LlmEndpointConfig):
        self.cfg = cfg

    def send(self, body: dict) -> dict:
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.cfg.api_key_env_var)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        url = self.cfg.base_url.rstrip("/") + COMPLETIONS_PATH
        try:
            resp = httpx.post(url, json=body, headers=headers, timeout=self.cfg.request_timeout_ms / 1000)
            resp.raise_for_status()
            return resp.json()
        except (httpx.HTTPError, ValueError) as e:
            raise TransportError(f"{url}: {e}") from e


class ScriptedTransport:
    """Replays canned completions in order and records every request body.

    Script entries are either completion text or ``{"transport_error": msg}``.
    """

    def __init__(self, responses):
        self.responses = list(responses)
        self.requests: list[dict] = []

    @classmethod
    def from_file(cls, path: str | Path) -> "ScriptedTransport":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(data["responses"] if isinstance(data, dict) else data)

    def send(self, body: dict) -> dict:
        self.requests.append(json.loads(json.dumps(body)))
        if not self.responses:
            raise TransportError("script exhausted")
        item = self.responses.pop(0)
        if isinstance(item, dict) and "transport_error" in item:
            raise TransportError(item["transport_error"])
        return {"choices": [{"message": {"role": "assistant", "content": item}}]}


class ChatClient:
    def __init__(self, cfg: LlmEndpointConfig, transport: Transport | None = None):
        self.cfg = cfg
        self.transport = transport or HttpTransport(cfg)

    def request_body(self, prompt: str) -> dict:
        return {
            "model": self.cfg.model_name,
            "temperature": self.cfg.temperature,
            "messages": [{"role": "user", "content": prompt}],
        }

    def complete(self, prompt: str) -> str:
        data = self.transport.send(self.request_body(prompt))
        try:
            return data["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as e:
            raise TransportError(f"malformed completion response: {e}") from e

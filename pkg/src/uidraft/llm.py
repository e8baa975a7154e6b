"""Chat-completion gateway with live, record, and replay modes.

Live mode speaks an OpenAI-compatible chat-completions wire format; record
mode additionally appends every exchange to a JSONL fixture keyed by a
content hash of the prompt; replay mode serves recorded exchanges with no
network access at all. Fixture format is documented in docs/fixtures.md.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Callable, Sequence

from .errors import AuthError, FixtureMiss, LlmUnavailable
from .tokens import TokenEstimator, estimate_tokens  # noqa: F401  (re-exported op)

PromptParts = Sequence[tuple[str, str]]

MODES = ("live", "record", "replay")

ENV_ENDPOINT = "GUIDE_LLM_ENDPOINT"
ENV_API_KEY = "GUIDE_LLM_API_KEY"
ENV_MODEL = "GUIDE_LLM_MODEL"
ENV_MODE = "GUIDE_LLM_MODE"

DEFAULT_MAX_OUTPUT_TOKENS = 4095

# transport(prompt_parts, cfg, max_output_tokens, temperature)
#   -> (response_text, prompt_tokens, completion_tokens, model_id)
Transport = Callable[[PromptParts, "GatewayConfig", int, float | None], tuple[str, int, int, str]]


@dataclass(frozen=True)
class ChatExchange:
    exchange_id: str
    prompt_parts: tuple[tuple[str, str], ...]
    response_text: str
    prompt_tokens: int
    completion_tokens: int
    mode: str
    model_id: str
    timestamp: str
    attempts: int = 1

    def prompt_text(self) -> str:
        return "\n".join(text for _, text in self.prompt_parts)

    def to_dict(self) -> dict[str, Any]:
        return {
            "exchange_id": self.exchange_id,
            "prompt_parts": [{"role": r, "text": t} for r, t in self.prompt_parts],
            "response_text": self.response_text,
            "usage": {
                "prompt_tokens": self.prompt_tokens,
                "completion_tokens": self.completion_tokens,
            },
            "mode": self.mode,
            "model_id": self.model_id,
            "timestamp": self.timestamp,
            "attempts": self.attempts,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ChatExchange":
        return cls(
            exchange_id=d["exchange_id"],
            prompt_parts=tuple((p["role"], p["text"]) for p in d["prompt_parts"]),
            response_text=d["response_text"],
            prompt_tokens=d["usage"]["prompt_tokens"],
            completion_tokens=d["usage"]["completion_tokens"],
            mode=d["mode"],
            model_id=d["model_id"],
            timestamp=d["timestamp"],
            attempts=d.get("attempts", 1),
        )


@dataclass(frozen=True)
class GatewayConfig:
    endpoint: str = ""
    api_key_env: str = ENV_API_KEY
    model_id: str = "gpt-4o"
    max_output_tokens: int = DEFAULT_MAX_OUTPUT_TOKENS
    timeout_s: float = 60.0
    max_attempts: int = 3
    backoff_s: float = 0.5
    temperature: float | None = None

    def __post_init__(self):
        if self.max_output_tokens <= 0:
            raise ValueError("max_output_tokens must be positive")
        if self.timeout_s <= 0:
            raise ValueError("timeout_s must be positive")
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be at least 1")

    @classmethod
    def from_env(cls) -> "GatewayConfig":
        return cls(
            endpoint=os.environ.get(ENV_ENDPOINT, ""),
            model_id=os.environ.get(ENV_MODEL, "gpt-4o"),
        )

    def resolve_credential(self) -> str:
        key = os.environ.get(self.api_key_env, "")
        if not key:
            raise AuthError(f"credential env var {self.api_key_env} is not set")
        return key


def fixture_key(prompt_parts: PromptParts) -> str:
    """SHA-256 over canonicalized prompt parts; the replay lookup key."""
    canonical = json.dumps(
        [{"role": r, "text": t} for r, t in prompt_parts],
        sort_keys=True,
        ensure_ascii=False,
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _http_transport(prompt_parts: PromptParts, cfg: GatewayConfig,
                    max_output_tokens: int, temperature: float | None) -> tuple[str, int, int, str]:
    import requests

    url = cfg.endpoint.rstrip("/")
    if not url.endswith("/chat/completions"):
        url = url + "/chat/completions"
    body: dict[str, Any] = {
        "model": cfg.model_id,
        "messages": [{"role": r, "content": t} for r, t in prompt_parts],
        "max_tokens": max_output_tokens,
    }
    if temperature is not None:
        body["temperature"] = temperature
    resp = requests.post(
        url,
        json=body,
        headers={"Authorization": f"Bearer {cfg.resolve_credential()}"},
        timeout=cfg.timeout_s,
    )
    if resp.status_code in (401, 403):
        raise AuthError(f"endpoint rejected credentials ({resp.status_code})")
    if resp.status_code == 429 or resp.status_code >= 500:
        raise _Transient(f"HTTP {resp.status_code}")
    if resp.status_code >= 400:
        raise LlmUnavailable(f"request rejected: HTTP {resp.status_code} {resp.text[:300]}")
    data = resp.json()
    text = data["choices"][0]["message"]["content"]
    usage = data.get("usage", {})
    return (
        text,
        int(usage.get("prompt_tokens", 0)),
        int(usage.get("completion_tokens", 0)),
        str(data.get("model", cfg.model_id)),
    )


class _Transient(Exception):
    """Internal marker for retryable transport failures."""


class Gateway:
    """Shareable chat gateway; concurrent complete() calls are independent."""

    def __init__(
        self,
        config: GatewayConfig,
        mode: str = "replay",
        fixture_path: str | Path | None = None,
        transport: Transport | None = None,
        clock: Callable[[], str] | None = None,
        sleeper: Callable[[float], None] = time.sleep,
    ):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        if mode in ("record", "replay") and fixture_path is None:
            raise ValueError(f"{mode} mode requires a fixture path")
        self.config = config
        self.mode = mode
        self.fixture_path = Path(fixture_path) if fixture_path else None
        self._transport = transport or _http_transport
        self._clock = clock or (lambda: time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()))
        self._sleep = sleeper
        self._fixture_lock = threading.Lock()
        self._fixture_index: dict[str, dict] | None = None

    # -- fixture handling ----------------------------------------------------

    def _load_fixture_index(self) -> dict[str, dict]:
        if self._fixture_index is None:
            index: dict[str, dict] = {}
            if self.fixture_path and self.fixture_path.exists():
                with self.fixture_path.open(encoding="utf-8") as fh:
                    for line in fh:
                        line = line.strip()
                        if not line:
                            continue
                        entry = json.loads(line)
                        index[entry["key"]] = entry["exchange"]
            self._fixture_index = index
        return self._fixture_index

    def _record(self, key: str, exchange: ChatExchange) -> None:
        with self._fixture_lock:
            index = self._load_fixture_index()
            if key in index:
                return
            index[key] = exchange.to_dict()
            assert self.fixture_path is not None
            self.fixture_path.parent.mkdir(parents=True, exist_ok=True)
            with self.fixture_path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps({"key": key, "exchange": exchange.to_dict()},
                                    ensure_ascii=False) + "\n")

    # -- completion ----------------------------------------------------------

    def complete(
        self,
        prompt_parts: PromptParts,
        max_output_tokens: int | None = None,
        temperature: float | None = None,
    ) -> ChatExchange:
        if not prompt_parts:
            raise ValueError("prompt_parts must be non-empty")
        parts = tuple((r, t) for r, t in prompt_parts)
        key = fixture_key(parts)

        if self.mode == "replay":
            index = self._load_fixture_index()
            if key not in index:
                raise FixtureMiss(key)
            stored = ChatExchange.from_dict(index[key])
            # Recorded usage is carried verbatim; only the mode tag changes.
            return ChatExchange(
                exchange_id=stored.exchange_id,
                prompt_parts=stored.prompt_parts,
                response_text=stored.response_text,
                prompt_tokens=stored.prompt_tokens,
                completion_tokens=stored.completion_tokens,
                mode="replay",
                model_id=stored.model_id,
                timestamp=stored.timestamp,
                attempts=stored.attempts,
            )

        limit = max_output_tokens or self.config.max_output_tokens
        temp = temperature if temperature is not None else self.config.temperature
        last_error: Exception | None = None
        attempts = 0
        for attempt in range(self.config.max_attempts):
            attempts = attempt + 1
            try:
                text, ptok, ctok, model = self._transport(parts, self.config, limit, temp)
                exchange = ChatExchange(
                    exchange_id=uuid.uuid4().hex,
                    prompt_parts=parts,
                    response_text=text,
                    prompt_tokens=ptok,
                    completion_tokens=ctok,
                    mode=self.mode,
                    model_id=model,
                    timestamp=self._clock(),
                    attempts=attempts,
                )
                if self.mode == "record":
                    exchange = replace(exchange, exchange_id=_stable_id(key))
                    self._record(key, exchange)
                return exchange
            except AuthError:
                raise
            except LlmUnavailable:
                raise  # non-retryable rejection
            except _Transient as exc:
                last_error = exc
            except Exception as exc:  # transport/socket errors are retryable
                last_error = exc
            if attempt + 1 < self.config.max_attempts:
                self._sleep(self.config.backoff_s * (2 ** attempt))
        raise LlmUnavailable(
            f"gave up after {attempts} attempts: {last_error}"
        ) from last_error


def _stable_id(key: str) -> str:
    # Recorded fixtures must be byte-stable across regeneration runs.
    return "ex-" + key[:16]

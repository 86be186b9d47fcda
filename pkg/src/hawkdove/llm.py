"""Grammar-constrained completion backends.

Two backends sit behind one contract: an HTTP adapter for a
grammar-capable inference server and a deterministic scripted mock for
offline runs and tests. The client never trusts a backend to have honored
the grammar; constrained output is re-validated locally and a
non-conforming backend is a hard error.

HTTP wire contract: POST JSON ``{prompt, grammar, n_predict, temperature,
seed}`` to the configured URL; the response JSON must carry a ``content``
string. URL, auth header and timeout come from HttpConfig (or the
HAWKDOVE_LLM_URL / HAWKDOVE_LLM_AUTH_HEADER / HAWKDOVE_LLM_AUTH_TOKEN
environment variables).
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import requests

from .grammar import parse_grammar


@dataclass(frozen=True)
class CompletionRequest:
    prompt: str
    grammar_text: str = ""  # empty means unconstrained
    max_tokens: int = 512
    temperature: float = 0.0
    seed: int = 1337

    def __post_init__(self) -> None:
        if self.max_tokens < 1:
            raise ValueError("max_tokens must be >= 1")
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")


@dataclass(frozen=True)
class CompletionResult:
    text: str
    backend_id: str
    latency: float  # seconds


class CompletionError(Exception):
    pass


class TransportError(CompletionError):
    """Network-level failure talking to the backend (retried)."""


class BackendRefusalError(CompletionError):
    """The backend answered but refused or returned an unusable payload."""


class NonConformingOutputError(CompletionError):
    """Constrained output failed local grammar validation; the backend is broken."""


class Backend(Protocol):
    backend_id: str

    def complete(self, request: CompletionRequest) -> str: ...


# ---------------------------------------------------------------------------
# Scripted mock backend


@dataclass(frozen=True)
class MockRule:
    when: str  # substring matched against the current question / line prefix
    answer: str  # answer label (or stance class) to choose


@dataclass(frozen=True)
class MockTextRule:
    when: str  # substring matched against the prompt
    text: str


@dataclass(frozen=True)
class MockScript:
    """Deterministic behaviour table for the mock backend.

    ``rules`` drive constrained choices: the first rule whose ``when`` is a
    substring of the current question (the text after the last ``Q: `` up to
    its newline, or the trailing partial line when no question was emitted)
    selects the alternative whose first literal equals ``answer``. With no
    matching rule the first alternative is taken. ``text_rules`` and
    ``default_text`` drive unconstrained completions, matched on the prompt.
    """

    rules: tuple[MockRule, ...] = ()
    text_rules: tuple[MockTextRule, ...] = ()
    default_text: str = ""

    @classmethod
    def from_dict(cls, obj: dict) -> "MockScript":
        return cls(
            rules=tuple(MockRule(r["when"], r["answer"]) for r in obj.get("rules", [])),
            text_rules=tuple(MockTextRule(r["when"], r["text"]) for r in obj.get("text_rules", [])),
            default_text=obj.get("default_text", ""),
        )

    @classmethod
    def from_file(cls, path: Path | str) -> "MockScript":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def _choice_context(emitted: str) -> str:
    """The text a script rule should match at a choice point."""
    q = emitted.rfind("Q: ")
    if q != -1:
        end = emitted.find("\n", q)
        return emitted[q + 3 : end if end != -1 else len(emitted)]
    nl = emitted.rfind("\n")
    return emitted[nl + 1 :]


class MockBackend:
    """Pure function of (request, script): byte-identical across runs."""

    backend_id = "mock"

    def __init__(self, script: MockScript | None = None):
        self.script = script or MockScript()

    def complete(self, request: CompletionRequest) -> str:
        if not request.grammar_text:
            for rule in self.script.text_rules:
                if rule.when in request.prompt:
                    return rule.text
            return self.script.default_text
        rules = parse_grammar(request.grammar_text)

        def choose(first_terminals: list[str], emitted: str) -> int:
            context = _choice_context(emitted)
            stripped = [t[:-1] if t.endswith("\n") else t for t in first_terminals]
            for rule in self.script.rules:
                if rule.when in context and rule.answer in stripped:
                    return stripped.index(rule.answer)
            return 0

        return rules.expand(choose)


# ---------------------------------------------------------------------------
# HTTP backend


@dataclass(frozen=True)
class HttpConfig:
    url: str
    auth_header: str = ""
    auth_token: str = ""
    timeout: float = 60.0

    @classmethod
    def from_env(cls) -> "HttpConfig":
        url = os.environ.get("HAWKDOVE_LLM_URL", "")
        if not url:
            raise ValueError("HAWKDOVE_LLM_URL is not set")
        return cls(
            url=url,
            auth_header=os.environ.get("HAWKDOVE_LLM_AUTH_HEADER", ""),
            auth_token=os.environ.get("HAWKDOVE_LLM_AUTH_TOKEN", ""),
            timeout=float(os.environ.get("HAWKDOVE_LLM_TIMEOUT", "60")),
        )


class HttpBackend:
    backend_id = "http"

    def __init__(self, config: HttpConfig, session: requests.Session | None = None):
        self.config = config
        self.session = session or requests.Session()
        self.backend_id = f"http:{config.url}"

    def complete(self, request: CompletionRequest) -> str:
        payload = {
            "prompt": request.prompt,
            "grammar": request.grammar_text,
            "n_predict": request.max_tokens,
            "temperature": request.temperature,
            "seed": request.seed,
        }
        headers = {}
        if self.config.auth_header:
            headers[self.config.auth_header] = self.config.auth_token
        try:
            resp = self.session.post(
                self.config.url, json=payload, headers=headers, timeout=self.config.timeout
            )
        except requests.RequestException as exc:
            raise TransportError(f"request to {self.config.url} failed: {exc}") from exc
        if resp.status_code >= 500:
            raise TransportError(f"server error {resp.status_code} from {self.config.url}")
        if resp.status_code != 200:
            raise BackendRefusalError(f"backend refused with status {resp.status_code}")
        try:
            body = resp.json()
        except ValueError as exc:
            raise BackendRefusalError(f"non-JSON response: {exc}") from exc
        content = body.get("content") if isinstance(body, dict) else None
        if not isinstance(content, str):
            raise BackendRefusalError("response JSON lacks a 'content' string")
        return content


# ---------------------------------------------------------------------------
# Client with retries and local validation


class LlmClient:
    """Completion front door: retry transport failures, re-validate grammars.

    Even a conforming server's constrained output is checked locally against
    the request grammar; the guarantee that generation cannot leave the
    authored decision paths must not depend on backend correctness.
    """

    def __init__(
        self,
        backend: Backend,
        *,
        max_attempts: int = 3,
        backoff: float = 0.2,
        validate: bool = True,
    ):
        if max_attempts < 1:
            raise ValueError("max_attempts must be >= 1")
        self.backend = backend
        self.max_attempts = max_attempts
        self.backoff = backoff
        self.validate = validate

    def complete(self, request: CompletionRequest) -> CompletionResult:
        start = time.monotonic()
        last_exc: TransportError | None = None
        for attempt in range(self.max_attempts):
            try:
                text = self.backend.complete(request)
                break
            except TransportError as exc:
                last_exc = exc
                if attempt + 1 < self.max_attempts:
                    time.sleep(self.backoff * (2**attempt))
        else:
            raise TransportError(
                f"backend failed after {self.max_attempts} attempts: {last_exc}"
            ) from last_exc
        if request.grammar_text and self.validate:
            rules = parse_grammar(request.grammar_text)
            if not rules.accepts(text):
                raise NonConformingOutputError(
                    f"backend {self.backend.backend_id} returned text outside the grammar"
                )
        return CompletionResult(
            text=text, backend_id=self.backend.backend_id, latency=time.monotonic() - start
        )

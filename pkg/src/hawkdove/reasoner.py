"""Classification pipeline: retrieve topics, walk trees, synthesize classes.

For each paragraph the engine ranks taxonomy topics, walks every selected
topic's decision tree through one grammar-constrained completion, then
produces a paragraph-level class plus one class per sentence. Synthesis
runs either as a second constrained completion (mode "llm") or as the
deterministic fallback (mode "deterministic"): the modal trace stance,
ties and empty trace lists resolving to neutral, inherited by every
sentence.

Paragraphs are independent work units: classification is safe to run
concurrently and results are assembled in paragraph order regardless of
completion order. With the scripted mock backend the whole pipeline is a
pure function of (document, taxonomy, config, script).
"""

from __future__ import annotations

import datetime as dt
import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .corpus import Document, split_paragraphs, split_sentences
from .grammar import (
    CompiledGrammar,
    Step,
    TranscriptParseError,
    TreePath,
    compile_tree,
    parse_transcript,
)
from .llm import (
    Backend,
    CompletionError,
    CompletionRequest,
    HttpBackend,
    HttpConfig,
    LlmClient,
    MockBackend,
    MockScript,
)
from .retrieval import PhraseIndex, TopicRanking, hybrid_ranking, select_topics
from .taxonomy import Stance, Taxonomy, Terminal, Topic

DEFAULT_TREE_WALK_PROMPT = """\
You are assessing a passage of central bank communication.
Read the paragraph, then work through the questions for the topic below.
Answer each question by choosing exactly one of the allowed answers.

Topic: {surface}

Paragraph:
{paragraph}

Answer every question, then finish with the assessment line.
"""

DEFAULT_SYNTHESIS_PROMPT = """\
You are assessing a passage of central bank communication.
Classify the paragraph as a whole and then each sentence as one of:
dovish, leaning dovish, neutral, leaning hawkish, hawkish.
Use the topic assessments as guidance.

Paragraph:
{paragraph}

Sentences:
{sentences}

Topic assessments:
{traces}

Reply with one PARAGRAPH line followed by one line per sentence.
"""


@dataclass(frozen=True)
class PromptTemplates:
    tree_walk: str = DEFAULT_TREE_WALK_PROMPT
    synthesis: str = DEFAULT_SYNTHESIS_PROMPT


@dataclass(frozen=True)
class EngineConfig:
    """Pipeline settings; serializable to/from a JSON config file."""

    backend: str = "mock"  # "mock" | "http"
    mock_script: str = ""  # path to a mock script JSON, empty for defaults
    top_k_phrases: int = 10
    k_rrf: float = 60.0
    max_topics: int = 3
    min_score: float = 0.0
    use_dense: bool = True
    synthesis_mode: str = "llm"  # "llm" | "deterministic"
    max_attempts: int = 3
    backoff: float = 0.2
    temperature: float = 0.0
    max_tokens: int = 1024
    seed: int = 1337
    jobs: int = 1
    prompts: PromptTemplates = field(default_factory=PromptTemplates)

    def __post_init__(self) -> None:
        if self.backend not in ("mock", "http"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.synthesis_mode not in ("llm", "deterministic"):
            raise ValueError(f"unknown synthesis mode {self.synthesis_mode!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    @classmethod
    def from_file(cls, path: Path | str) -> "EngineConfig":
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
        prompts = obj.pop("prompts", {})
        templates = PromptTemplates(
            tree_walk=prompts.get("tree_walk", DEFAULT_TREE_WALK_PROMPT),
            synthesis=prompts.get("synthesis", DEFAULT_SYNTHESIS_PROMPT),
        )
        known = {f for f in cls.__dataclass_fields__ if f != "prompts"}
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(prompts=templates, **obj)


@dataclass(frozen=True)
class TopicTrace:
    mnemonic: str
    path: TreePath
    assessment: Terminal

    def to_dict(self) -> dict:
        return {
            "mnemonic": self.mnemonic,
            "steps": [{"question": s.question, "answer": s.answer} for s in self.path.steps],
            "stance": self.assessment.stance.value,
            "rationale": self.assessment.rationale,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "TopicTrace":
        terminal = Terminal(Stance.from_value(obj["stance"]), obj.get("rationale", ""))
        steps = tuple(Step(s["question"], s["answer"]) for s in obj.get("steps", []))
        return cls(
            mnemonic=obj["mnemonic"],
            path=TreePath(steps=steps, terminal=terminal, answer_indices=()),
            assessment=terminal,
        )


@dataclass(frozen=True)
class ParagraphResult:
    paragraph_index: int
    text: str
    topics: TopicRanking
    traces: tuple[TopicTrace, ...]
    paragraph_class: Stance
    sentence_classes: tuple[tuple[str, Stance], ...]

    def to_dict(self) -> dict:
        return {
            "paragraph_index": self.paragraph_index,
            "text": self.text,
            "topics": self.topics.to_list(),
            "traces": [t.to_dict() for t in self.traces],
            "paragraph_class": self.paragraph_class.value,
            "sentence_classes": [
                {"sentence": s, "stance": c.value} for s, c in self.sentence_classes
            ],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "ParagraphResult":
        return cls(
            paragraph_index=obj["paragraph_index"],
            text=obj["text"],
            topics=TopicRanking.from_list(obj.get("topics", [])),
            traces=tuple(TopicTrace.from_dict(t) for t in obj.get("traces", [])),
            paragraph_class=Stance.from_value(obj["paragraph_class"]),
            sentence_classes=tuple(
                (s["sentence"], Stance.from_value(s["stance"])) for s in obj["sentence_classes"]
            ),
        )


@dataclass(frozen=True)
class DocumentResult:
    doc_id: str
    date: dt.date
    doc_type: str
    paragraphs: tuple[ParagraphResult, ...]
    warnings: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "date": self.date.isoformat(),
            "doc_type": self.doc_type,
            "warnings": list(self.warnings),
            "paragraphs": [p.to_dict() for p in self.paragraphs],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "DocumentResult":
        return cls(
            doc_id=obj["doc_id"],
            date=dt.date.fromisoformat(obj["date"]),
            doc_type=obj["doc_type"],
            paragraphs=tuple(ParagraphResult.from_dict(p) for p in obj["paragraphs"]),
            warnings=tuple(obj.get("warnings", [])),
        )


def synthesis_grammar(n_sentences: int) -> str:
    """Grammar whose language is exactly the 5^(1 + n_sentences) class assignments.

    One ``PARAGRAPH: <class>`` line, then ``S<i>: <class>`` per sentence,
    indices from 0.
    """
    if n_sentences < 0:
        raise ValueError("n_sentences must be >= 0")
    seq = ['"PARAGRAPH: " cls "\\n"']
    for i in range(n_sentences):
        seq.append(f'"S{i}: " cls "\\n"')
    alts = " | ".join(f'"{s.value}"' for s in Stance)
    return f"root ::= {' '.join(seq)}\ncls ::= ({alts})\n"


class SynthesisParseError(Exception):
    pass


def parse_synthesis(text: str, n_sentences: int) -> tuple[Stance, list[Stance]]:
    lines = text.splitlines()
    if len(lines) != 1 + n_sentences:
        raise SynthesisParseError(f"expected {1 + n_sentences} lines, got {len(lines)}")
    if not lines[0].startswith("PARAGRAPH: "):
        raise SynthesisParseError("first line must start with 'PARAGRAPH: '")
    paragraph_class = Stance.from_value(lines[0][len("PARAGRAPH: ") :])
    sentence_classes = []
    for i, line in enumerate(lines[1:]):
        prefix = f"S{i}: "
        if not line.startswith(prefix):
            raise SynthesisParseError(f"line {i + 2} must start with {prefix!r}")
        sentence_classes.append(Stance.from_value(line[len(prefix) :]))
    return paragraph_class, sentence_classes


def deterministic_synthesis(traces: Sequence[TopicTrace]) -> Stance:
    """Modal stance across traces; ties between modes and empty inputs are neutral."""
    if not traces:
        return Stance.NEUTRAL
    counts = Counter(t.assessment.stance for t in traces)
    top = counts.most_common()
    if len(top) > 1 and top[0][1] == top[1][1]:
        return Stance.NEUTRAL
    return top[0][0]


def _render_traces(traces: Sequence[TopicTrace]) -> str:
    if not traces:
        return "(none)"
    lines = []
    for t in traces:
        lines.append(f"- {t.mnemonic}: {t.assessment.stance.value} ({t.assessment.rationale})")
    return "\n".join(lines)


def _render_sentences(sentences: Sequence[str]) -> str:
    return "\n".join(f"S{i}: {s}" for i, s in enumerate(sentences))


def walk_tree(
    topic: Topic,
    paragraph: str,
    client: LlmClient,
    *,
    templates: PromptTemplates | None = None,
    grammar: CompiledGrammar | None = None,
    max_tokens: int = 1024,
    temperature: float = 0.0,
    seed: int = 1337,
) -> TopicTrace:
    """One constrained completion producing the full transcript for a topic."""
    templates = templates or PromptTemplates()
    grammar = grammar or compile_tree(topic)
    prompt = templates.tree_walk.format(
        surface=topic.surface, paragraph=paragraph, mnemonic=topic.mnemonic
    )
    result = client.complete(
        CompletionRequest(
            prompt=prompt,
            grammar_text=grammar.grammar_text,
            max_tokens=max_tokens,
            temperature=temperature,
            seed=seed,
        )
    )
    path = parse_transcript(topic, result.text)
    return TopicTrace(mnemonic=topic.mnemonic, path=path, assessment=path.terminal)


def synthesize(
    paragraph: str,
    sentences: Sequence[str],
    traces: Sequence[TopicTrace],
    client: LlmClient | None = None,
    *,
    mode: str = "deterministic",
    templates: PromptTemplates | None = None,
    max_tokens: int = 1024,
    temperature: float = 0.0,
    seed: int = 1337,
) -> tuple[Stance, list[Stance]]:
    """Paragraph class plus one class per sentence.

    Mode "llm" issues one completion constrained to the synthesis grammar, so
    sentence classes come from the same call as the paragraph class. Mode
    "deterministic" (also the degradation fallback) applies the modal trace
    stance to the paragraph and every sentence.
    """
    if not sentences:
        raise ValueError("need at least one sentence")
    if mode == "llm":
        if client is None:
            raise ValueError("llm synthesis requires a client")
        templates = templates or PromptTemplates()
        prompt = templates.synthesis.format(
            paragraph=paragraph,
            sentences=_render_sentences(sentences),
            traces=_render_traces(traces),
        )
        result = client.complete(
            CompletionRequest(
                prompt=prompt,
                grammar_text=synthesis_grammar(len(sentences)),
                max_tokens=max_tokens,
                temperature=temperature,
                seed=seed,
            )
        )
        return parse_synthesis(result.text, len(sentences))
    stance = deterministic_synthesis(traces)
    return stance, [stance] * len(sentences)


def make_backend(config: EngineConfig) -> Backend:
    if config.backend == "mock":
        script = MockScript.from_file(config.mock_script) if config.mock_script else MockScript()
        return MockBackend(script)
    return HttpBackend(HttpConfig.from_env())


def make_client(config: EngineConfig, backend: Backend | None = None) -> LlmClient:
    return LlmClient(
        backend or make_backend(config),
        max_attempts=config.max_attempts,
        backoff=config.backoff,
    )


class Engine:
    """Reusable pipeline state: taxonomy, phrase index, grammar cache, client."""

    def __init__(
        self,
        taxonomy: Taxonomy,
        config: EngineConfig | None = None,
        client: LlmClient | None = None,
    ):
        self.taxonomy = taxonomy
        self.config = config or EngineConfig()
        self.client = client or make_client(self.config)
        self.index = PhraseIndex.from_taxonomy(taxonomy)
        self._grammars: dict[str, CompiledGrammar] = {}

    def grammar_for(self, mnemonic: str) -> CompiledGrammar:
        # compile_tree is pure, so a concurrent duplicate compute is harmless;
        # setdefault keeps the cache write atomic under paragraph parallelism.
        if mnemonic not in self._grammars:
            return self._grammars.setdefault(mnemonic, compile_tree(self.taxonomy.topic(mnemonic)))
        return self._grammars[mnemonic]

    def classify_paragraph(self, index: int, paragraph: str) -> tuple[ParagraphResult, list[str]]:
        cfg = self.config
        warnings: list[str] = []
        sentences = split_sentences(paragraph)
        ranking, rank_warnings = hybrid_ranking(
            self.taxonomy,
            self.index,
            paragraph,
            top_k_phrases=cfg.top_k_phrases,
            k_rrf=cfg.k_rrf,
            use_dense=cfg.use_dense,
        )
        warnings.extend(f"paragraph {index}: {w}" for w in rank_warnings)
        selected = select_topics(ranking, cfg.max_topics, cfg.min_score)
        traces: list[TopicTrace] = []
        degraded = False
        for mnemonic in selected:
            topic = self.taxonomy.topic(mnemonic)
            try:
                traces.append(
                    walk_tree(
                        topic,
                        paragraph,
                        self.client,
                        templates=cfg.prompts,
                        grammar=self.grammar_for(mnemonic),
                        max_tokens=cfg.max_tokens,
                        temperature=cfg.temperature,
                        seed=cfg.seed,
                    )
                )
            except (CompletionError, TranscriptParseError) as exc:
                degraded = True
                warnings.append(f"paragraph {index}: tree walk failed for {mnemonic}: {exc}")

        mode = cfg.synthesis_mode if not degraded else "deterministic"
        if degraded:
            warnings.append(f"paragraph {index}: degraded, deterministic synthesis used")
        try:
            paragraph_class, sentence_stances = synthesize(
                paragraph,
                sentences,
                traces,
                self.client,
                mode=mode,
                templates=cfg.prompts,
                max_tokens=cfg.max_tokens,
                temperature=cfg.temperature,
                seed=cfg.seed,
            )
        except (CompletionError, SynthesisParseError) as exc:
            warnings.append(f"paragraph {index}: synthesis failed ({exc}), deterministic fallback used")
            paragraph_class, sentence_stances = synthesize(
                paragraph, sentences, traces, mode="deterministic"
            )
        result = ParagraphResult(
            paragraph_index=index,
            text=paragraph,
            topics=ranking,
            traces=tuple(traces),
            paragraph_class=paragraph_class,
            sentence_classes=tuple(zip(sentences, sentence_stances)),
        )
        return result, warnings

    def classify_document(self, doc: Document) -> DocumentResult:
        paragraphs = split_paragraphs(doc.text)
        jobs = min(self.config.jobs, max(1, len(paragraphs)))
        if jobs == 1 or len(paragraphs) <= 1:
            outcomes = [self.classify_paragraph(i, p) for i, p in enumerate(paragraphs)]
        else:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                outcomes = list(pool.map(self.classify_paragraph, range(len(paragraphs)), paragraphs))
        results = tuple(r for r, _ in outcomes)
        warnings = tuple(w for _, ws in outcomes for w in ws)
        return DocumentResult(
            doc_id=doc.doc_id,
            date=doc.date,
            doc_type=doc.doc_type,
            paragraphs=results,
            warnings=warnings,
        )


def classify_document(
    doc: Document,
    taxonomy: Taxonomy,
    config: EngineConfig | None = None,
    client: LlmClient | None = None,
) -> DocumentResult:
    """One-shot document classification; builds a fresh Engine."""
    return Engine(taxonomy, config, client).classify_document(doc)

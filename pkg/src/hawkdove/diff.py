"""Similar-points / new-points partition between two classified documents.

Take the sentences carrying a given stance in a new document and match
each against the stance-matching sentences of a prior document: matches at
or above the similarity threshold land in the "similar" set (with their
best counterpart), the rest are the new points. The default similarity is
TF-IDF cosine over the two documents' sentences; dense embedders plug in
through the same callable contract.

Diff JSON: ``{stance, tau, similar: [{new, old, sim}], new_points: [...]}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .llm import CompletionRequest, LlmClient
from .reasoner import DocumentResult
from .retrieval import TfidfModel
from .taxonomy import Stance

SimilarityFn = Callable[[str, str], float]

DEFAULT_TAU = 0.7

DEFAULT_SUMMARY_PROMPT = """\
Summarise the common thread of the following sentences from a central bank
document in a few plain sentences.

Sentences:
{sentences}
"""


@dataclass(frozen=True)
class MatchedPair:
    new: str
    old: str
    similarity: float


@dataclass(frozen=True)
class DiffResult:
    stance_filter: frozenset[Stance]
    tau: float
    similar: tuple[MatchedPair, ...]
    new_points: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "stance": sorted(s.value for s in self.stance_filter),
            "tau": self.tau,
            "similar": [
                {"new": m.new, "old": m.old, "sim": m.similarity} for m in self.similar
            ],
            "new_points": list(self.new_points),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def sentence_similarity(a: str, b: str, fn: SimilarityFn | None = None) -> float:
    """Symmetric similarity in [0, 1]; 1.0 for identical non-empty strings.

    The default scores TF-IDF cosine with the two sentences as the corpus.
    """
    if fn is not None:
        return fn(a, b)
    return TfidfModel([a, b]).cosine(a, b)


def tfidf_similarity(corpus: Sequence[str]) -> SimilarityFn:
    """A SimilarityFn with idf weights fitted on ``corpus``."""
    model = TfidfModel(corpus)
    return model.cosine


def _stance_sentences(doc: DocumentResult, stances: frozenset[Stance]) -> list[str]:
    return [
        sentence
        for para in doc.paragraphs
        for sentence, stance in para.sentence_classes
        if stance in stances
    ]


def partition_points(
    new_doc: DocumentResult,
    old_doc: DocumentResult,
    stance: Iterable[Stance] | Stance = Stance.HAWKISH,
    tau: float = DEFAULT_TAU,
    similarity: SimilarityFn | None = None,
) -> DiffResult:
    """Partition the new document's stance-bearing sentences against the old.

    Stance filtering is exact set membership; pass both hawkish and leaning
    hawkish to cover the hawkish side of a five-class result. For each new
    sentence the best-matching old sentence (ties to the earlier one) decides
    the bucket: similarity >= tau lands in ``similar``, otherwise the
    sentence is a new point.
    """
    if not 0.0 <= tau <= 1.0:
        raise ValueError("tau must be in [0, 1]")
    stances = frozenset([stance] if isinstance(stance, Stance) else stance)
    new_sentences = _stance_sentences(new_doc, stances)
    old_sentences = _stance_sentences(old_doc, stances)
    if similarity is None:
        corpus = [s for para in new_doc.paragraphs for s, _ in para.sentence_classes]
        corpus += [s for para in old_doc.paragraphs for s, _ in para.sentence_classes]
        similarity = tfidf_similarity(corpus)

    similar: list[MatchedPair] = []
    new_points: list[str] = []
    for sentence in new_sentences:
        best: MatchedPair | None = None
        for old in old_sentences:
            sim = similarity(sentence, old)
            if best is None or sim > best.similarity:
                best = MatchedPair(sentence, old, sim)
        if best is not None and best.similarity >= tau:
            similar.append(best)
        else:
            new_points.append(sentence)
    return DiffResult(
        stance_filter=stances,
        tau=tau,
        similar=tuple(similar),
        new_points=tuple(new_points),
    )


def summarize_points(
    points: Sequence[str],
    client: LlmClient,
    *,
    prompt_template: str = DEFAULT_SUMMARY_PROMPT,
    max_tokens: int = 512,
    temperature: float = 0.0,
    seed: int = 1337,
) -> str:
    """Unconstrained LLM summary of a point set; empty input skips the backend."""
    if not points:
        return ""
    prompt = prompt_template.format(sentences="\n".join(f"- {p}" for p in points))
    result = client.complete(
        CompletionRequest(
            prompt=prompt, grammar_text="", max_tokens=max_tokens,
            temperature=temperature, seed=seed,
        )
    )
    return result.text

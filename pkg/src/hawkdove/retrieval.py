"""Topic annotation for paragraphs: hybrid keyword + dense ranking.

The keyword route scores every taxonomy phrase against the paragraph with
BM25 (paragraph as query, phrase as document), then weights each parent
topic by how many of its phrases land in the top k. The dense route scores
the paragraph against topic surface descriptions through a pluggable
scorer (default: TF-IDF cosine, so the hybrid path works fully offline).
The two rankings are merged with reciprocal rank fusion.

All structures are immutable after construction and safe to share across
threads; scoring is read-only.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Protocol, Sequence

from .taxonomy import Taxonomy, Topic

_TOKEN_RE = re.compile(r"[^0-9a-z]+")


def tokenize(text: str) -> list[str]:
    """Lowercase, split on any non-alphanumeric run, drop empty tokens."""
    return [t for t in _TOKEN_RE.split(text.lower()) if t]


@dataclass(frozen=True)
class Bm25Params:
    k1: float = 1.2
    b: float = 0.75

    def __post_init__(self) -> None:
        if self.k1 < 0:
            raise ValueError("k1 must be >= 0")
        if not 0.0 <= self.b <= 1.0:
            raise ValueError("b must be in [0, 1]")


@dataclass(frozen=True)
class RankedTopic:
    mnemonic: str
    score: float
    rank: int


@dataclass(frozen=True)
class TopicRanking:
    entries: tuple[RankedTopic, ...]

    def __post_init__(self) -> None:
        seen = set()
        for i, e in enumerate(self.entries):
            if e.rank != i + 1:
                raise ValueError("ranks must be consecutive from 1")
            if i and self.entries[i - 1].score < e.score:
                raise ValueError("scores must be non-increasing")
            if e.mnemonic in seen:
                raise ValueError(f"duplicate mnemonic {e.mnemonic}")
            seen.add(e.mnemonic)

    def mnemonics(self) -> list[str]:
        return [e.mnemonic for e in self.entries]

    def to_list(self) -> list[dict]:
        return [{"mnemonic": e.mnemonic, "score": e.score, "rank": e.rank} for e in self.entries]

    @classmethod
    def from_list(cls, items: Sequence[dict]) -> "TopicRanking":
        return cls(tuple(RankedTopic(d["mnemonic"], float(d["score"]), int(d["rank"])) for d in items))

    def __len__(self) -> int:
        return len(self.entries)


def phrase_table(taxonomy: Taxonomy) -> tuple[tuple[str, ...], tuple[tuple[str, ...], ...]]:
    """Unique phrase strings in taxonomy order, plus parent mnemonics per phrase.

    Phrase ids used throughout retrieval are indices into the first tuple.
    A phrase shared by several topics appears once, with every owner listed.
    """
    phrases: list[str] = []
    owners: list[list[str]] = []
    index: dict[str, int] = {}
    for topic in taxonomy.topics:
        for phrase in topic.phrases:
            if phrase not in index:
                index[phrase] = len(phrases)
                phrases.append(phrase)
                owners.append([])
            if topic.mnemonic not in owners[index[phrase]]:
                owners[index[phrase]].append(topic.mnemonic)
    return tuple(phrases), tuple(tuple(o) for o in owners)


@dataclass(frozen=True)
class PhraseIndex:
    """Inverted index over taxonomy phrases for BM25 scoring."""

    postings: dict[str, tuple[tuple[int, int], ...]]  # token -> ((phrase_id, tf), ...)
    doc_lengths: tuple[int, ...]
    avgdl: float
    df: dict[str, int]
    N: int
    params: Bm25Params
    phrases: tuple[str, ...] = field(default=(), repr=False)

    @classmethod
    def from_phrases(cls, phrases: Sequence[str], params: Bm25Params | None = None) -> "PhraseIndex":
        params = params or Bm25Params()
        postings: dict[str, list[tuple[int, int]]] = {}
        lengths = []
        for pid, phrase in enumerate(phrases):
            tokens = tokenize(phrase)
            lengths.append(len(tokens))
            for token, tf in sorted(Counter(tokens).items()):
                postings.setdefault(token, []).append((pid, tf))
        df = {token: len(plist) for token, plist in postings.items()}
        n = len(phrases)
        avgdl = (sum(lengths) / n) if n else 0.0
        return cls(
            postings={t: tuple(p) for t, p in postings.items()},
            doc_lengths=tuple(lengths),
            avgdl=avgdl,
            df=df,
            N=n,
            params=params,
            phrases=tuple(phrases),
        )

    @classmethod
    def from_taxonomy(cls, taxonomy: Taxonomy, params: Bm25Params | None = None) -> "PhraseIndex":
        phrases, _ = phrase_table(taxonomy)
        return cls.from_phrases(phrases, params)

    def idf(self, token: str) -> float:
        n = self.df.get(token, 0)
        if n == 0:
            return 0.0
        return math.log((self.N - n + 0.5) / (n + 0.5))


def rank_phrases(index: PhraseIndex, paragraph: str, k: int) -> list[tuple[int, float]]:
    """Top-k phrases by BM25 score of the paragraph-as-query.

    Score(q, d) = sum over query token occurrences of
    idf(t) * tf * (k1 + 1) / (tf + k1 * (1 - b + b * dl / avgdl))
    with idf(t) = ln((N - df + 0.5) / (df + 0.5)). Only phrases sharing at
    least one token with the query are candidates. Ties break to the lower
    phrase id.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if index.N == 0:
        return []
    k1, b = index.params.k1, index.params.b
    scores: dict[int, float] = {}
    for token in tokenize(paragraph):
        plist = index.postings.get(token)
        if not plist:
            continue
        idf = index.idf(token)
        for pid, tf in plist:
            dl = index.doc_lengths[pid]
            denom = tf + k1 * (1 - b + b * dl / index.avgdl)
            scores[pid] = scores.get(pid, 0.0) + idf * tf * (k1 + 1) / denom
    ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:k]


def topics_from_phrases(taxonomy: Taxonomy, ranked: Sequence[tuple[int, float]]) -> TopicRanking:
    """Weight parent topics by how many of the ranked phrases they own.

    A phrase belonging to m topics contributes 1 to each of them. Entries
    are ordered by count descending, ties by mnemonic.
    """
    _, owners = phrase_table(taxonomy)
    counts: Counter[str] = Counter()
    for pid, _score in ranked:
        if not 0 <= pid < len(owners):
            raise ValueError(f"phrase id {pid} out of range")
        for mnemonic in owners[pid]:
            counts[mnemonic] += 1
    ordered = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return TopicRanking(
        tuple(RankedTopic(m, float(c), i + 1) for i, (m, c) in enumerate(ordered))
    )


class DenseScorerError(Exception):
    """A dense scorer backend failed; callers degrade to keyword-only."""


class DenseScorer(Protocol):
    """Plug-in contract for dense paragraph-topic relevance.

    Given the paragraph text and the list of topic surface strings, return
    one score per surface, each in [0, 1]. Failures must raise
    DenseScorerError (never silently return zeros).
    """

    def score(self, paragraph: str, surfaces: Sequence[str]) -> list[float]: ...


class TfidfModel:
    """TF-IDF vectors over a fixed corpus; cosine similarity in [0, 1].

    tf is the raw token count; idf(t) = ln((N + 1) / (df(t) + 1)) + 1 with
    df taken over the corpus documents. Zero-norm vectors have similarity 0.
    """

    def __init__(self, corpus: Sequence[str]):
        self.corpus = tuple(corpus)
        self.N = len(self.corpus)
        df: Counter[str] = Counter()
        for doc in self.corpus:
            df.update(set(tokenize(doc)))
        self.df = dict(df)

    def idf(self, token: str) -> float:
        return math.log((self.N + 1) / (self.df.get(token, 0) + 1)) + 1.0

    def vector(self, text: str) -> dict[str, float]:
        return {t: tf * self.idf(t) for t, tf in Counter(tokenize(text)).items()}

    def cosine(self, a: str, b: str) -> float:
        va, vb = self.vector(a), self.vector(b)
        dot = sum(w * vb.get(t, 0.0) for t, w in va.items())
        na = math.sqrt(sum(w * w for w in va.values()))
        nb = math.sqrt(sum(w * w for w in vb.values()))
        if na == 0.0 or nb == 0.0:
            return 0.0
        return min(1.0, dot / (na * nb))


class TfidfCosineScorer:
    """Default offline dense scorer: TF-IDF cosine against topic surfaces."""

    def score(self, paragraph: str, surfaces: Sequence[str]) -> list[float]:
        model = TfidfModel(surfaces)
        return [model.cosine(paragraph, surface) for surface in surfaces]


def dense_rank(paragraph: str, topics: Sequence[Topic], scorer: DenseScorer | None = None) -> TopicRanking:
    """Score all topics with the dense scorer; order descending, stable on ties."""
    scorer = scorer or TfidfCosineScorer()
    surfaces = [t.surface for t in topics]
    try:
        scores = scorer.score(paragraph, surfaces)
    except DenseScorerError:
        raise
    except Exception as exc:  # wrap foreign failures per the plug-in contract
        raise DenseScorerError(f"dense scorer failed: {exc}") from exc
    if len(scores) != len(topics):
        raise DenseScorerError(f"scorer returned {len(scores)} scores for {len(topics)} topics")
    for s in scores:
        if not 0.0 <= s <= 1.0:
            raise DenseScorerError(f"score {s} outside [0, 1]")
    order = sorted(range(len(topics)), key=lambda i: -scores[i])
    return TopicRanking(
        tuple(RankedTopic(topics[i].mnemonic, float(scores[i]), r + 1) for r, i in enumerate(order))
    )


def fuse(rankings: Sequence[TopicRanking], k_rrf: float = 60.0) -> TopicRanking:
    """Reciprocal rank fusion: fused(topic) = sum of 1 / (k_rrf + rank).

    Only rankings containing the topic contribute. Ordered by fused score
    descending, ties by mnemonic; a single input ranking keeps its order.
    """
    if k_rrf <= 0:
        raise ValueError("k_rrf must be > 0")
    if not rankings:
        raise ValueError("at least one ranking required")
    contributions: dict[str, list[float]] = {}
    for ranking in rankings:
        for entry in ranking.entries:
            contributions.setdefault(entry.mnemonic, []).append(1.0 / (k_rrf + entry.rank))
    # Sum in sorted order so fusion is exactly permutation-invariant.
    fused = {m: sum(sorted(parts)) for m, parts in contributions.items()}
    ordered = sorted(fused.items(), key=lambda item: (-item[1], item[0]))
    return TopicRanking(
        tuple(RankedTopic(m, s, i + 1) for i, (m, s) in enumerate(ordered))
    )


def select_topics(ranking: TopicRanking, max_topics: int = 3, min_score: float = 0.0) -> list[str]:
    """Top entries with score >= min_score, at most max_topics.

    A non-empty ranking always yields at least one topic: if everything
    falls below min_score the top entry is returned regardless.
    """
    if max_topics < 1:
        raise ValueError("max_topics must be >= 1")
    if not ranking.entries:
        return []
    chosen = [e.mnemonic for e in ranking.entries[:max_topics] if e.score >= min_score]
    if not chosen:
        chosen = [ranking.entries[0].mnemonic]
    return chosen


def hybrid_ranking(
    taxonomy: Taxonomy,
    index: PhraseIndex,
    paragraph: str,
    *,
    top_k_phrases: int = 10,
    k_rrf: float = 60.0,
    scorer: DenseScorer | None = None,
    use_dense: bool = True,
) -> tuple[TopicRanking, list[str]]:
    """Keyword + dense rankings fused with RRF.

    Returns the fused ranking plus any degradation warnings. A dense-scorer
    failure degrades to keyword-only rather than aborting the paragraph.
    """
    keyword = topics_from_phrases(taxonomy, rank_phrases(index, paragraph, top_k_phrases))
    rankings = [keyword]
    warnings: list[str] = []
    if use_dense:
        try:
            rankings.append(dense_rank(paragraph, taxonomy.topics, scorer))
        except DenseScorerError as exc:
            warnings.append(f"dense scorer unavailable, keyword-only ranking used: {exc}")
    if not keyword.entries and len(rankings) == 1:
        return keyword, warnings
    return fuse(rankings, k_rrf=k_rrf), warnings

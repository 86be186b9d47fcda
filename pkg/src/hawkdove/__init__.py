"""Taxonomy-guided hawkish/dovish stance classification for policy text.

The pipeline: a human-authored taxonomy of topics with decision trees, a
hybrid keyword + dense retriever annotating paragraphs with topics, and a
generator that walks each topic's tree through grammar-constrained LLM
completions, then synthesizes paragraph- and sentence-level stance
classes. Scores aggregate to document series; an econometrics kit and
report/diff tooling close the loop.
"""

__version__ = "0.1.0"

from .taxonomy import (
    Stance,
    Taxonomy,
    Topic,
    Terminal,
    Question,
    Answer,
    load_taxonomy,
    load_reference_taxonomy,
    validate_taxonomy,
)
from .grammar import compile_tree, enumerate_paths, parse_transcript, render_transcript
from .corpus import Document, load_corpus, split_paragraphs, split_sentences
from .retrieval import (
    Bm25Params,
    PhraseIndex,
    TopicRanking,
    dense_rank,
    fuse,
    hybrid_ranking,
    rank_phrases,
    select_topics,
    tokenize,
    topics_from_phrases,
)
from .llm import CompletionRequest, HttpBackend, HttpConfig, LlmClient, MockBackend, MockScript
from .reasoner import (
    DocumentResult,
    Engine,
    EngineConfig,
    ParagraphResult,
    TopicTrace,
    classify_document,
    synthesize,
    walk_tree,
)
from .scoring import (
    FIVE_CLASS,
    THREE_CLASS,
    ScoreScheme,
    ScoreSeries,
    classification_metrics,
    collapse_to_three,
    document_score,
    moving_average,
    normalize_series,
)
from .diff import DiffResult, partition_points, sentence_similarity, summarize_points
from .report import export_result_json, load_result_json, render_document_report
from .econ import (
    DesignMatrix,
    GrangerResult,
    OrdinalFit,
    build_design,
    fit_ols_hc1,
    fit_ordered_logit,
    granger_test,
)

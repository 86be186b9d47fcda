"""Document scores and score series.

A document's hawk-dove score is the mean of its sentence-class points.
Five-class points run 1..5 (dovish..hawkish); the three-class scheme
collapses the leaning categories and runs -1..1. Series can be smoothed
with a trailing moving average and normalized to z-scores.
"""

from pathlib import Path

from hawkdove import load_reference_taxonomy
from hawkdove.corpus import load_corpus
from hawkdove.reasoner import Engine, EngineConfig
from hawkdove.scoring import (
    FIVE_CLASS,
    THREE_CLASS,
    ScorePoint,
    ScoreSeries,
    document_score,
    moving_average,
    normalize_series,
    series_to_csv,
)

HERE = Path(__file__).parent

taxonomy = load_reference_taxonomy()
docs = load_corpus(HERE / "data" / "sample_corpus.jsonl")
engine = Engine(
    taxonomy,
    EngineConfig(backend="mock", mock_script=str(HERE / "data" / "mock_script.json")),
)

points = []
for doc in docs:
    result = engine.classify_document(doc)
    five = document_score(result, FIVE_CLASS)
    three = document_score(result, THREE_CLASS)
    print(f"{doc.doc_id}: five-class {five:.3f}, three-class {three:+.3f}")
    points.append(ScorePoint(doc.date, doc.doc_id, doc.doc_type, three))

series = ScoreSeries.build(points)
smoothed = moving_average(series, window=3)
print("\nthree-meeting trailing average (expanding head):")
for raw, smooth in zip(series.points, smoothed.points):
    print(f"  {raw.date} {raw.doc_id:14s} raw {raw.score:.3f} -> smoothed {smooth.score:.3f}")

normalized = normalize_series(series)
print("\nnormalized (z-score) series as CSV:")
print(series_to_csv(normalized))

"""Stance points, document scores, score series, and validation metrics.

Two schemes: five_class maps (dovish, leaning dovish, neutral, leaning
hawkish, hawkish) to (1, 2, 3, 4, 5); three_class collapses the leaning
categories into their neighbours and maps (dovish, neutral, hawkish) to
(-1, 0, 1). A document's score is the arithmetic mean of its sentence
points, so positive mean errors in validation read as "predictions skew
hawkish".

Series CSV format: header ``date,doc_id,doc_type,score``, ISO-8601 dates,
``.`` decimal separator.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .taxonomy import Stance

if TYPE_CHECKING:
    from .reasoner import DocumentResult


class ScoreError(Exception):
    pass


FIVE_CLASS_POINTS = {
    Stance.DOVISH: 1,
    Stance.LEANING_DOVISH: 2,
    Stance.NEUTRAL: 3,
    Stance.LEANING_HAWKISH: 4,
    Stance.HAWKISH: 5,
}

THREE_CLASS_POINTS = {
    Stance.DOVISH: -1,
    Stance.NEUTRAL: 0,
    Stance.HAWKISH: 1,
}


def collapse_to_three(stance: Stance) -> Stance:
    """leaning dovish -> dovish, leaning hawkish -> hawkish; idempotent."""
    if stance is Stance.LEANING_DOVISH:
        return Stance.DOVISH
    if stance is Stance.LEANING_HAWKISH:
        return Stance.HAWKISH
    return stance


@dataclass(frozen=True)
class ScoreScheme:
    mode: str  # "three_class" | "five_class"

    def __post_init__(self) -> None:
        if self.mode not in ("three_class", "five_class"):
            raise ValueError(f"unknown scheme mode {self.mode!r}")

    @property
    def mapping(self) -> dict[Stance, int]:
        return THREE_CLASS_POINTS if self.mode == "three_class" else FIVE_CLASS_POINTS

    def points(self, stance: Stance) -> int:
        if self.mode == "three_class":
            return THREE_CLASS_POINTS[collapse_to_three(stance)]
        return FIVE_CLASS_POINTS[stance]

    def classes(self, stance: Stance) -> Stance:
        """The class actually scored under this scheme (collapsed for three)."""
        return collapse_to_three(stance) if self.mode == "three_class" else stance


THREE_CLASS = ScoreScheme("three_class")
FIVE_CLASS = ScoreScheme("five_class")


@dataclass(frozen=True)
class ScorePoint:
    date: dt.date
    doc_id: str
    doc_type: str
    score: float


@dataclass(frozen=True)
class ScoreSeries:
    points: tuple[ScorePoint, ...]

    def __post_init__(self) -> None:
        for a, b in zip(self.points, self.points[1:]):
            if b.date < a.date:
                raise ValueError("series dates must be non-decreasing")

    @classmethod
    def build(cls, points: Sequence[ScorePoint]) -> "ScoreSeries":
        """Stable-sort by date, then construct."""
        return cls(tuple(sorted(points, key=lambda p: p.date)))

    def scores(self) -> list[float]:
        return [p.score for p in self.points]

    def with_scores(self, scores: Sequence[float]) -> "ScoreSeries":
        if len(scores) != len(self.points):
            raise ValueError("length mismatch")
        return ScoreSeries(
            tuple(
                ScorePoint(p.date, p.doc_id, p.doc_type, float(s))
                for p, s in zip(self.points, scores)
            )
        )

    def __len__(self) -> int:
        return len(self.points)


def document_score(result: "DocumentResult", scheme: ScoreScheme) -> float:
    """Arithmetic mean of sentence-class points across the whole document."""
    points = [
        scheme.points(stance)
        for para in result.paragraphs
        for _sentence, stance in para.sentence_classes
    ]
    if not points:
        raise ScoreError(f"document {result.doc_id} has no sentences to score")
    return sum(points) / len(points)


def normalize_series(series: ScoreSeries) -> ScoreSeries:
    """Full-corpus z-score with the population standard deviation."""
    xs = series.scores()
    if len(xs) < 2:
        raise ScoreError("normalization needs at least 2 points")
    mean = sum(xs) / len(xs)
    var = sum((x - mean) ** 2 for x in xs) / len(xs)
    if var == 0.0:
        raise ScoreError("cannot normalize a zero-variance series")
    std = math.sqrt(var)
    return series.with_scores([(x - mean) / std for x in xs])


def moving_average(series: ScoreSeries, window: int) -> ScoreSeries:
    """Trailing mean over the last ``window`` points, expanding at the head.

    The first window-1 entries average everything seen so far, so the output
    has the same length as the input and stays causal.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    xs = series.scores()
    out = []
    for i in range(len(xs)):
        lo = max(0, i - window + 1)
        chunk = xs[lo : i + 1]
        out.append(sum(chunk) / len(chunk))
    return series.with_scores(out)


def classification_metrics(
    pred: Sequence[Stance], gold: Sequence[Stance], scheme: ScoreScheme
) -> tuple[float, float]:
    """(accuracy, mean_error) for predicted vs gold classes.

    Accuracy counts exact class equality under the scheme (collapsed for
    three_class). Mean error is the signed mean of points(pred) -
    points(gold): positive means predictions skew hawkish.
    """
    if len(pred) != len(gold):
        raise ScoreError(f"length mismatch: {len(pred)} predictions vs {len(gold)} gold labels")
    if not pred:
        raise ScoreError("need at least one pair")
    hits = sum(1 for p, g in zip(pred, gold) if scheme.classes(p) is scheme.classes(g))
    err = sum(scheme.points(p) - scheme.points(g) for p, g in zip(pred, gold))
    return hits / len(pred), err / len(pred)


def series_to_csv(series: ScoreSeries) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["date", "doc_id", "doc_type", "score"])
    for p in series.points:
        writer.writerow([p.date.isoformat(), p.doc_id, p.doc_type, repr(float(p.score))])
    return buf.getvalue()


def series_from_csv(text: str) -> ScoreSeries:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != ["date", "doc_id", "doc_type", "score"]:
        raise ScoreError(f"unexpected CSV header {header!r}")
    points = []
    for row in reader:
        if not row:
            continue
        if len(row) != 4:
            raise ScoreError(f"bad CSV row {row!r}")
        points.append(
            ScorePoint(dt.date.fromisoformat(row[0]), row[1], row[2], float(row[3]))
        )
    return ScoreSeries(tuple(points))

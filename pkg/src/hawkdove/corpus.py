"""Document ingestion and rule-based segmentation.

Corpus files are JSONL: one document object per line with fields
``doc_id``, ``date`` (ISO-8601), ``doc_type`` and ``text``. ``statement``
and ``minutes`` doc types get special treatment in the validation lag
logic; anything else is carried through untouched.

The sentence splitter is deliberately rule-based with a versioned
abbreviation list: reproducibility beats marginal segmentation accuracy
here, and any mistakes are visible in the rendered reports.
"""

from __future__ import annotations

import datetime as dt
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Union


@dataclass(frozen=True)
class Document:
    doc_id: str
    date: dt.date
    doc_type: str
    text: str


class CorpusError(Exception):
    pass


def load_corpus(source: Union[bytes, str, IO[bytes], Path]) -> list[Document]:
    """Read a JSONL corpus, preserving file order.

    Raises CorpusError with a line number on malformed lines and on
    duplicate doc_ids.
    """
    if isinstance(source, Path):
        data = source.read_bytes()
    elif isinstance(source, bytes):
        data = source
    elif isinstance(source, str):
        data = source.encode("utf-8")
    else:
        data = source.read()
        if isinstance(data, str):
            data = data.encode("utf-8")

    docs: list[Document] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(data.decode("utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"line {lineno}: malformed JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise CorpusError(f"line {lineno}: document must be an object")
        for key in ("doc_id", "date", "doc_type", "text"):
            if key not in obj or not isinstance(obj[key], str):
                raise CorpusError(f"line {lineno}: missing or non-string field {key!r}")
        if obj["doc_id"] in seen:
            raise CorpusError(f"line {lineno}: duplicate doc_id {obj['doc_id']!r}")
        seen.add(obj["doc_id"])
        try:
            date = dt.date.fromisoformat(obj["date"])
        except ValueError as exc:
            raise CorpusError(f"line {lineno}: bad date {obj['date']!r}: {exc}") from exc
        docs.append(Document(doc_id=obj["doc_id"], date=date, doc_type=obj["doc_type"], text=obj["text"]))
    return docs


def dump_corpus(docs: list[Document]) -> bytes:
    lines = [
        json.dumps(
            {"doc_id": d.doc_id, "date": d.date.isoformat(), "doc_type": d.doc_type, "text": d.text},
            ensure_ascii=False,
        )
        for d in docs
    ]
    return ("\n".join(lines) + ("\n" if lines else "")).encode("utf-8")


_BLANK_RUN = re.compile(r"\n[ \t]*(?:\n[ \t]*)+")


def split_paragraphs(text: str) -> list[str]:
    """Split on runs of one or more blank lines; trims and drops empties."""
    normalized = text.replace("\r\n", "\n").replace("\r", "\n")
    parts = _BLANK_RUN.split(normalized)
    return [p.strip() for p in parts if p.strip()]


# Tokens (including their trailing period where applicable) that never end a
# sentence. Versioned: extend deliberately, never locale-dependently.
ABBREVIATIONS_VERSION = 1
ABBREVIATIONS = frozenset(
    {
        "e.g.", "i.e.", "etc.", "cf.", "vs.", "No.", "no.", "Nos.",
        "Mr.", "Mrs.", "Ms.", "Dr.", "Prof.", "St.", "Jr.", "Sr.",
        "Fig.", "Eq.", "Sec.", "Ch.", "p.a.", "approx.",
    }
)

_BOUNDARY = re.compile(r"([.!?])(\s+)(?=[A-Z0-9])")


def _preceding_token(text: str, punct_index: int) -> str:
    """The whitespace-delimited token ending at (and including) text[punct_index]."""
    start = punct_index
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    return text[start : punct_index + 1]


def split_sentences(paragraph: str) -> list[str]:
    """Rule-based sentence segmentation.

    Splits after ``.``, ``!`` or ``?`` followed by whitespace and an uppercase
    letter or digit, unless the token carrying the period is a protected
    abbreviation. Decimal points are safe automatically (no whitespace
    follows them). Never yields empty sentences; joining the output with
    single spaces preserves every non-whitespace character in order.
    """
    text = paragraph.strip()
    if not text:
        return []
    boundaries = []
    for m in _BOUNDARY.finditer(text):
        token = _preceding_token(text, m.start(1)).lstrip("([{'\"")
        if token in ABBREVIATIONS:
            continue
        boundaries.append((m.end(1), m.end(2)))
    sentences = []
    start = 0
    for end, next_start in boundaries:
        chunk = text[start:end].strip()
        if chunk:
            sentences.append(chunk)
        start = next_start
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences if sentences else [text]

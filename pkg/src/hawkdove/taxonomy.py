"""Taxonomy of themes, topics, phrases, and decision trees.

The taxonomy is the human-authored backbone of the classifier: each topic
carries a set of retrieval phrases and a decision tree whose leaves hold
stance assessments. Loaded taxonomies are immutable and safe to share
across threads.

JSON schema (normative)::

    {"schema_version": 1, "version": "...", "topics": [
        {"mnemonic": "CORE-INFLATION", "name": "...", "theme": "...",
         "surface": "...", "phrases": ["..."], "tree": <node>}]}

where ``<node>`` is either
``{"question": "...", "answers": [{"label": "...", "next": <node>}]}`` or
``{"terminal": {"stance": "hawkish", "rationale": "..."}}``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import IO, Iterator, Union


class Stance(Enum):
    """The five stance classes, totally ordered dovish < ... < hawkish."""

    DOVISH = "dovish"
    LEANING_DOVISH = "leaning dovish"
    NEUTRAL = "neutral"
    LEANING_HAWKISH = "leaning hawkish"
    HAWKISH = "hawkish"

    @classmethod
    def from_value(cls, value: str) -> "Stance":
        for member in cls:
            if member.value == value:
                return member
        raise ValueError(f"unknown stance class: {value!r}")

    @property
    def order(self) -> int:
        return STANCE_ORDER[self]

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Stance):
            return NotImplemented
        return STANCE_ORDER[self] < STANCE_ORDER[other]

    def __le__(self, other: object) -> bool:
        if not isinstance(other, Stance):
            return NotImplemented
        return STANCE_ORDER[self] <= STANCE_ORDER[other]

    def __gt__(self, other: object) -> bool:
        if not isinstance(other, Stance):
            return NotImplemented
        return STANCE_ORDER[self] > STANCE_ORDER[other]

    def __ge__(self, other: object) -> bool:
        if not isinstance(other, Stance):
            return NotImplemented
        return STANCE_ORDER[self] >= STANCE_ORDER[other]


STANCE_ORDER = {s: i for i, s in enumerate(Stance)}
STANCE_VALUES = tuple(s.value for s in Stance)


@dataclass(frozen=True)
class Terminal:
    """A leaf assessment: the stance reached plus its authored rationale."""

    stance: Stance
    rationale: str


@dataclass(frozen=True)
class Answer:
    label: str
    next: "TreeNode"


@dataclass(frozen=True)
class Question:
    text: str
    answers: tuple[Answer, ...]


TreeNode = Union[Question, Terminal]


@dataclass(frozen=True)
class Topic:
    mnemonic: str
    name: str
    theme: str
    surface: str
    phrases: tuple[str, ...]
    tree: TreeNode


@dataclass(frozen=True)
class Taxonomy:
    topics: tuple[Topic, ...]
    version: str
    schema_version: int

    def topic(self, mnemonic: str) -> Topic:
        for t in self.topics:
            if t.mnemonic == mnemonic:
                return t
        raise KeyError(mnemonic)

    def mnemonics(self) -> tuple[str, ...]:
        return tuple(t.mnemonic for t in self.topics)

    def __len__(self) -> int:
        return len(self.topics)


@dataclass(frozen=True)
class Violation:
    """A single invariant breach: machine-readable code plus a human path."""

    code: str
    path: str
    message: str


class TaxonomyError(Exception):
    """Base class for taxonomy loading failures."""


class TaxonomyParseError(TaxonomyError):
    """The document is not well-formed JSON or misses required structure."""


class TaxonomyValidationError(TaxonomyError):
    """The document parsed but violates taxonomy invariants."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        lines = "; ".join(f"{v.code} at {v.path}" for v in violations[:5])
        more = "" if len(violations) <= 5 else f" (+{len(violations) - 5} more)"
        super().__init__(f"invalid taxonomy: {lines}{more}")


_MNEMONIC_RE = re.compile(r"^[A-Z0-9]+-[A-Z0-9]+$")


def _node_from_dict(obj: object, path: str) -> TreeNode:
    if not isinstance(obj, dict):
        raise TaxonomyParseError(f"{path}: tree node must be an object")
    if "terminal" in obj:
        term = obj["terminal"]
        if not isinstance(term, dict):
            raise TaxonomyParseError(f"{path}.terminal: must be an object")
        try:
            stance = Stance.from_value(term.get("stance"))
        except ValueError as exc:
            raise TaxonomyParseError(f"{path}.terminal.stance: {exc}") from exc
        rationale = term.get("rationale", "")
        if not isinstance(rationale, str):
            raise TaxonomyParseError(f"{path}.terminal.rationale: must be a string")
        return Terminal(stance=stance, rationale=rationale)
    if "question" in obj:
        text = obj["question"]
        if not isinstance(text, str):
            raise TaxonomyParseError(f"{path}.question: must be a string")
        answers_raw = obj.get("answers")
        if not isinstance(answers_raw, list):
            raise TaxonomyParseError(f"{path}.answers: must be a list")
        answers = []
        for i, ans in enumerate(answers_raw):
            apath = f"{path}.answers[{i}]"
            if not isinstance(ans, dict) or "label" not in ans or "next" not in ans:
                raise TaxonomyParseError(f"{apath}: must have 'label' and 'next'")
            label = ans["label"]
            if not isinstance(label, str):
                raise TaxonomyParseError(f"{apath}.label: must be a string")
            answers.append(Answer(label=label, next=_node_from_dict(ans["next"], f"{apath}.next")))
        return Question(text=text, answers=tuple(answers))
    raise TaxonomyParseError(f"{path}: node needs either 'question' or 'terminal'")


def _node_to_dict(node: TreeNode) -> dict:
    if isinstance(node, Terminal):
        return {"terminal": {"stance": node.stance.value, "rationale": node.rationale}}
    return {
        "question": node.text,
        "answers": [{"label": a.label, "next": _node_to_dict(a.next)} for a in node.answers],
    }


def taxonomy_to_dict(taxonomy: Taxonomy) -> dict:
    return {
        "schema_version": taxonomy.schema_version,
        "version": taxonomy.version,
        "topics": [
            {
                "mnemonic": t.mnemonic,
                "name": t.name,
                "theme": t.theme,
                "surface": t.surface,
                "phrases": list(t.phrases),
                "tree": _node_to_dict(t.tree),
            }
            for t in taxonomy.topics
        ],
    }


def serialize_taxonomy(taxonomy: Taxonomy) -> bytes:
    """Canonical UTF-8 JSON rendering; load_taxonomy(serialize_taxonomy(t)) == t."""
    return (json.dumps(taxonomy_to_dict(taxonomy), indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def load_taxonomy(source: Union[bytes, str, IO[bytes], Path]) -> Taxonomy:
    """Parse and validate a taxonomy document.

    Accepts raw bytes/str, an open binary stream, or a filesystem path.
    Raises TaxonomyParseError on malformed documents and
    TaxonomyValidationError (carrying all violations) on invariant breaches.
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
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise TaxonomyParseError(f"malformed taxonomy document: {exc}") from exc
    if not isinstance(doc, dict):
        raise TaxonomyParseError("top level must be an object")
    schema_version = doc.get("schema_version")
    if not isinstance(schema_version, int):
        raise TaxonomyParseError("schema_version: must be an integer")
    version = doc.get("version")
    if not isinstance(version, str):
        raise TaxonomyParseError("version: must be a string")
    topics_raw = doc.get("topics")
    if not isinstance(topics_raw, list):
        raise TaxonomyParseError("topics: must be a list")

    topics = []
    for i, traw in enumerate(topics_raw):
        tpath = f"topics[{i}]"
        if not isinstance(traw, dict):
            raise TaxonomyParseError(f"{tpath}: must be an object")
        for key in ("mnemonic", "name", "theme", "surface", "phrases", "tree"):
            if key not in traw:
                raise TaxonomyParseError(f"{tpath}: missing field {key!r}")
        phrases = traw["phrases"]
        if not isinstance(phrases, list) or not all(isinstance(p, str) for p in phrases):
            raise TaxonomyParseError(f"{tpath}.phrases: must be a list of strings")
        for key in ("mnemonic", "name", "theme", "surface"):
            if not isinstance(traw[key], str):
                raise TaxonomyParseError(f"{tpath}.{key}: must be a string")
        topics.append(
            Topic(
                mnemonic=traw["mnemonic"],
                name=traw["name"],
                theme=traw["theme"],
                surface=traw["surface"],
                phrases=tuple(phrases),
                tree=_node_from_dict(traw["tree"], f"{tpath}.tree"),
            )
        )

    taxonomy = Taxonomy(topics=tuple(topics), version=version, schema_version=schema_version)
    violations = validate_taxonomy(taxonomy)
    if violations:
        raise TaxonomyValidationError(violations)
    return taxonomy


def _validate_node(node: TreeNode, path: str, seen: set[int], out: list[Violation]) -> None:
    if id(node) in seen:
        out.append(Violation("CycleDetected", path, "node appears more than once in the tree"))
        return
    seen.add(id(node))
    if isinstance(node, Terminal):
        return
    if not node.text.strip():
        out.append(Violation("EmptyQuestion", path, "question text is empty"))
    if len(node.answers) < 2:
        out.append(
            Violation("TooFewAnswers", path, f"question has {len(node.answers)} answer(s), needs at least 2")
        )
    labels = set()
    for i, ans in enumerate(node.answers):
        apath = f"{path}.answers[{i}]"
        if not ans.label or "\n" in ans.label or "\r" in ans.label:
            out.append(Violation("IllegalLabel", apath, f"answer label {ans.label!r} is empty or contains a newline"))
        if ans.label in labels:
            out.append(Violation("DuplicateAnswerLabel", apath, f"label {ans.label!r} repeats within the question"))
        labels.add(ans.label)
        _validate_node(ans.next, f"{apath}.next", seen, out)


def validate_taxonomy(taxonomy: Taxonomy) -> list[Violation]:
    """Check every invariant; an empty list means the taxonomy is valid."""
    out: list[Violation] = []
    seen_mnemonics: set[str] = set()
    for t in taxonomy.topics:
        path = f"topics[{t.mnemonic}]"
        if t.mnemonic in seen_mnemonics:
            out.append(Violation("DuplicateMnemonic", path, f"mnemonic {t.mnemonic} declared more than once"))
        seen_mnemonics.add(t.mnemonic)
        if not _MNEMONIC_RE.match(t.mnemonic):
            out.append(Violation("BadMnemonic", path, f"{t.mnemonic!r} does not match THEME-NAME uppercase pattern"))
        if not t.surface.strip():
            out.append(Violation("EmptySurface", path, "surface description is empty"))
        if not t.name.strip():
            out.append(Violation("EmptyName", path, "topic name is empty"))
        for j, phrase in enumerate(t.phrases):
            if not phrase.strip():
                out.append(Violation("EmptyPhrase", f"{path}.phrases[{j}]", "phrase is empty"))
        _validate_node(t.tree, f"{path}.tree", set(), out)
    return out


def iter_terminals(node: TreeNode) -> Iterator[Terminal]:
    """All leaf assessments of a tree, in answer order."""
    if isinstance(node, Terminal):
        yield node
        return
    for ans in node.answers:
        yield from iter_terminals(ans.next)


def reference_taxonomy_path() -> Path:
    return Path(__file__).parent / "data" / "reference_taxonomy.json"


def load_reference_taxonomy() -> Taxonomy:
    """The taxonomy shipped with the package (66 topics)."""
    return load_taxonomy(reference_taxonomy_path())

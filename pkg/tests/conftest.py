from __future__ import annotations

import random
from pathlib import Path

import pytest

from hawkdove.llm import LlmClient, MockBackend, MockScript
from hawkdove.taxonomy import Answer, Question, Stance, Terminal, Topic, load_reference_taxonomy

FIXTURES = Path(__file__).parent / "fixtures"

_WORDS = [
    "inflation", "wages", "demand", "output", "risk", "target", "policy",
    "slack", "growth", "credit", "housing", "trade", "capacity", "pressure",
]
_SUFFIXES = ["", "?", " (net)", ' "so to speak"', " a\\b", " x | y"]


def random_tree(rng: random.Random, max_depth: int = 4, max_branch: int = 4, depth: int = 0):
    """Random decision tree with awkward characters to exercise escaping."""
    if depth >= max_depth or (depth > 0 and rng.random() < 0.3):
        return Terminal(rng.choice(list(Stance)), f"rationale {rng.randrange(1000)}")
    n_answers = rng.randint(2, max_branch)
    answers = []
    used: set[str] = set()
    for i in range(n_answers):
        label = f"{rng.choice(_WORDS)} {rng.choice(_WORDS)} {i}"
        while label in used:
            label += "x"
        used.add(label)
        answers.append(Answer(label, random_tree(rng, max_depth, max_branch, depth + 1)))
    text = (
        f"Is {rng.choice(_WORDS)} {rng.choice(['rising', 'falling', 'steady'])}"
        f"{rng.choice(_SUFFIXES)}"
    )
    return Question(text, tuple(answers))


def random_topic(rng: random.Random, max_depth: int = 4, max_branch: int = 4) -> Topic:
    return Topic(
        mnemonic=f"GEN-T{rng.randrange(10**6)}",
        name="generated",
        theme="generated",
        surface="generated test topic",
        phrases=("generated phrase",),
        tree=random_tree(rng, max_depth, max_branch),
    )


@pytest.fixture(scope="session")
def reference_taxonomy():
    return load_reference_taxonomy()


@pytest.fixture(scope="session")
def corpus_path() -> Path:
    return FIXTURES / "corpus20.jsonl"


@pytest.fixture(scope="session")
def mock_script_path() -> Path:
    return FIXTURES / "mock_script.json"


@pytest.fixture()
def scripted_client(mock_script_path) -> LlmClient:
    return LlmClient(MockBackend(MockScript.from_file(mock_script_path)))

"""Narrative diff: what is newly hawkish in the later statement?

Sentences carrying the chosen stance in the new document are matched
against the old document's stance sentences. Best matches at or above the
similarity threshold form the "similar points"; the rest are the "new
points". An unconstrained LLM call can summarise either set (the scripted
mock supplies a fixed summary here).
"""

from pathlib import Path

from hawkdove import load_reference_taxonomy
from hawkdove.corpus import load_corpus
from hawkdove.diff import partition_points, summarize_points
from hawkdove.llm import LlmClient, MockBackend, MockScript
from hawkdove.reasoner import Engine, EngineConfig
from hawkdove.taxonomy import Stance

HERE = Path(__file__).parent

taxonomy = load_reference_taxonomy()
docs = {d.doc_id: d for d in load_corpus(HERE / "data" / "sample_corpus.jsonl")}
engine = Engine(
    taxonomy,
    EngineConfig(backend="mock", mock_script=str(HERE / "data" / "mock_script.json")),
)

old = engine.classify_document(docs["stmt-2024-08"])
new = engine.classify_document(docs["stmt-2024-09"])

diff = partition_points(new, old, stance={Stance.HAWKISH, Stance.LEANING_HAWKISH}, tau=0.35)
print(f"stance filter: hawkish + leaning hawkish, tau = {diff.tau}\n")
print("similar points (matched to the August statement):")
for match in diff.similar:
    print(f"  sim {match.similarity:.2f}")
    print(f"    new: {match.new}")
    print(f"    old: {match.old}")
print("\nnew points (September only):")
for point in diff.new_points:
    print(f"  - {point}")

client = LlmClient(MockBackend(MockScript.from_file(HERE / "data" / "mock_script.json")))
print(f"\nsummary of new points: {summarize_points(list(diff.new_points), client)}")

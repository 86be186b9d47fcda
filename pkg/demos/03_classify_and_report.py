"""End-to-end classification of a small corpus with the scripted mock.

Every paragraph is annotated with topics, each topic's decision tree is
walked through one grammar-constrained completion, and a synthesis step
assigns the paragraph and per-sentence stance classes. The scripted mock
backend makes the whole run deterministic and offline; an HTTP backend
pointing at a grammar-capable inference server is a config change.

Writes self-contained HTML reports next to this script (out/).
"""

from pathlib import Path

from hawkdove import load_reference_taxonomy
from hawkdove.corpus import load_corpus
from hawkdove.reasoner import Engine, EngineConfig
from hawkdove.report import export_result_json, render_document_report

HERE = Path(__file__).parent
OUT = HERE / "out"
OUT.mkdir(exist_ok=True)

taxonomy = load_reference_taxonomy()
docs = load_corpus(HERE / "data" / "sample_corpus.jsonl")
config = EngineConfig(backend="mock", mock_script=str(HERE / "data" / "mock_script.json"))
engine = Engine(taxonomy, config)

for doc in docs:
    result = engine.classify_document(doc)
    print(f"\n{doc.doc_id} ({doc.date}, {doc.doc_type}): {len(result.paragraphs)} paragraphs")
    for para in result.paragraphs:
        topics = ", ".join(t.mnemonic for t in para.traces)
        print(f"  [{para.paragraph_index}] {para.paragraph_class.value:16s} topics: {topics}")
        for sentence, stance in para.sentence_classes:
            print(f"        {stance.value:16s} {sentence[:70]}")
    (OUT / f"{doc.doc_id}.result.json").write_bytes(export_result_json(result))
    bundle = render_document_report(result)
    (OUT / f"{doc.doc_id}.report.html").write_text(bundle.html, encoding="utf-8")

print(f"\nresult JSON and HTML reports written to {OUT}")

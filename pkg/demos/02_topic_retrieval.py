"""Hybrid topic retrieval for a paragraph.

The keyword route scores taxonomy phrases with BM25 and weights parent
topics by how many phrases land in the top 10; the dense route scores
topic surfaces with TF-IDF cosine (the offline default for the pluggable
dense scorer). Reciprocal rank fusion merges the two rankings.
"""

from hawkdove import load_reference_taxonomy
from hawkdove.retrieval import (
    PhraseIndex,
    dense_rank,
    fuse,
    hybrid_ranking,
    rank_phrases,
    select_topics,
    topics_from_phrases,
)

taxonomy = load_reference_taxonomy()
index = PhraseIndex.from_taxonomy(taxonomy)

paragraph = (
    "Underlying inflation remains above the target band while the labour market "
    "stays tight. Wages growth has picked up and job vacancies remain elevated."
)
print(f"paragraph:\n  {paragraph}\n")

ranked_phrases = rank_phrases(index, paragraph, k=10)
print("top-10 phrases by BM25:")
for pid, score in ranked_phrases:
    print(f"  {score:7.3f}  {index.phrases[pid]}")

keyword = topics_from_phrases(taxonomy, ranked_phrases)
print("\nkeyword topic ranking (phrase ownership counts):")
for entry in keyword.entries[:5]:
    print(f"  rank {entry.rank}: {entry.mnemonic} (count {entry.score:.0f})")

dense = dense_rank(paragraph, taxonomy.topics)
print("\ndense topic ranking (TF-IDF cosine against surfaces):")
for entry in dense.entries[:5]:
    print(f"  rank {entry.rank}: {entry.mnemonic} (cosine {entry.score:.3f})")

fused = fuse([keyword, dense], k_rrf=60.0)
print("\nfused ranking (reciprocal rank fusion, k=60):")
for entry in fused.entries[:5]:
    print(f"  rank {entry.rank}: {entry.mnemonic} (score {entry.score:.5f})")

selected = select_topics(fused, max_topics=3)
print(f"\ntopics selected for tree walking: {selected}")

# The one-call version used by the classification engine:
ranking, warnings = hybrid_ranking(taxonomy, index, paragraph)
assert ranking == fused and not warnings

"""Walk through the taxonomy data model and tree-to-grammar compilation.

The taxonomy ships with the package: 66 topics, each with retrieval
phrases and a small decision tree whose leaves carry stance assessments.
Compiling a tree yields a grammar whose language is exactly the set of
valid reasoning transcripts, which is what lets a constrained LLM walk
the tree without ever going off script.
"""

from hawkdove import load_reference_taxonomy
from hawkdove.grammar import compile_tree, enumerate_paths, parse_transcript, render_transcript

taxonomy = load_reference_taxonomy()
print(f"taxonomy version {taxonomy.version} with {len(taxonomy)} topics")
themes = sorted({t.theme for t in taxonomy.topics})
print(f"themes: {', '.join(themes)}\n")

topic = taxonomy.topic("CORE-INFLATION")
print(f"topic {topic.mnemonic}: {topic.surface}")
print(f"phrases: {', '.join(topic.phrases[:4])}, ...\n")

grammar = compile_tree(topic)
print("compiled grammar:")
print(grammar.grammar_text)

paths = enumerate_paths(topic.tree)
print(f"the tree has {len(paths)} root-to-terminal paths; transcript of the first:\n")
transcript = render_transcript(paths[0])
print(transcript)

# The transcript parses back to exactly the path that produced it.
recovered = parse_transcript(topic, transcript)
assert recovered == paths[0]
print("round trip: transcript -> path -> transcript is exact")

# Any edit to an answer label is rejected.
from hawkdove.grammar import TranscriptParseError

broken = transcript.replace("inflation risk discussed", "inflation risk discusses")
try:
    parse_transcript(topic, broken)
except TranscriptParseError as exc:
    print(f"mutated transcript rejected as expected: {exc}")

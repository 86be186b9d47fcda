import random

import pytest

from hawkdove.grammar import (
    compile_tree,
    enumerate_paths,
    parse_grammar,
    parse_transcript,
    render_transcript,
    TranscriptParseError,
)
from hawkdove.taxonomy import Answer, Question, Stance, Terminal, Topic

from .conftest import random_topic
from .oracles import grammar_language


def topic_of(tree, mnemonic="CORE-TEST") -> Topic:
    return Topic(mnemonic, "t", "core", "surface", ("p",), tree)


INFLATION_QUESTION = Question(
    "Is inflation described as a risk, are policymakers willing to tolerate inflationary "
    "pressures, or is there no mention at all?",
    (
        Answer("inflation risk discussed", Terminal(Stance.HAWKISH, "risk")),
        Answer("willing to tolerate inflation pressures", Terminal(Stance.DOVISH, "tolerate")),
        Answer("no mention of inflation", Terminal(Stance.NEUTRAL, "none")),
    ),
)


def full_binary(depth: int):
    if depth == 0:
        return Terminal(Stance.NEUTRAL, "leaf")
    return Question(
        f"level {depth} question",
        (
            Answer(f"left {depth}", full_binary(depth - 1)),
            Answer(f"right {depth}", full_binary(depth - 1)),
        ),
    )


def test_single_terminal_grammar_is_one_rule():
    grammar = compile_tree(topic_of(Terminal(Stance.NEUTRAL, "r")))
    assert grammar.grammar_text == 'root ::= "ASSESSMENT: neutral\\n"\n'
    assert grammar_language(grammar.grammar_text) == {"ASSESSMENT: neutral\n"}


def test_three_answer_question_grammar_shape():
    grammar = compile_tree(topic_of(INFLATION_QUESTION))
    lines = grammar.grammar_text.strip().splitlines()
    assert lines[0].startswith("root ::= ")
    assert lines[0].count("|") == 2  # three alternatives
    assert len(lines) == 4  # root + one rule per branch
    assert {l.split(" ::=")[0] for l in lines[1:]} == {"n_0", "n_1", "n_2"}
    lang = grammar_language(grammar.grammar_text)
    assert lang == {render_transcript(p) for p in enumerate_paths(INFLATION_QUESTION)}


def test_node_ids_map_paths():
    grammar = compile_tree(topic_of(INFLATION_QUESTION))
    assert grammar.node_ids["root"] == ()
    assert grammar.node_ids["n_1"] == (1,)
    assert grammar.topic_mnemonic == "CORE-TEST"


def test_enumerate_paths_counts():
    assert len(enumerate_paths(Terminal(Stance.NEUTRAL, ""))) == 1
    assert enumerate_paths(Terminal(Stance.NEUTRAL, ""))[0].steps == ()
    three = enumerate_paths(INFLATION_QUESTION)
    assert len(three) == 3
    assert all(len(p.steps) == 1 for p in three)
    assert len(enumerate_paths(full_binary(4))) == 16


def test_paths_are_in_answer_index_order():
    paths = enumerate_paths(full_binary(3))
    indices = [p.answer_indices for p in paths]
    assert indices == sorted(indices)


def test_compile_is_deterministic():
    rng = random.Random(7)
    topic = random_topic(rng)
    assert compile_tree(topic).grammar_text == compile_tree(topic).grammar_text


def test_parse_round_trip_on_example():
    topic = topic_of(INFLATION_QUESTION)
    for path in enumerate_paths(topic.tree):
        assert parse_transcript(topic, render_transcript(path)) == path


def test_parse_rejects_edited_label():
    topic = topic_of(INFLATION_QUESTION)
    text = render_transcript(enumerate_paths(topic.tree)[2])
    broken = text.replace("no mention of inflation", "no mention of inflatoin")
    with pytest.raises(TranscriptParseError) as err:
        parse_transcript(topic, broken)
    assert err.value.position > 0


def test_parse_rejects_truncation_and_trailing():
    topic = topic_of(INFLATION_QUESTION)
    text = render_transcript(enumerate_paths(topic.tree)[0])
    with pytest.raises(TranscriptParseError):
        parse_transcript(topic, text[:-5])
    with pytest.raises(TranscriptParseError, match="trailing"):
        parse_transcript(topic, text + "x")


def test_random_trees_bijection_against_language_oracle():
    rng = random.Random(20240514)
    for _ in range(50):
        topic = random_topic(rng, max_depth=3, max_branch=3)
        grammar = compile_tree(topic)
        paths = enumerate_paths(topic.tree)
        rendered = [render_transcript(p) for p in paths]
        lang = grammar_language(grammar.grammar_text)
        assert lang == set(rendered)
        for path, text in zip(paths, rendered):
            assert parse_transcript(topic, text) == path


def test_swapped_answer_labels_rejected():
    tree = Question(
        "pick",
        (
            Answer("alpha", Question("again", (
                Answer("x", Terminal(Stance.HAWKISH, "")),
                Answer("y", Terminal(Stance.DOVISH, "")),
            ))),
            Answer("beta", Terminal(Stance.NEUTRAL, "")),
        ),
    )
    topic = topic_of(tree)
    grammar = compile_tree(topic)
    lang = grammar_language(grammar.grammar_text)
    # swap: answer "beta" followed by alpha's subtree
    bad = "Q: pick\nA: beta\nQ: again\nA: x\nASSESSMENT: hawkish\n"
    assert bad not in lang
    with pytest.raises(TranscriptParseError):
        parse_transcript(topic, bad)


def test_escaping_round_trips():
    tree = Question(
        'Does "the target" hold (2-3 per cent | backslash \\ case)?',
        (
            Answer('answer with "quotes"', Terminal(Stance.HAWKISH, "")),
            Answer("answer with back\\slash", Terminal(Stance.DOVISH, "")),
        ),
    )
    topic = topic_of(tree)
    grammar = compile_tree(topic)
    rules = parse_grammar(grammar.grammar_text)
    paths = enumerate_paths(tree)
    for path in paths:
        text = render_transcript(path)
        assert rules.accepts(text)
        assert parse_transcript(topic, text) == path
    assert grammar_language(grammar.grammar_text) == {render_transcript(p) for p in paths}


def test_package_interpreter_agrees_with_oracle():
    rng = random.Random(99)
    for _ in range(20):
        topic = random_topic(rng, max_depth=3, max_branch=3)
        grammar = compile_tree(topic)
        rules = parse_grammar(grammar.grammar_text)
        lang = grammar_language(grammar.grammar_text)
        assert set(rules.language()) == lang
        for text in lang:
            assert rules.accepts(text)


def test_adversarial_label_and_question_shapes():
    # question text embedding transcript markers, labels that prefix each other
    tree = Question(
        "Looks like a transcript already?\nA: fake answer with Q: inside",
        (
            Answer("up", Question(
                "second level",
                (
                    Answer("left", Terminal(Stance.HAWKISH, "")),
                    Answer("right", Terminal(Stance.DOVISH, "")),
                ),
            )),
            Answer("up and away", Terminal(Stance.NEUTRAL, "")),
        ),
    )
    topic = topic_of(tree)
    grammar = compile_tree(topic)
    paths = enumerate_paths(tree)
    lang = grammar_language(grammar.grammar_text)
    assert lang == {render_transcript(p) for p in paths}
    for path in paths:
        assert parse_transcript(topic, render_transcript(path)) == path
    # choosing "up" must not be confusable with "up and away"
    up_path = next(p for p in paths if p.answer_indices[0] == 0)
    away_path = next(p for p in paths if p.answer_indices == (1,))
    assert parse_transcript(topic, render_transcript(away_path)).terminal.stance is Stance.NEUTRAL
    assert parse_transcript(topic, render_transcript(up_path)).steps[0].answer == "up"


def test_duplicate_sibling_labels_fail_compilation():
    from hawkdove.grammar import GrammarCompileError

    tree = Question(
        "pick",
        (
            Answer("same", Terminal(Stance.HAWKISH, "")),
            Answer("same", Terminal(Stance.DOVISH, "")),
        ),
    )
    with pytest.raises(GrammarCompileError, match="same"):
        compile_tree(topic_of(tree))


def test_parse_grammar_validates_structure():
    from hawkdove.grammar import GrammarTextError

    with pytest.raises(GrammarTextError):
        parse_grammar("n ::= \"x\"\n")  # no root
    with pytest.raises(GrammarTextError):
        parse_grammar("root ::= missing\n")  # undefined reference
    with pytest.raises(GrammarTextError):
        parse_grammar("root ::= \"a\" | \"b\"\n")  # alternatives must be grouped

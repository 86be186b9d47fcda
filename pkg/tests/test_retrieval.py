import random

import pytest
from hypothesis import given, strategies as st

from hawkdove.retrieval import (
    Bm25Params,
    DenseScorerError,
    PhraseIndex,
    RankedTopic,
    TopicRanking,
    dense_rank,
    fuse,
    hybrid_ranking,
    phrase_table,
    rank_phrases,
    select_topics,
    tokenize,
    topics_from_phrases,
)
from hawkdove.taxonomy import Stance, Taxonomy, Terminal, Topic

from .oracles import bm25_scores, rrf_scores, tfidf_cosine

TOY_PHRASES = [
    "inflationary pressures",
    "underlying inflation remains high",
    "labour market slack",
    "wages growth and labour costs",
    "housing prices",
]


def make_topic(mnemonic, phrases, surface="surface text"):
    return Topic(mnemonic, mnemonic.lower(), "theme", surface, tuple(phrases), Terminal(Stance.NEUTRAL, "r"))


def make_taxonomy(*topics):
    return Taxonomy(topics=tuple(topics), version="t", schema_version=1)


def test_tokenize_examples():
    assert tokenize("Full Employment,") == ["full", "employment"]
    assert tokenize("") == []
    assert tokenize("2–3 per cent target") == ["2", "3", "per", "cent", "target"]
    assert tokenize("CPI; (trimmed-mean)") == ["cpi", "trimmed", "mean"]


def test_bm25_params_validated():
    with pytest.raises(ValueError):
        Bm25Params(k1=-0.1)
    with pytest.raises(ValueError):
        Bm25Params(b=1.5)


def test_verbatim_phrase_ranks_first():
    index = PhraseIndex.from_phrases(TOY_PHRASES)
    ranked = rank_phrases(index, "labour market slack", k=3)
    assert ranked[0][0] == 2


def test_bm25_matches_oracle_on_toy_corpus():
    index = PhraseIndex.from_phrases(TOY_PHRASES)
    query = "inflation remains high and the labour market is tight"
    expected = bm25_scores(TOY_PHRASES, query)
    ranked = dict(rank_phrases(index, query, k=len(TOY_PHRASES)))
    for pid, score in enumerate(expected):
        if any(t in index.postings and any(p == pid for p, _ in index.postings[t]) for t in tokenize(query)):
            assert ranked[pid] == pytest.approx(score, abs=1e-12)
        else:
            assert pid not in ranked or ranked[pid] == 0.0
    for pid, score in ranked.items():
        assert score == pytest.approx(expected[pid], abs=1e-9)


def test_bm25_matches_oracle_on_random_corpora():
    rng = random.Random(4242)
    words = ["inflation", "wages", "rate", "market", "growth", "housing", "credit", "the", "of"]
    for _ in range(10):
        phrases = [
            " ".join(rng.choices(words, k=rng.randint(1, 6))) for _ in range(rng.randint(2, 20))
        ]
        index = PhraseIndex.from_phrases(phrases)
        query = " ".join(rng.choices(words, k=rng.randint(1, 10)))
        expected = bm25_scores(phrases, query)
        for pid, score in rank_phrases(index, query, k=len(phrases)):
            assert score == pytest.approx(expected[pid], abs=1e-9)


def test_rank_phrases_ties_break_to_lower_id():
    index = PhraseIndex.from_phrases(["alpha beta", "alpha beta", "gamma"])
    ranked = rank_phrases(index, "alpha", k=3)
    assert [pid for pid, _ in ranked[:2]] == [0, 1]


def test_rank_phrases_k_validation():
    index = PhraseIndex.from_phrases(TOY_PHRASES)
    with pytest.raises(ValueError):
        rank_phrases(index, "x", k=0)
    assert rank_phrases(index, "no overlap here", k=10) == []


def test_phrase_table_dedupes_and_tracks_owners():
    a = make_topic("TH-A", ["shared phrase", "only a"])
    b = make_topic("TH-B", ["shared phrase", "only b"])
    phrases, owners = phrase_table(make_taxonomy(a, b))
    assert phrases == ("shared phrase", "only a", "only b")
    assert owners[0] == ("TH-A", "TH-B")


def test_topics_from_phrases_counts():
    a = make_topic("TH-A", ["a1", "a2", "a3", "a4", "a5", "a6"])
    b = make_topic("TH-B", ["b1", "b2", "b3", "b4"])
    taxonomy = make_taxonomy(a, b)
    ranked = [(i, 1.0) for i in range(10)]  # 6 of A then 4 of B
    ranking = topics_from_phrases(taxonomy, ranked)
    assert ranking.entries[0] == RankedTopic("TH-A", 6.0, 1)
    assert ranking.entries[1] == RankedTopic("TH-B", 4.0, 2)


def test_single_topic_takes_whole_top_k():
    a = make_topic("TH-A", [f"p{i}" for i in range(10)])
    taxonomy = make_taxonomy(a)
    ranking = topics_from_phrases(taxonomy, [(i, 1.0) for i in range(10)])
    assert ranking.entries == (RankedTopic("TH-A", 10.0, 1),)


def test_shared_phrase_counts_once_per_owner():
    a = make_topic("TH-A", ["shared phrase"])
    b = make_topic("TH-B", ["shared phrase"])
    taxonomy = make_taxonomy(a, b)
    ranking = topics_from_phrases(taxonomy, [(0, 2.0)])
    assert {(e.mnemonic, e.score) for e in ranking.entries} == {("TH-A", 1.0), ("TH-B", 1.0)}
    total = sum(e.score for e in ranking.entries)
    assert total == 2  # one contribution per owning topic


def test_dense_rank_identical_surface_first():
    topics = [
        make_topic("TH-A", ["x"], surface="wages growth outlook"),
        make_topic("TH-B", ["y"], surface="housing market conditions"),
    ]
    ranking = dense_rank("housing market conditions", topics)
    assert ranking.entries[0].mnemonic == "TH-B"
    assert ranking.entries[0].score == pytest.approx(1.0)


def test_dense_rank_empty_paragraph_scores_zero_input_order():
    topics = [make_topic(f"TH-T{i}", ["x"], surface=f"surface {i}") for i in range(4)]
    ranking = dense_rank("", topics)
    assert [e.score for e in ranking.entries] == [0.0] * 4
    assert ranking.mnemonics() == [t.mnemonic for t in topics]


def test_dense_rank_matches_hand_cosine():
    surfaces = [
        "inflation and inflationary pressures",
        "labour market tightness and slack",
        "housing prices and rents",
        "commodity prices oil and gas",
    ]
    topics = [make_topic(f"TH-T{i}", ["x"], surface=s) for i, s in enumerate(surfaces)]
    paragraph = "rents and housing prices rose while inflation eased"
    ranking = dense_rank(paragraph, topics)
    by_mnemonic = {e.mnemonic: e.score for e in ranking.entries}
    for i, surface in enumerate(surfaces):
        expected = tfidf_cosine(surfaces, paragraph, surface)
        assert by_mnemonic[f"TH-T{i}"] == pytest.approx(expected, abs=1e-9)


def test_dense_scorer_failure_is_reported():
    class Broken:
        def score(self, paragraph, surfaces):
            raise RuntimeError("backend down")

    with pytest.raises(DenseScorerError):
        dense_rank("text", [make_topic("TH-A", ["x"])], Broken())


def test_dense_scorer_bad_range_rejected():
    class OutOfRange:
        def score(self, paragraph, surfaces):
            return [1.5 for _ in surfaces]

    with pytest.raises(DenseScorerError):
        dense_rank("text", [make_topic("TH-A", ["x"])], OutOfRange())


def ranking_of(*pairs) -> TopicRanking:
    return TopicRanking(tuple(RankedTopic(m, s, i + 1) for i, (m, s) in enumerate(pairs)))


def test_fuse_single_ranking_preserves_order():
    r = ranking_of(("TH-A", 5.0), ("TH-B", 3.0), ("TH-C", 1.0))
    fused = fuse([r])
    assert fused.mnemonics() == ["TH-A", "TH-B", "TH-C"]


def test_fuse_double_rank1_value():
    r1 = ranking_of(("TH-A", 2.0))
    r2 = ranking_of(("TH-A", 9.0))
    fused = fuse([r1, r2], k_rrf=60.0)
    assert fused.entries[0].score == pytest.approx(2 / 61, abs=1e-12)


def test_fuse_hand_example():
    r1 = ranking_of(("TH-A", 3.0), ("TH-B", 2.0), ("TH-X", 1.5), ("TH-Y", 1.0))
    r2 = ranking_of(("TH-B", 8.0), ("TH-X", 7.0), ("TH-A", 6.0))
    # A: ranks (1, 3); B: ranks (2, 1)
    fused = fuse([r1, r2], k_rrf=60.0)
    scores = {e.mnemonic: e.score for e in fused.entries}
    assert scores["TH-A"] == pytest.approx(1 / 61 + 1 / 63, abs=1e-12)
    assert scores["TH-B"] == pytest.approx(1 / 62 + 1 / 61, abs=1e-12)
    assert fused.mnemonics().index("TH-B") < fused.mnemonics().index("TH-A")


def test_fuse_matches_oracle_and_is_permutation_invariant():
    rng = random.Random(11)
    names = [f"TH-T{i}" for i in range(8)]
    rankings = []
    for _ in range(3):
        chosen = rng.sample(names, rng.randint(2, 8))
        rankings.append(ranking_of(*[(m, float(len(chosen) - i)) for i, m in enumerate(chosen)]))
    expected = rrf_scores([{e.mnemonic: e.rank for e in r.entries} for r in rankings])
    fused = fuse(rankings)
    assert {e.mnemonic: e.score for e in fused.entries} == pytest.approx(expected)
    shuffled = fuse(rankings[::-1])
    assert shuffled == fused


def test_fuse_monotone_in_rank():
    base = fuse([ranking_of(("TH-A", 2.0), ("TH-B", 1.0))])
    better = fuse([ranking_of(("TH-B", 2.0), ("TH-A", 1.0))])
    b_base = next(e.score for e in base.entries if e.mnemonic == "TH-B")
    b_better = next(e.score for e in better.entries if e.mnemonic == "TH-B")
    assert b_better > b_base


def test_fuse_validates_inputs():
    with pytest.raises(ValueError):
        fuse([], k_rrf=60.0)
    with pytest.raises(ValueError):
        fuse([ranking_of(("TH-A", 1.0))], k_rrf=0.0)


def test_select_topics_rules():
    r = ranking_of(("TH-A", 5.0), ("TH-B", 4.0), ("TH-C", 3.0), ("TH-D", 2.0), ("TH-E", 1.0))
    assert select_topics(r, max_topics=3, min_score=0.0) == ["TH-A", "TH-B", "TH-C"]
    assert select_topics(r, max_topics=3, min_score=10.0) == ["TH-A"]
    assert select_topics(TopicRanking(()), max_topics=3) == []
    with pytest.raises(ValueError):
        select_topics(r, max_topics=0)


def test_hybrid_pipeline_deterministic(reference_taxonomy):
    index = PhraseIndex.from_taxonomy(reference_taxonomy)
    paragraph = "Underlying inflation remains high while the labour market stays tight."
    first, warn1 = hybrid_ranking(reference_taxonomy, index, paragraph)
    second, warn2 = hybrid_ranking(reference_taxonomy, index, paragraph)
    assert first == second
    assert warn1 == warn2 == []
    assert "CORE-INFLATION" in first.mnemonics()[:5]


def test_hybrid_degrades_to_keyword_only(reference_taxonomy):
    class Broken:
        def score(self, paragraph, surfaces):
            raise DenseScorerError("boom")

    index = PhraseIndex.from_taxonomy(reference_taxonomy)
    ranking, warnings = hybrid_ranking(
        reference_taxonomy, index, "inflationary pressures", scorer=Broken()
    )
    assert warnings and "keyword-only" in warnings[0]
    assert ranking.entries  # keyword route still produced a ranking


@given(st.text(max_size=200))
def test_tokenize_output_shape(text):
    for token in tokenize(text):
        assert token
        assert token == token.lower()
        assert all(c.isalnum() for c in token)


@given(st.integers(min_value=1, max_value=50), st.integers(min_value=1, max_value=50))
def test_rrf_monotonicity_property(rank_a, rank_b):
    k = 60.0
    score = 1 / (k + rank_a) + 1 / (k + rank_b)
    improved = 1 / (k + max(rank_a - 1, 1)) + 1 / (k + rank_b)
    assert improved >= score

import datetime as dt
import itertools

import pytest
from hypothesis import given, strategies as st

from hawkdove.scoring import (
    FIVE_CLASS,
    THREE_CLASS,
    ScoreError,
    ScorePoint,
    ScoreScheme,
    ScoreSeries,
    classification_metrics,
    collapse_to_three,
    document_score,
    moving_average,
    normalize_series,
    series_from_csv,
    series_to_csv,
)
from hawkdove.taxonomy import Stance

D = Stance.DOVISH
LD = Stance.LEANING_DOVISH
N = Stance.NEUTRAL
LH = Stance.LEANING_HAWKISH
H = Stance.HAWKISH


def result_with(sentence_stances):
    """Minimal DocumentResult carrying the given sentence classes."""
    from hawkdove.reasoner import DocumentResult, ParagraphResult
    from hawkdove.retrieval import TopicRanking

    para = ParagraphResult(
        paragraph_index=0,
        text="text",
        topics=TopicRanking(()),
        traces=(),
        paragraph_class=N,
        sentence_classes=tuple((f"s{i}", s) for i, s in enumerate(sentence_stances)),
    )
    return DocumentResult(
        doc_id="d", date=dt.date(2024, 1, 1), doc_type="statement", paragraphs=(para,)
    )


def series_of(*scores):
    return ScoreSeries(
        tuple(
            ScorePoint(dt.date(2024, 1, 1) + dt.timedelta(days=i), f"d{i}", "statement", s)
            for i, s in enumerate(scores)
        )
    )


def test_point_ranges():
    assert [FIVE_CLASS.points(s) for s in Stance] == [1, 2, 3, 4, 5]
    assert [THREE_CLASS.points(s) for s in (D, N, H)] == [-1, 0, 1]
    assert THREE_CLASS.points(LD) == -1
    assert THREE_CLASS.points(LH) == 1


def test_collapse_examples_and_idempotence():
    assert collapse_to_three(N) is N
    assert collapse_to_three(LH) is H
    assert collapse_to_three(LD) is D
    for s in Stance:
        assert collapse_to_three(collapse_to_three(s)) is collapse_to_three(s)


def test_scheme_mapping_field():
    assert ScoreScheme("five_class").mapping[H] == 5
    assert ScoreScheme("three_class").mapping[D] == -1
    with pytest.raises(ValueError):
        ScoreScheme("seven_class")


def test_document_score_all_neutral():
    assert document_score(result_with([N, N, N]), FIVE_CLASS) == 3.0


def test_document_score_symmetry():
    assert document_score(result_with([H, D]), THREE_CLASS) == 0.0


def test_document_score_23_over_7():
    stances = [H, H, N, N, N, LD, LD]
    assert document_score(result_with(stances), FIVE_CLASS) == pytest.approx(23 / 7, abs=1e-12)


def test_document_score_empty_errors():
    with pytest.raises(ScoreError):
        document_score(result_with([]), FIVE_CLASS)


def test_document_score_permutation_invariant():
    stances = [H, D, N, LH, LD, N, H]
    base = document_score(result_with(stances), FIVE_CLASS)
    for perm in itertools.islice(itertools.permutations(stances), 20):
        assert document_score(result_with(list(perm)), FIVE_CLASS) == pytest.approx(base)


def test_three_class_negation_negates_score():
    stances = [H, H, N, D, LH]
    flipped = {H: D, D: H, LH: LD, LD: LH, N: N}
    score = document_score(result_with(stances), THREE_CLASS)
    neg = document_score(result_with([flipped[s] for s in stances]), THREE_CLASS)
    assert neg == pytest.approx(-score)


def test_collapse_then_score_equals_three_class_points():
    for s in Stance:
        assert THREE_CLASS.points(s) == THREE_CLASS.mapping[collapse_to_three(s)]


def test_normalize_two_points():
    normalized = normalize_series(series_of(1.0, 3.0))
    assert normalized.scores() == pytest.approx([-1.0, 1.0])


def test_normalize_zero_variance_errors():
    with pytest.raises(ScoreError):
        normalize_series(series_of(2.0, 2.0, 2.0))
    with pytest.raises(ScoreError):
        normalize_series(series_of(1.0))


def test_normalize_output_moments():
    s = normalize_series(series_of(0.4, 1.9, -2.2, 3.3, 0.0, 1.1))
    xs = s.scores()
    mean = sum(xs) / len(xs)
    var = sum((x - mean) ** 2 for x in xs) / len(xs)
    assert abs(mean) < 1e-9
    assert var == pytest.approx(1.0, abs=1e-9)


def test_moving_average_window_one_is_identity():
    s = series_of(5.0, 1.0, 4.0)
    assert moving_average(s, 1) == s


def test_moving_average_expanding_head():
    out = moving_average(series_of(1.0, 2.0, 3.0, 4.0), 3)
    assert out.scores() == pytest.approx([1.0, 1.5, 2.0, 3.0])


def test_moving_average_constant_series():
    out = moving_average(series_of(2.0, 2.0, 2.0, 2.0), 3)
    assert out.scores() == [2.0] * 4


def test_moving_average_bounds_property():
    s = series_of(3.0, -1.0, 4.0, 1.0, 5.0, -9.0)
    out = moving_average(s, 3)
    assert len(out) == len(s)
    lo, hi = min(s.scores()), max(s.scores())
    assert all(lo <= x <= hi for x in out.scores())


def test_metrics_identical():
    assert classification_metrics([N, H, D], [N, H, D], THREE_CLASS) == (1.0, 0.0)


def test_metrics_all_hawkish_vs_all_dovish():
    acc, err = classification_metrics([H, H], [D, D], THREE_CLASS)
    assert (acc, err) == (0.0, 2.0)


def test_metrics_mixed():
    acc, err = classification_metrics([N, H], [H, H], THREE_CLASS)
    assert acc == 0.5
    assert err == pytest.approx(-0.5)


def test_metrics_three_class_collapses_before_equality():
    acc, err = classification_metrics([LH], [H], THREE_CLASS)
    assert acc == 1.0
    assert err == 0.0


def test_metrics_length_mismatch():
    with pytest.raises(ScoreError):
        classification_metrics([N], [N, N], FIVE_CLASS)


def test_series_csv_round_trip():
    s = series_of(1.0, 2.5, -0.75)
    text = series_to_csv(s)
    assert text.splitlines()[0] == "date,doc_id,doc_type,score"
    assert series_from_csv(text) == s


def test_series_dates_must_be_sorted():
    with pytest.raises(ValueError):
        ScoreSeries(
            (
                ScorePoint(dt.date(2024, 2, 1), "a", "statement", 1.0),
                ScorePoint(dt.date(2024, 1, 1), "b", "statement", 2.0),
            )
        )
    built = ScoreSeries.build(
        [
            ScorePoint(dt.date(2024, 2, 1), "a", "statement", 1.0),
            ScorePoint(dt.date(2024, 1, 1), "b", "statement", 2.0),
        ]
    )
    assert [p.doc_id for p in built.points] == ["b", "a"]


@given(st.lists(st.floats(min_value=-50, max_value=50), min_size=1, max_size=30),
       st.integers(min_value=1, max_value=10))
def test_moving_average_is_convex_combination(scores, window):
    s = series_of(*scores)
    out = moving_average(s, window)
    assert len(out) == len(s)
    for x in out.scores():
        assert min(scores) - 1e-9 <= x <= max(scores) + 1e-9

import csv
import io
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infodemic.corpus import Corpus, Label, NewsArticle
from infodemic.features import MISC_FEATURE_NAMES, featurize_corpus
from infodemic.postag import TAGS
from infodemic.reports import feature_comparison, pos_distribution_report, top_bigrams


def corpus_of(fake, real):
    arts = [NewsArticle(f"f{i}", t, Label.FAKE) for i, t in enumerate(fake)]
    arts += [NewsArticle(f"r{i}", t, Label.REAL) for i, t in enumerate(real)]
    return Corpus(tuple(arts))


def test_pos_distribution_single_sentence():
    report = pos_distribution_report(corpus_of(["The minister said."], ["Stay home."]))
    top = dict(report.ranking(Label.FAKE))
    assert {t: r for t, r in top.items() if r} == {"DT": 0.25, "NN": 0.25, "VBD": 0.25, "PUNCT": 0.25}
    assert len(report.ranking("Fake")) == len(TAGS)
    # zero-ratio tags follow in alphabetical order
    zeros = [t for t, r in report.ranking(Label.FAKE) if r == 0]
    assert zeros == sorted(zeros)


def test_pos_distribution_empty_class():
    report = pos_distribution_report(corpus_of(["Stay home."], []))
    assert report.ranking(Label.REAL) == ()
    assert "Real," not in report.to_csv()


def test_top_bigram_counts_documents_not_occurrences():
    fake = [
        "Movement control extended. Movement control, movement control!",
        "Movement control tightened today.",
        "Police enforce movement control.",
        "Nothing here.",
    ]
    ranking = top_bigrams(corpus_of(fake, ["Stay home now."]), n=2)
    first = ranking.per_class[Label.FAKE][0]
    assert first == ("movement control", 3)
    assert len(ranking.per_class[Label.FAKE]) == 2


def test_top_bigram_ties_break_lexicographically():
    text = "Masks help doctors. Doctors wear masks. Hospitals need beds."
    ranking = top_bigrams(corpus_of([text], ["Stay home."]), n=2)
    # stemmed bigrams, all with df 1: "doctor wear" < "help doctor" < "hospit need" < ...
    assert ranking.per_class[Label.FAKE] == (("doctor wear", 1), ("help doctor", 1))
    with pytest.raises(ValueError):
        top_bigrams(corpus_of(["a b"], ["c d"]), n=0)


def test_feature_direction():
    cmp = feature_comparison(corpus_of(["AA"], ["aa"]))
    assert cmp.direction["uppercase_ratio"] == "Fake"
    assert cmp.per_class_values[Label.FAKE]["uppercase_ratio"] == (1.0, 0.0)
    same = feature_comparison(corpus_of(["Stay home."], ["Stay home."]))
    assert set(same.direction.values()) == {"equal"}


def test_feature_comparison_against_statistics_oracle():
    import statistics

    fake = ["Hi!! 55 cases.", "the cat sat on the mat", "WOW"]
    real = ["Officials met on Monday. They agreed.", "Stay home."]
    corpus = corpus_of(fake, real)
    docs = featurize_corpus(corpus)
    cmp = feature_comparison(corpus, docs)
    for lab in Label:
        group = [d for a, d in zip(corpus, docs) if a.label is lab]
        for j, name in enumerate(MISC_FEATURE_NAMES):
            col = [d.misc.as_array()[j] for d in group]
            mean, sd = cmp.per_class_values[lab][name]
            assert mean == pytest.approx(statistics.fmean(col), abs=1e-12)
            assert sd == pytest.approx(statistics.pstdev(col), abs=1e-12)


def test_csv_shapes(small_synthetic):
    corpus, docs = small_synthetic
    rows = list(csv.DictReader(io.StringIO(feature_comparison(corpus, docs).to_csv())))
    assert len(rows) == 2 * len(MISC_FEATURE_NAMES)
    rows = list(csv.DictReader(io.StringIO(top_bigrams(corpus, 20, docs).to_csv())))
    assert len(rows) == 40 and rows[0]["rank"] == "1"
    rows = list(csv.DictReader(io.StringIO(pos_distribution_report(corpus, docs).to_csv())))
    assert len(rows) == 2 * len(TAGS)


def test_reports_are_byte_stable(small_synthetic):
    corpus, docs = small_synthetic
    fresh = featurize_corpus(corpus)
    assert pos_distribution_report(corpus, docs).to_csv() == pos_distribution_report(corpus, fresh).to_csv()
    assert top_bigrams(corpus, 20, docs).to_markdown() == top_bigrams(corpus, 20, fresh).to_markdown()
    assert feature_comparison(corpus, docs).to_csv() == feature_comparison(corpus, fresh).to_csv()


sentences = st.lists(
    st.sampled_from(["Stay home.", "The minister said 5 cases.", "wow!!", "Movement control order now", "!!!"]),
    min_size=1,
    max_size=5,
).map(" ".join)


@settings(max_examples=40)
@given(st.lists(sentences, min_size=1, max_size=6), st.lists(sentences, min_size=1, max_size=6), st.integers(1, 30))
def test_report_invariants(fake, real, n):
    corpus = corpus_of(fake, real)
    docs = featurize_corpus(corpus)
    pos = pos_distribution_report(corpus, docs)
    for lab in Label:
        ranking = pos.ranking(lab)
        if ranking:
            assert math.fsum(r for _, r in ranking) == pytest.approx(1.0, abs=1e-9)
    bigrams = top_bigrams(corpus, n, docs)
    for lab, size in ((Label.FAKE, len(fake)), (Label.REAL, len(real))):
        listed = bigrams.per_class[lab]
        assert len(listed) <= n
        assert all(1 <= df <= size for _, df in listed)
        assert [df for _, df in listed] == sorted((df for _, df in listed), reverse=True)

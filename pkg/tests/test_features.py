import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from infodemic.errors import UnfittedVectorizer
from infodemic.features import (
    MISC_FEATURE_NAMES,
    SETUPS,
    Setup,
    assemble_feature_vector,
    assemble_matrix,
    extract_bigrams,
    featurize_corpus,
    featurize_document,
    feature_layout,
    fit_vectorizer,
    misc_features,
    numeric_ratio,
    punctuation_ratio,
    sentence_count,
    stopword_ratio,
    type_token_ratio,
    uppercase_ratio,
    words_per_sentence,
)
from infodemic.postag import TAGS
from infodemic.textproc import ProcessedDocument, process_document
from infodemic.vectorize import Vectorizer


def test_mini_corpus_matches_hand_oracle(mini_corpus, mini_oracle):
    docs = featurize_corpus(mini_corpus)
    assert len(mini_oracle) == 12
    for art, doc in zip(mini_corpus, docs):
        got = doc.misc.as_array()
        np.testing.assert_allclose(got, mini_oracle[art.id], rtol=0, atol=1e-9, err_msg=art.id)


@pytest.mark.parametrize(
    "fn, text, expected",
    [
        (uppercase_ratio, "AB cd", 0.4),
        (uppercase_ratio, "abcd", 0.0),
        (uppercase_ratio, "", 0.0),
        (punctuation_ratio, "Hi!!", 0.5),
        (punctuation_ratio, "abcd", 0.0),
        (punctuation_ratio, "!!!", 1.0),
        (punctuation_ratio, "«a»", 2 / 3),
        (numeric_ratio, "covid19", 2 / 7),
        (numeric_ratio, "abc", 0.0),
        (numeric_ratio, "2020", 1.0),
    ],
)
def test_character_ratios(fn, text, expected):
    assert fn(text) == pytest.approx(expected, abs=1e-12)


def words_doc(words, sentences=1):
    return ProcessedDocument("d", ((),) * sentences, tuple(words), (), 0)


def test_word_ratios():
    assert stopword_ratio(words_doc(["the", "mask", "is", "red"])) == 0.5
    assert stopword_ratio(words_doc(["mask", "red"])) == 0.0
    assert stopword_ratio(words_doc([])) == 0.0
    assert type_token_ratio(process_document("a", "the cat sat on the mat")) == pytest.approx(5 / 6)
    assert type_token_ratio(words_doc(["a", "b", "c"])) == 1.0
    assert type_token_ratio(process_document("a", "go go go")) == pytest.approx(1 / 3)


def test_sentence_features():
    assert sentence_count(process_document("a", "A fact. Another fact. Done.")) == 3
    assert sentence_count(process_document("a", "")) == 0
    assert sentence_count(process_document("a", "one unterminated sentence")) == 1
    assert words_per_sentence(words_doc(list("abcdef"), sentences=2)) == 3.0
    assert words_per_sentence(words_doc([], sentences=0)) == 0.0
    assert words_per_sentence(words_doc(list("abcde"))) == 5.0


def test_degenerate_text_flagged():
    m = misc_features("", process_document("e", ""))
    assert m.degenerate
    assert not m.as_array().any()


@given(st.text(max_size=300))
def test_misc_ranges(text):
    m = misc_features(text, process_document("x", text))
    for name in MISC_FEATURE_NAMES[:5]:
        assert 0.0 <= getattr(m, name) <= 1.0
    assert m.sentence_count >= 0 and m.words_per_sentence >= 0
    if m.sentence_count == 0:
        assert m.words_per_sentence == 0


def test_bigrams_within_sentences():
    doc = ProcessedDocument("d", (), (), (("movement", "control", "order"),), 0)
    assert extract_bigrams(doc) == {"movement control", "control order"}
    single = ProcessedDocument("d", (), (), (("mask",),), 0)
    assert extract_bigrams(single) == frozenset()
    two = ProcessedDocument("d", (), (), (("a", "b"), ("c", "d")), 0)
    assert extract_bigrams(two) == {"a b", "c d"}


@given(st.lists(st.lists(st.sampled_from("abcdef"), max_size=6), max_size=5))
def test_bigrams_never_cross_boundaries(sentences):
    doc = ProcessedDocument("d", (), (), tuple(map(tuple, sentences)), 0)
    inside = {f"{a} {b}" for s in sentences for a, b in zip(s, s[1:])}
    assert extract_bigrams(doc) == inside


def fitted_on(texts):
    docs = [featurize_document(str(i), t) for i, t in enumerate(texts)]
    return docs, fit_vectorizer(docs)


TEXTS = [
    "Wear a face mask in the red zone. Stay home.",
    "The face mask rule applies in the red zone.",
    "Stay home and wash hands. Face mask required.",
    "Hospitals report new cases in the red zone.",
]


def test_layout_partitions_vector():
    docs, fitted = fitted_on(TEXTS)
    n_uni, n_bi = len(fitted.unigram_vocab), len(fitted.bigram_vocab)
    expected = {
        Setup.BASELINE: n_uni,
        Setup.BIGRAM: n_uni + n_bi,
        Setup.POS: n_uni + len(TAGS),
        Setup.MISC: n_uni + 7,
        Setup.ALL: n_uni + 7 + len(TAGS) + n_bi,
    }
    for setup in SETUPS:
        layout = feature_layout(setup, fitted)
        assert layout.length == expected[setup]
        offset = 0
        for seg in layout.segments:
            assert seg.offset == offset
            offset += seg.length
        assert offset == layout.length
        assert len(layout.column_names()) == layout.length
    names = [s.name for s in feature_layout(Setup.ALL, fitted).segments]
    assert names == ["baseline_terms", "misc", "pos", "bigram_indicators"]


def test_all_layout_arithmetic_with_published_sizes():
    # 1000 unigrams + 7 misc + 37 tags + 500 bigrams
    fitted = Vectorizer()
    docs = [[f"u{i}" for i in range(1000)]] * 2
    bigrams = [{f"b {i}" for i in range(500)}] * 2
    fitted.fit(docs, bigrams, np.zeros((2, 7)))
    assert feature_layout(Setup.ALL, fitted).length == 1000 + 7 + len(TAGS) + 500
    assert feature_layout(Setup.BASELINE, fitted).length == 1000


def test_bigram_indicator_for_face_mask():
    docs, fitted = fitted_on(TEXTS)
    vec = assemble_feature_vector(docs[0], Setup.BIGRAM, fitted)
    seg = vec.segment_values("bigram_indicators")
    j = fitted.bigram_vocab.term_index["face mask"]
    assert seg[j] == 1.0
    assert set(np.unique(seg)) <= {0.0, 1.0}
    present = {fitted.bigram_vocab.terms[i] for i in np.flatnonzero(seg)}
    assert present == docs[0].bigrams & set(fitted.bigram_vocab.terms)


def test_misc_segment_scaled_and_clipped():
    docs, fitted = fitted_on(TEXTS)
    train, _ = assemble_matrix(docs, Setup.MISC, fitted)
    seg = feature_layout(Setup.MISC, fitted).segment("misc")
    block = train.toarray()[:, seg.offset : seg.offset + seg.length]
    assert block.min() >= 0.0 and block.max() <= 1.0
    outlier = featurize_document("x", "ALL CAPS 12345!!! " * 20)
    test_block = assemble_feature_vector(outlier, Setup.MISC, fitted).segment_values("misc")
    assert test_block.min() >= 0.0 and test_block.max() <= 1.0


def test_pos_segment_matches_ratios():
    docs, fitted = fitted_on(TEXTS)
    vec = assemble_feature_vector(docs[1], Setup.POS, fitted)
    np.testing.assert_allclose(vec.segment_values("pos"), docs[1].pos)
    assert vec.segment_values("pos").sum() == pytest.approx(1.0)


def test_same_layout_for_all_documents():
    docs, fitted = fitted_on(TEXTS)
    layouts = {assemble_feature_vector(d, Setup.ALL, fitted).layout for d in docs}
    assert len(layouts) == 1


def test_unfitted_vectorizer_rejected():
    doc = featurize_document("a", "Stay home.")
    with pytest.raises(UnfittedVectorizer):
        assemble_feature_vector(doc, Setup.BASELINE, Vectorizer())
    with pytest.raises(UnfittedVectorizer):
        assemble_feature_vector(doc, Setup.BASELINE, None)


def test_setup_parse():
    assert Setup.parse("all") is Setup.ALL
    assert Setup.parse(" pos ") is Setup.POS
    with pytest.raises(ValueError):
        Setup.parse("Trigram")

"""The nine content features and per-setup feature vector assembly."""

from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import UnfittedVectorizer
from .postag import TAG_INDEX, TAGS, tag_tokens
from .textproc import ProcessedDocument, StopList, default_stoplist, process_document
from .vectorize import Vectorizer

LAYOUT_VERSION = "layout-v1"

MISC_FEATURE_NAMES = (
    "uppercase_ratio",
    "punctuation_ratio",
    "numeric_ratio",
    "stopword_ratio",
    "type_token_ratio",
    "sentence_count",
    "words_per_sentence",
)


class Setup(str, enum.Enum):
    BASELINE = "Baseline"
    BIGRAM = "Bigram"
    POS = "POS"
    MISC = "Misc"
    ALL = "All"

    @classmethod
    def parse(cls, name: str) -> "Setup":
        for s in cls:
            if s.value.lower() == str(name).strip().lower():
                return s
        raise ValueError(f"unknown setup {name!r}; expected one of {[s.value for s in cls]}")


SETUPS = tuple(Setup)

# Segments each setup appends to the baseline term segment, in layout order.
_SEGMENTS = {
    Setup.BASELINE: (),
    Setup.BIGRAM: ("bigram_indicators",),
    Setup.POS: ("pos",),
    Setup.MISC: ("misc",),
    Setup.ALL: ("misc", "pos", "bigram_indicators"),
}


# -- character-level ratios (denominator: every character, whitespace included)


def uppercase_ratio(raw_text: str) -> float:
    if not raw_text:
        return 0.0
    return sum(ch.isupper() for ch in raw_text) / len(raw_text)


def punctuation_ratio(raw_text: str) -> float:
    if not raw_text:
        return 0.0
    return sum(unicodedata.category(ch).startswith("P") for ch in raw_text) / len(raw_text)


def numeric_ratio(raw_text: str) -> float:
    if not raw_text:
        return 0.0
    return sum(ch.isdecimal() for ch in raw_text) / len(raw_text)


# -- word- and sentence-level features


def stopword_ratio(doc: ProcessedDocument, stoplist: StopList | None = None) -> float:
    stoplist = stoplist or default_stoplist()
    if not doc.words:
        return 0.0
    return sum(w in stoplist for w in doc.words) / len(doc.words)


def type_token_ratio(doc: ProcessedDocument) -> float:
    """Unique lowercased words over word tokens, before stop-word removal and stemming."""
    if not doc.words:
        return 0.0
    return len(set(doc.words)) / len(doc.words)


def sentence_count(doc: ProcessedDocument) -> int:
    return doc.sentence_count


def words_per_sentence(doc: ProcessedDocument) -> float:
    if doc.sentence_count == 0:
        return 0.0
    return doc.word_token_count / doc.sentence_count


@dataclass(frozen=True)
class MiscFeatures:
    uppercase_ratio: float
    punctuation_ratio: float
    numeric_ratio: float
    stopword_ratio: float
    type_token_ratio: float
    sentence_count: int
    words_per_sentence: float
    degenerate: bool = False

    def as_array(self) -> np.ndarray:
        return np.array([float(getattr(self, name)) for name in MISC_FEATURE_NAMES])


def misc_features(raw_text: str, doc: ProcessedDocument, stoplist: StopList | None = None) -> MiscFeatures:
    return MiscFeatures(
        uppercase_ratio=uppercase_ratio(raw_text),
        punctuation_ratio=punctuation_ratio(raw_text),
        numeric_ratio=numeric_ratio(raw_text),
        stopword_ratio=stopword_ratio(doc, stoplist),
        type_token_ratio=type_token_ratio(doc),
        sentence_count=sentence_count(doc),
        words_per_sentence=words_per_sentence(doc),
        degenerate=doc.word_token_count == 0,
    )


def extract_bigrams(doc: ProcessedDocument) -> frozenset:
    """Adjacent normalized-token pairs, never crossing a sentence boundary."""
    out = set()
    for sent in doc.normalized_sentences:
        for a, b in zip(sent, sent[1:]):
            out.add(f"{a} {b}")
    return frozenset(out)


@dataclass(frozen=True)
class DocumentFeatures:
    """Everything about one article that does not depend on fitting."""

    article_id: str
    processed: ProcessedDocument
    misc: MiscFeatures
    pos_counts: np.ndarray
    bigrams: frozenset

    @property
    def pos(self) -> np.ndarray:
        """Tag ratios in the fixed alphabetical tag order (all zeros if no tokens)."""
        total = self.pos_counts.sum()
        if total == 0:
            return np.zeros(len(TAGS))
        return self.pos_counts / total

    @property
    def tokens(self) -> list[str]:
        return self.processed.normalized_tokens


def featurize_document(article_id: str, raw_text: str, stoplist: StopList | None = None) -> DocumentFeatures:
    stoplist = stoplist or default_stoplist()
    doc = process_document(article_id, raw_text, stoplist)
    tagged = tag_tokens(doc.sentences, article_id)
    counts = np.zeros(len(TAGS), dtype=np.int64)
    for tag in tagged.tags:
        counts[TAG_INDEX[tag]] += 1
    return DocumentFeatures(
        article_id=article_id,
        processed=doc,
        misc=misc_features(raw_text, doc, stoplist),
        pos_counts=counts,
        bigrams=extract_bigrams(doc),
    )


def featurize_corpus(corpus, stoplist: StopList | None = None) -> list[DocumentFeatures]:
    return [featurize_document(a.id, a.raw_text, stoplist) for a in corpus]


def fit_vectorizer(docs, min_df: int = 2, max_unigrams: int | None = 5000, max_bigrams: int | None = 5000) -> Vectorizer:
    """Fit vocabularies, idf and misc scaler on ``docs`` (training documents only)."""
    docs = list(docs)
    return Vectorizer(min_df, max_unigrams, max_bigrams).fit(
        [d.tokens for d in docs],
        bigram_sets=[d.bigrams for d in docs],
        misc_rows=np.vstack([d.misc.as_array() for d in docs]),
    )


@dataclass(frozen=True)
class Segment:
    name: str
    offset: int
    length: int


@dataclass(frozen=True)
class Layout:
    setup: Setup
    segments: tuple[Segment, ...]
    fingerprint: str

    @property
    def length(self) -> int:
        return sum(s.length for s in self.segments)

    def segment(self, name: str) -> Segment:
        for s in self.segments:
            if s.name == name:
                return s
        raise KeyError(name)

    def column_names(self) -> list[str]:
        names = []
        for seg in self.segments:
            if seg.name == "misc":
                names += [f"misc:{n}" for n in MISC_FEATURE_NAMES]
            elif seg.name == "pos":
                names += [f"pos:{t}" for t in TAGS]
            else:
                names += [f"{seg.name}:{i}" for i in range(seg.length)]
        return names

    def to_dict(self) -> dict:
        return {
            "version": LAYOUT_VERSION,
            "setup": self.setup.value,
            "fingerprint": self.fingerprint,
            "segments": [{"name": s.name, "offset": s.offset, "length": s.length} for s in self.segments],
        }


def feature_layout(setup: Setup, fitted: Vectorizer) -> Layout:
    if not isinstance(fitted, Vectorizer) or not fitted.is_fitted:
        raise UnfittedVectorizer("assembling features needs a fitted vectorizer")
    lengths = {
        "baseline_terms": len(fitted.unigram_vocab),
        "misc": len(MISC_FEATURE_NAMES),
        "pos": len(TAGS),
        "bigram_indicators": len(fitted.bigram_vocab) if fitted.bigram_vocab is not None else 0,
    }
    segments, offset = [], 0
    for name in ("baseline_terms",) + _SEGMENTS[Setup(setup)]:
        segments.append(Segment(name, offset, lengths[name]))
        offset += lengths[name]
    return Layout(Setup(setup), tuple(segments), f"{LAYOUT_VERSION}:{fitted.digest()}")


def assemble_matrix(docs, setup: Setup, fitted: Vectorizer) -> tuple[sp.csr_matrix, Layout]:
    """Stack the setup's segments for many documents into one CSR matrix."""
    layout = feature_layout(setup, fitted)
    docs = list(docs)
    blocks = []
    for seg in layout.segments:
        if seg.name == "baseline_terms":
            blocks.append(fitted.tfidf_matrix([d.tokens for d in docs]))
        elif seg.name == "misc":
            raw = np.vstack([d.misc.as_array() for d in docs]) if docs else np.zeros((0, seg.length))
            blocks.append(sp.csr_matrix(fitted.scale_misc(raw)))
        elif seg.name == "pos":
            blocks.append(sp.csr_matrix(np.vstack([d.pos for d in docs]) if docs else np.zeros((0, seg.length))))
        elif seg.name == "bigram_indicators":
            blocks.append(fitted.bigram_matrix([d.bigrams for d in docs]))
    matrix = sp.hstack(blocks, format="csr")
    matrix.sort_indices()
    return matrix, layout


@dataclass(frozen=True)
class FeatureVector:
    values: sp.csr_matrix
    layout: Layout

    def __len__(self) -> int:
        return self.layout.length

    def dense(self) -> np.ndarray:
        return self.values.toarray().ravel()

    def segment_values(self, name: str) -> np.ndarray:
        seg = self.layout.segment(name)
        return self.dense()[seg.offset : seg.offset + seg.length]


def assemble_feature_vector(doc: DocumentFeatures, setup: Setup, fitted: Vectorizer) -> FeatureVector:
    matrix, layout = assemble_matrix([doc], setup, fitted)
    return FeatureVector(matrix, layout)

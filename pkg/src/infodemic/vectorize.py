"""N-gram vocabularies, TF-IDF weighting and the train-only fitting contract."""

from __future__ import annotations

import hashlib
import math
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .errors import EmptyCorpus, EmptyVocabulary, UnfittedVectorizer, VectorizerError

VOCAB_FORMAT_VERSION = "vocab-tsv-v1"


def ngrams(tokens: Sequence[str], n: int) -> list[str]:
    if n == 1:
        return list(tokens)
    return [" ".join(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    document_frequency: dict
    n: int
    fitted_on: int

    def __post_init__(self):
        object.__setattr__(self, "term_index", {t: i for i, t in enumerate(self.terms)})

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term) -> bool:
        return term in self.term_index

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(f"n={self.n};N={self.fitted_on}\n".encode())
        for t in self.terms:
            h.update(f"{t}\t{self.document_frequency[t]}\n".encode())
        return h.hexdigest()[:16]

    def to_tsv(self) -> str:
        lines = [f"# version: {VOCAB_FORMAT_VERSION}", f"# n: {self.n}", f"# fitted_on: {self.fitted_on}"]
        lines += [f"{t}\t{self.document_frequency[t]}\t{i}" for i, t in enumerate(self.terms)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tsv(cls, text: str) -> "Vocabulary":
        meta, rows = {}, []
        for line in text.splitlines():
            if line.startswith("#"):
                key, _, val = line[1:].partition(":")
                meta[key.strip()] = val.strip()
            elif line.strip():
                term, df, idx = line.split("\t")
                rows.append((int(idx), term, int(df)))
        rows.sort()
        if [r[0] for r in rows] != list(range(len(rows))):
            raise VectorizerError("vocabulary indices are not 0..n-1")
        return cls(
            terms=tuple(r[1] for r in rows),
            document_frequency={r[1]: r[2] for r in rows},
            n=int(meta.get("n", 1)),
            fitted_on=int(meta.get("fitted_on", 0)),
        )


def vocabulary_from_term_sets(
    term_sets: Iterable[Iterable[str]], n: int, min_df: int = 2, max_features: int | None = 5000
) -> Vocabulary:
    """Vocabulary from per-document term collections (each counted once per document)."""
    df = Counter()
    n_docs = 0
    for terms in term_sets:
        n_docs += 1
        df.update(set(terms))
    if n_docs == 0:
        raise EmptyCorpus("cannot build a vocabulary from zero documents")
    kept = [(t, c) for t, c in df.items() if c >= min_df]
    if not kept:
        raise EmptyVocabulary(f"no {n}-gram reaches min_df={min_df}")
    kept.sort(key=lambda tc: (-tc[1], tc[0]))
    if max_features is not None:
        kept = kept[:max_features]
    return Vocabulary(tuple(t for t, _ in kept), {t: c for t, c in kept}, n, n_docs)


def build_vocabulary(docs: Sequence[Sequence[str]], n: int = 1, min_df: int = 2, max_features: int | None = 5000) -> Vocabulary:
    """Document-frequency vocabulary over the ``n``-grams of each token list.

    Ordered by descending document frequency, ties lexicographic.
    """
    if n not in (1, 2):
        raise ValueError("n must be 1 or 2")
    return vocabulary_from_term_sets((ngrams(d, n) for d in docs), n, min_df, max_features)


def smoothed_idf(vocab: Vocabulary) -> np.ndarray:
    """ln((1 + N) / (1 + df)) + 1 for each term, in vocabulary order."""
    big_n = vocab.fitted_on
    return np.array([math.log((1 + big_n) / (1 + vocab.document_frequency[t])) + 1.0 for t in vocab.terms])


@dataclass(frozen=True)
class MinMaxScaler:
    mins: np.ndarray
    maxs: np.ndarray

    @classmethod
    def fit(cls, rows: np.ndarray) -> "MinMaxScaler":
        rows = np.asarray(rows, dtype=float)
        return cls(rows.min(axis=0), rows.max(axis=0))

    def transform(self, rows: np.ndarray) -> np.ndarray:
        rows = np.asarray(rows, dtype=float)
        span = self.maxs - self.mins
        safe = np.where(span > 0, span, 1.0)
        scaled = np.where(span > 0, (rows - self.mins) / safe, 0.0)
        return np.clip(scaled, 0.0, 1.0)


class Vectorizer:
    """Fits unigram/bigram vocabularies, idf weights and the misc scaler.

    Fitting is allowed once; everything learned comes from the documents
    passed to :meth:`fit`, so callers control leakage by what they pass.
    """

    def __init__(self, min_df: int = 2, max_unigrams: int | None = 5000, max_bigrams: int | None = 5000):
        self.min_df = min_df
        self.max_unigrams = max_unigrams
        self.max_bigrams = max_bigrams
        self.unigram_vocab: Vocabulary | None = None
        self.bigram_vocab: Vocabulary | None = None
        self.idf: np.ndarray | None = None
        self.misc_scaler: MinMaxScaler | None = None

    @property
    def is_fitted(self) -> bool:
        return self.unigram_vocab is not None

    def fit(self, token_docs, bigram_sets=None, misc_rows=None) -> "Vectorizer":
        if self.is_fitted:
            raise VectorizerError("vectorizer already fitted")
        token_docs = list(token_docs)
        self.unigram_vocab = build_vocabulary(token_docs, 1, self.min_df, self.max_unigrams)
        self.idf = smoothed_idf(self.unigram_vocab)
        if bigram_sets is not None:
            try:
                self.bigram_vocab = vocabulary_from_term_sets(bigram_sets, 2, self.min_df, self.max_bigrams)
            except EmptyVocabulary:
                self.bigram_vocab = Vocabulary((), {}, 2, len(token_docs))
        if misc_rows is not None:
            self.misc_scaler = MinMaxScaler.fit(misc_rows)
        return self

    def _require_fitted(self):
        if not self.is_fitted:
            raise UnfittedVectorizer("vectorizer must be fitted before transforming")

    def tfidf_matrix(self, token_docs) -> sp.csr_matrix:
        """L2-normalized tf-idf rows; out-of-vocabulary terms are ignored."""
        self._require_fitted()
        index = self.unigram_vocab.term_index
        indptr, indices, data = [0], [], []
        for tokens in token_docs:
            counts = Counter(index[t] for t in tokens if t in index)
            cols = sorted(counts)
            weights = np.array([counts[c] * self.idf[c] for c in cols], dtype=float)
            norm = math.sqrt(float(np.dot(weights, weights))) if len(weights) else 0.0
            if norm > 0:
                weights = weights / norm
            indices.extend(cols)
            data.extend(weights.tolist())
            indptr.append(len(indices))
        return sp.csr_matrix(
            (np.asarray(data, dtype=float), np.asarray(indices, dtype=np.int64), np.asarray(indptr, dtype=np.int64)),
            shape=(len(indptr) - 1, len(self.unigram_vocab)),
        )

    def bigram_matrix(self, bigram_sets) -> sp.csr_matrix:
        self._require_fitted()
        if self.bigram_vocab is None:
            raise UnfittedVectorizer("vectorizer was fitted without bigrams")
        index = self.bigram_vocab.term_index
        indptr, indices = [0], []
        for bigrams in bigram_sets:
            indices.extend(sorted(index[b] for b in bigrams if b in index))
            indptr.append(len(indices))
        return sp.csr_matrix(
            (np.ones(len(indices)), np.asarray(indices, dtype=np.int64), np.asarray(indptr, dtype=np.int64)),
            shape=(len(indptr) - 1, len(self.bigram_vocab)),
        )

    def scale_misc(self, misc_rows) -> np.ndarray:
        self._require_fitted()
        if self.misc_scaler is None:
            raise UnfittedVectorizer("vectorizer was fitted without misc features")
        return self.misc_scaler.transform(misc_rows)

    def digest(self) -> str:
        self._require_fitted()
        parts = [self.unigram_vocab.digest()]
        if self.bigram_vocab is not None:
            parts.append(self.bigram_vocab.digest())
        return "-".join(parts)

    def export_vocabularies(self, directory: str | Path) -> list[Path]:
        self._require_fitted()
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        written = []
        for name, vocab in (("unigrams", self.unigram_vocab), ("bigrams", self.bigram_vocab)):
            if vocab is None:
                continue
            path = directory / f"vocabulary_{name}.tsv"
            path.write_text(vocab.to_tsv(), encoding="utf-8")
            written.append(path)
        return written


def tfidf_transform(tokens: Sequence[str], fitted: Vectorizer) -> sp.csr_matrix:
    """Single-document form of :meth:`Vectorizer.tfidf_matrix` (a 1 x V row)."""
    if not isinstance(fitted, Vectorizer):
        raise UnfittedVectorizer("no fitted vectorizer supplied")
    return fitted.tfidf_matrix([tokens])

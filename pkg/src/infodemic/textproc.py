"""Sentence segmentation, tokenization, normalization, stop-word removal, stemming."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .porter import stem

__all__ = [
    "ABBREVIATIONS",
    "ProcessedDocument",
    "StopList",
    "default_stoplist",
    "is_word",
    "load_stoplist",
    "normalize",
    "process_document",
    "remove_stopwords",
    "segment_sentences",
    "stem",
    "tokenize",
]

# Lowercased forms, without the trailing period.
ABBREVIATIONS = frozenset(
    """
    mr mrs ms dr prof st jr sr sgt capt col gen gov sen rep hon rev
    inc ltd co corp bhd dept est approx vs etc fig vol
    jan feb mar apr jun jul aug sep sept oct nov dec
    mt ave blvd
    """.split()
)

HYPHENS = frozenset("-‐‑")
DIGIT_SEPARATORS = frozenset(":.,/")
CLOSERS = "\"')]}”’»"

_BOUNDARY = re.compile(r"[.!?]+[" + re.escape(CLOSERS) + r"]*(?=\s|$)")


@dataclass(frozen=True)
class StopList:
    words: frozenset
    version: str

    def __post_init__(self):
        for w in self.words:
            if not w or w != w.lower():
                raise ValueError(f"stop word {w!r} must be non-empty lowercase")

    def __contains__(self, word) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)


def _read_versioned_lines(text: str) -> tuple[str, list[str]]:
    version = "unversioned"
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            if key.strip() == "version":
                version = val.strip()
            continue
        lines.append(line)
    return version, lines


def load_stoplist(path: str | Path | None = None) -> StopList:
    """Load a stop list asset: one word per line, ``# version: ...`` header."""
    if path is None:
        text = resources.files("infodemic.assets").joinpath("stopwords_en.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    version, words = _read_versioned_lines(text)
    if len(set(words)) != len(words):
        raise ValueError("stop list contains duplicate entries")
    return StopList(frozenset(words), version)


@lru_cache(maxsize=1)
def default_stoplist() -> StopList:
    return load_stoplist()


def _is_abbreviation(prefix: str) -> bool:
    """True if the text right before a lone period ends with a guarded abbreviation."""
    word = prefix.rsplit(None, 1)[-1] if prefix.strip() else ""
    word = word.lstrip("\"'([{“‘")
    if not word:
        return False
    last = word.rsplit(".", 1)[-1]
    if len(last) == 1 and last.isalpha():
        return True
    return word.lower() in ABBREVIATIONS


def segment_sentences(text: str) -> list[str]:
    """Split ``text`` at ``.``, ``!`` or ``?`` runs that precede whitespace or the end.

    A lone period after a single letter (``J. Smith``, ``U.S.``) or after a
    listed abbreviation (``Dr.``) does not end a sentence.
    """
    sentences = []
    start = 0
    for m in _BOUNDARY.finditer(text):
        run = m.group(0).rstrip(CLOSERS)
        if run == "." and _is_abbreviation(text[start : m.start()]):
            continue
        piece = text[start : m.end()].strip()
        if piece:
            sentences.append(piece)
        start = m.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def tokenize(sentence: str) -> list[str]:
    """Whitespace split, then every punctuation/symbol character becomes its own token.

    Kept intact: hyphens between two alphanumerics (``covid-19``) and
    ``: . , /`` between two digits (``7:00``, ``1,512``).
    """
    tokens = []
    for chunk in sentence.split():
        current = []
        n = len(chunk)
        for i, ch in enumerate(chunk):
            if ch.isalnum():
                current.append(ch)
                continue
            prev_ok = i > 0 and chunk[i - 1].isalnum() and bool(current)
            next_ch = chunk[i + 1] if i + 1 < n else ""
            if prev_ok and next_ch.isalnum() and ch in HYPHENS:
                current.append(ch)
                continue
            if prev_ok and ch in DIGIT_SEPARATORS and chunk[i - 1].isdigit() and next_ch.isdigit():
                current.append(ch)
                continue
            if current:
                tokens.append("".join(current))
                current = []
            tokens.append(ch)
        if current:
            tokens.append("".join(current))
    return tokens


def is_word(token: str) -> bool:
    """A word token contains at least one letter or digit."""
    return any(ch.isalnum() for ch in token)


def _strip_edges(token: str) -> str:
    lo, hi = 0, len(token)
    while lo < hi and not token[lo].isalnum():
        lo += 1
    while hi > lo and not token[hi - 1].isalnum():
        hi -= 1
    return token[lo:hi]


def normalize(tokens) -> list[str]:
    """Lowercase, drop punctuation/symbol/emoticon tokens, trim edge punctuation."""
    out = []
    for tok in tokens:
        if not is_word(tok):
            continue
        out.append(_strip_edges(tok.lower()))
    return out


def remove_stopwords(tokens, stoplist: StopList) -> list[str]:
    return [t for t in tokens if t not in stoplist]


@dataclass(frozen=True)
class ProcessedDocument:
    """One article after pre-processing.

    ``sentences`` keeps case-preserved tokens (the tagger input);
    ``words`` holds the lowercased word tokens before stop-word removal;
    ``normalized_sentences`` are stop-word filtered and stemmed, per sentence.
    """

    article_id: str
    sentences: tuple[tuple[str, ...], ...]
    words: tuple[str, ...]
    normalized_sentences: tuple[tuple[str, ...], ...]
    raw_char_count: int

    @property
    def normalized_tokens(self) -> list[str]:
        return [t for sent in self.normalized_sentences for t in sent]

    @property
    def word_token_count(self) -> int:
        return len(self.words)

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)


def process_document(article_id: str, raw_text: str, stoplist: StopList | None = None) -> ProcessedDocument:
    stoplist = stoplist or default_stoplist()
    sentences = []
    words = []
    normalized = []
    for sent in segment_sentences(raw_text):
        toks = tokenize(sent)
        if not toks:
            continue
        sentences.append(tuple(toks))
        lowered = normalize(toks)
        words.extend(lowered)
        normalized.append(tuple(stem(t) for t in remove_stopwords(lowered, stoplist)))
    return ProcessedDocument(
        article_id=article_id,
        sentences=tuple(sentences),
        words=tuple(words),
        normalized_sentences=tuple(normalized),
        raw_char_count=len(raw_text),
    )

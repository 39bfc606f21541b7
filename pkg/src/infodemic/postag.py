"""Lexicon + rule-cascade Penn Treebank tagger and per-document tag ratios."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from .textproc import is_word

PENN_WORD_TAGS = (
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD", "NN",
    "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR", "RBS", "RP",
    "SYM", "TO", "UH", "VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "WDT", "WP",
    "WP$", "WRB",
)
PUNCT = "PUNCT"
# Fixed alphabetical order: index i of every ratio vector is TAGS[i].
TAGS = tuple(sorted(PENN_WORD_TAGS + (PUNCT,)))
TAG_INDEX = {t: i for i, t in enumerate(TAGS)}

_NUMBER = re.compile(r"^[+-]?\d+(?:[:.,/-]\d+)*$")

# Clitic pieces left behind when the tokenizer splits on apostrophes.
_AFTER_APOSTROPHE = {"s": "POS", "t": "RB", "re": "VBP", "ve": "VBP", "ll": "MD", "d": "MD", "m": "VBP"}
_NEGATED_AUX = {
    "don": "VBP", "doesn": "VBZ", "didn": "VBD", "isn": "VBZ", "aren": "VBP",
    "wasn": "VBD", "weren": "VBD", "hasn": "VBZ", "haven": "VBP", "hadn": "VBD",
    "couldn": "MD", "wouldn": "MD", "shouldn": "MD", "won": "MD", "can": "MD",
    "mustn": "MD", "ain": "VBP",
}
_APOSTROPHES = frozenset("'’")

# Checked in order; first match wins.
SUFFIX_RULES = (
    ("ness", "NN"), ("ment", "NN"), ("tion", "NN"), ("sion", "NN"), ("ship", "NN"),
    ("hood", "NN"), ("ity", "NN"), ("ism", "NN"), ("ance", "NN"), ("ence", "NN"),
    ("ist", "NN"),
    ("ly", "RB"),
    ("ing", "VBG"),
    ("ed", "VBD"),
    ("ous", "JJ"), ("ful", "JJ"), ("ive", "JJ"), ("able", "JJ"), ("ible", "JJ"),
    ("less", "JJ"), ("ical", "JJ"), ("ish", "JJ"), ("ary", "JJ"), ("al", "JJ"), ("ic", "JJ"),
    ("est", "JJS"),
    ("ize", "VB"), ("ise", "VB"), ("ify", "VB"),
    ("ss", "NN"), ("us", "NN"), ("is", "NN"),
    ("s", "NNS"),
)


@dataclass(frozen=True)
class Lexicon:
    entries: dict
    version: str

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, word: str):
        return self.entries.get(word)


def load_lexicon(path: str | Path | None = None) -> Lexicon:
    """Read a ``word<TAB>TAG`` lexicon with a ``# version:`` header."""
    if path is None:
        text = resources.files("infodemic.assets").joinpath("lexicon_en.tsv").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    version = "unversioned"
    entries = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            if key.strip() == "version":
                version = val.strip()
            continue
        word, tag = line.split("\t")[:2]
        entries.setdefault(word, tag)
    return Lexicon(entries, version)


@lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    return load_lexicon()


def read_tagged_file(path: str | Path) -> list[list[tuple[str, str]]]:
    """Read a gold file in lexicon format; blank lines separate sentences."""
    sentences, current = [], []
    for line in Path(path).read_text("utf-8").splitlines():
        if line.startswith("#"):
            continue
        if not line.strip():
            if current:
                sentences.append(current)
                current = []
            continue
        word, tag = line.split("\t")[:2]
        current.append((word, tag))
    if current:
        sentences.append(current)
    return sentences


@dataclass(frozen=True)
class TaggedDocument:
    article_id: str
    tagged_tokens: tuple[tuple[str, str], ...]

    @property
    def tags(self) -> list[str]:
        return [t for _, t in self.tagged_tokens]


@dataclass(frozen=True)
class PosRatioVector:
    ratios: dict
    degenerate: bool

    def as_array(self) -> np.ndarray:
        return np.array([self.ratios[t] for t in TAGS], dtype=float)


def _suffix_tag(word: str) -> str | None:
    if "-" in word and all(part.isalpha() for part in word.split("-")):
        return "JJ"
    for suffix, tag in SUFFIX_RULES:
        if len(word) > len(suffix) + 1 and word.endswith(suffix):
            return tag
    return None


def tag_sentence(tokens, lexicon: Lexicon | None = None) -> list[tuple[str, str]]:
    lexicon = lexicon or default_lexicon()
    out = []
    first_word_seen = False
    n = len(tokens)
    for i, tok in enumerate(tokens):
        if not is_word(tok):
            out.append((tok, PUNCT))
            continue
        initial = not first_word_seen
        first_word_seen = True
        lower = tok.lower()
        prev_tok = tokens[i - 1] if i > 0 else ""
        next_tok = tokens[i + 1] if i + 1 < n else ""
        after_next = tokens[i + 2] if i + 2 < n else ""

        if prev_tok in _APOSTROPHES and lower in _AFTER_APOSTROPHE:
            out.append((tok, _AFTER_APOSTROPHE[lower]))
            continue
        if next_tok in _APOSTROPHES and after_next.lower() == "t" and lower in _NEGATED_AUX:
            out.append((tok, _NEGATED_AUX[lower]))
            continue

        tag = lexicon.get(tok)
        if tag is None and initial and tok[:1].isupper():
            tag = lexicon.get(lower)
        if tag is None and _NUMBER.match(tok):
            tag = "CD"
        if tag is None and not initial and tok[:1].isupper():
            tag = "NNP"
        if tag is None:
            tag = _suffix_tag(lower)
        if tag is None:
            tag = "NN"
        out.append((tok, tag))
    return _contextual_pass(out)


_AUXILIARIES = frozenset(
    "be is am are was were been being have has had having get got gets".split()
)


def _contextual_pass(tagged):
    """Two local corrections: base verb after TO/modal, participle after be/have."""
    out = list(tagged)
    for i in range(1, len(out)):
        tok, tag = out[i]
        prev_tag = out[i - 1][1]
        if prev_tag in ("TO", "MD") and tag in ("NN", "VBP"):
            out[i] = (tok, "VB")
        elif tag == "VBD":
            j = i - 1
            if out[j][1] == "RB" and j > 0:
                j -= 1
            if out[j][0].lower() in _AUXILIARIES:
                out[i] = (tok, "VBN")
    return out


def tag_tokens(sentences, article_id: str = "", lexicon: Lexicon | None = None) -> TaggedDocument:
    """Tag case-preserved tokens sentence by sentence; one tag per token."""
    tagged = []
    for sent in sentences:
        tagged.extend(tag_sentence(list(sent), lexicon))
    return TaggedDocument(article_id, tuple(tagged))


def pos_ratio_vector(doc: TaggedDocument) -> PosRatioVector:
    counts = dict.fromkeys(TAGS, 0)
    for _, tag in doc.tagged_tokens:
        counts[tag] += 1
    total = sum(counts.values())
    if total == 0:
        return PosRatioVector({t: 0.0 for t in TAGS}, degenerate=True)
    return PosRatioVector({t: c / total for t, c in counts.items()}, degenerate=False)


def tagging_accuracy(gold_sentences, lexicon: Lexicon | None = None) -> float:
    correct = total = 0
    for sent in gold_sentences:
        words = [w for w, _ in sent]
        for (_, gold), (_, pred) in zip(sent, tag_sentence(words, lexicon)):
            correct += gold == pred
            total += 1
    return correct / total if total else 0.0

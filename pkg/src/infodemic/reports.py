"""Per-class corpus analyses: POS tag distributions, top bigrams, misc-feature comparison.

Each report renders to CSV and markdown; all orderings are fully determined
so repeated runs produce identical bytes.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .corpus import LABELS, Corpus, Label
from .features import MISC_FEATURE_NAMES, featurize_corpus
from .postag import TAGS

EQUAL_TOLERANCE = 1e-12


def _by_class(corpus: Corpus, docs):
    docs = docs if docs is not None else featurize_corpus(corpus)
    if len(docs) != len(corpus):
        raise ValueError("docs must align with the corpus")
    groups = {lab: [] for lab in LABELS}
    for art, doc in zip(corpus, docs):
        groups[art.label].append(doc)
    return groups


def _fmt(x: float) -> str:
    return repr(float(x))


# -- POS distribution


@dataclass(frozen=True)
class PosDistribution:
    """Per-class ``(tag, ratio)`` lists sorted by ratio, ties alphabetical."""

    per_class: dict
    counts: dict

    def ranking(self, label) -> tuple:
        return self.per_class[label if isinstance(label, Label) else Label.parse(label)]

    def to_csv(self) -> str:
        lines = ["class,tag,ratio,rank"]
        for lab in LABELS:
            for rank, (tag, ratio) in enumerate(self.per_class[lab], 1):
                lines.append(f"{lab.value},{tag},{_fmt(ratio)},{rank}")
        return "\n".join(lines) + "\n"

    def to_markdown(self, top: int | None = None) -> str:
        out = []
        for lab in LABELS:
            rows = self.per_class[lab][:top] if top else self.per_class[lab]
            out += [f"### {lab.value}", "", "| Rank | Tag | Ratio |", "|---:|---|---:|"]
            out += [f"| {i} | {tag} | {ratio:.4f} |" for i, (tag, ratio) in enumerate(rows, 1)]
            out.append("")
        return "\n".join(out)


def pos_distribution_report(corpus: Corpus, docs=None) -> PosDistribution:
    """Pool tag counts per class and rank every tag by its share of tagged tokens."""
    per_class, counts = {}, {}
    for lab, group in _by_class(corpus, docs).items():
        total = np.zeros(len(TAGS), dtype=np.int64)
        for doc in group:
            total += doc.pos_counts
        counts[lab] = {tag: int(c) for tag, c in zip(TAGS, total)}
        n = int(total.sum())
        if n == 0:
            per_class[lab] = ()
            continue
        pairs = [(tag, int(c) / n) for tag, c in zip(TAGS, total)]
        per_class[lab] = tuple(sorted(pairs, key=lambda p: (-p[1], p[0])))
    return PosDistribution(per_class, counts)


# -- bigrams


@dataclass(frozen=True)
class BigramRanking:
    """Per-class ``(bigram, document frequency)`` lists of length at most ``n``."""

    per_class: dict
    n: int

    def to_csv(self) -> str:
        lines = ["class,bigram,doc_freq,rank"]
        for lab in LABELS:
            for rank, (bigram, df) in enumerate(self.per_class[lab], 1):
                lines.append(f"{lab.value},{bigram},{df},{rank}")
        return "\n".join(lines) + "\n"

    def to_markdown(self) -> str:
        out = ["| Rank | " + " | ".join(f"{lab.value} bigram | df" for lab in LABELS) + " |"]
        out.append("|---:|" + "---|---:|" * len(LABELS))
        depth = max((len(v) for v in self.per_class.values()), default=0)
        for i in range(depth):
            cells = []
            for lab in LABELS:
                rows = self.per_class[lab]
                cells += [rows[i][0], str(rows[i][1])] if i < len(rows) else ["", ""]
            out.append(f"| {i + 1} | " + " | ".join(cells) + " |")
        return "\n".join(out) + "\n"


def top_bigrams(corpus: Corpus, n: int = 20, docs=None) -> BigramRanking:
    """Most widespread bigrams per class by document frequency; ties go to the smaller string."""
    if n < 1:
        raise ValueError("n must be >= 1")
    per_class = {}
    for lab, group in _by_class(corpus, docs).items():
        df = Counter()
        for doc in group:
            df.update(doc.bigrams)
        ranked = sorted(df.items(), key=lambda kv: (-kv[1], kv[0]))
        per_class[lab] = tuple(ranked[:n])
    return BigramRanking(per_class, n)


# -- misc-feature comparison


@dataclass(frozen=True)
class ClassComparison:
    """Mean and population sd of each misc feature per class, plus which class is higher.

    ``direction[name]`` is ``"Fake"``, ``"Real"`` or ``"equal"`` (means within 1e-12,
    or a class without documents).
    """

    per_class_values: dict
    direction: dict

    def to_csv(self) -> str:
        lines = ["feature,class,mean,sd,higher_class"]
        for name in MISC_FEATURE_NAMES:
            for lab in LABELS:
                mean, sd = self.per_class_values[lab][name]
                lines.append(f"{name},{lab.value},{_fmt(mean)},{_fmt(sd)},{self.direction[name]}")
        return "\n".join(lines) + "\n"

    def to_markdown(self) -> str:
        head = " | ".join(f"{lab.value} mean (sd)" for lab in LABELS)
        out = [f"| Feature | {head} | Higher |", "|---|" + "---:|" * len(LABELS) + "---|"]
        for name in MISC_FEATURE_NAMES:
            cells = [f"{m:.4f} ({s:.4f})" for m, s in (self.per_class_values[lab][name] for lab in LABELS)]
            out.append(f"| {name} | " + " | ".join(cells) + f" | {self.direction[name]} |")
        return "\n".join(out) + "\n"


def feature_comparison(corpus: Corpus, docs=None) -> ClassComparison:
    values, present = {}, {}
    for lab, group in _by_class(corpus, docs).items():
        present[lab] = bool(group)
        rows = np.array([d.misc.as_array() for d in group]).reshape(len(group), len(MISC_FEATURE_NAMES))
        values[lab] = {}
        for j, name in enumerate(MISC_FEATURE_NAMES):
            col = rows[:, j]
            if col.size == 0:
                values[lab][name] = (0.0, 0.0)
                continue
            mean = math.fsum(col) / col.size
            sd = math.sqrt(math.fsum((col - mean) ** 2) / col.size)
            values[lab][name] = (mean, sd)
    direction = {}
    for name in MISC_FEATURE_NAMES:
        fake, real = values[Label.FAKE][name][0], values[Label.REAL][name][0]
        if not (present[Label.FAKE] and present[Label.REAL]) or abs(fake - real) <= EQUAL_TOLERANCE:
            direction[name] = "equal"
        else:
            direction[name] = Label.FAKE.value if fake > real else Label.REAL.value
    return ClassComparison(values, direction)

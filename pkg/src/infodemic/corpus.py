"""Loading, validating and summarizing labeled news corpora."""

from __future__ import annotations

import csv
import datetime as _dt
import enum
import json
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from pathlib import Path

from .errors import CorpusError, DuplicateId, EmptyCorpus, MissingField, UnknownLabel


class Label(str, enum.Enum):
    FAKE = "Fake"
    REAL = "Real"

    @classmethod
    def parse(cls, token: str) -> "Label":
        key = str(token).strip().lower()
        if key == "fake":
            return cls.FAKE
        if key == "real":
            return cls.REAL
        raise UnknownLabel(f"unknown label {token!r} (expected fake or real)")

    @property
    def code(self) -> int:
        """Integer encoding used by the classifiers: Fake is the positive class."""
        return 1 if self is Label.FAKE else 0

    @classmethod
    def from_code(cls, code: int) -> "Label":
        return cls.FAKE if int(code) == 1 else cls.REAL


LABELS = (Label.FAKE, Label.REAL)


@dataclass(frozen=True)
class NewsArticle:
    id: str
    raw_text: str
    label: Label
    source: str | None = None
    date: str | None = None

    def __post_init__(self):
        if not self.id:
            raise MissingField("article id is empty")
        if not self.raw_text or not self.raw_text.strip():
            raise MissingField(f"article {self.id!r} has empty text")
        if not isinstance(self.label, Label):
            object.__setattr__(self, "label", Label.parse(self.label))
        if self.date:
            try:
                _dt.date.fromisoformat(self.date)
            except ValueError as exc:
                raise CorpusError(f"article {self.id!r}: bad ISO-8601 date {self.date!r}") from exc

    def to_record(self) -> dict:
        rec = {"id": self.id, "text": self.raw_text, "label": self.label.value}
        if self.source is not None:
            rec["source"] = self.source
        if self.date is not None:
            rec["date"] = self.date
        return rec


@dataclass(frozen=True)
class Corpus:
    articles: tuple[NewsArticle, ...]
    counts: dict = field(init=False, compare=False)

    def __post_init__(self):
        articles = tuple(self.articles)
        object.__setattr__(self, "articles", articles)
        seen = set()
        for art in articles:
            if art.id in seen:
                raise DuplicateId(f"duplicate article id {art.id!r}")
            seen.add(art.id)
        counts = {lab: 0 for lab in LABELS}
        for art in articles:
            counts[art.label] += 1
        object.__setattr__(self, "counts", counts)

    def __len__(self) -> int:
        return len(self.articles)

    def __iter__(self) -> Iterator[NewsArticle]:
        return iter(self.articles)

    def __getitem__(self, i):
        return self.articles[i]

    @property
    def labels(self) -> list[Label]:
        return [a.label for a in self.articles]

    def subset(self, indices: Iterable[int]) -> "Corpus":
        return Corpus(tuple(self.articles[i] for i in indices))


@dataclass(frozen=True)
class CorpusStats:
    total: int
    per_class: dict
    per_class_share: dict


def _record_to_article(rec: dict, lineno: int) -> NewsArticle:
    for key in ("id", "text", "label"):
        if key not in rec or rec[key] is None or str(rec[key]) == "":
            raise MissingField(f"record {lineno}: missing field {key!r}")
    return NewsArticle(
        id=str(rec["id"]),
        raw_text=str(rec["text"]),
        label=Label.parse(rec["label"]),
        source=rec.get("source") or None,
        date=rec.get("date") or None,
    )


def _iter_csv(path: Path) -> Iterator[dict]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return
        missing = {"id", "text", "label"} - set(reader.fieldnames)
        if missing:
            raise MissingField(f"CSV header lacks {sorted(missing)}")
        yield from reader


def _iter_jsonl(path: Path) -> Iterator[dict]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
            if not isinstance(rec, dict):
                raise CorpusError(f"line {lineno}: expected a JSON object")
            yield rec


def detect_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".csv":
        return "csv"
    if suffix in (".jsonl", ".ndjson", ".json"):
        return "jsonl"
    raise CorpusError(f"cannot infer corpus format from {str(path)!r}; pass format explicitly")


def load_corpus(path: str | Path, format: str | None = None) -> Corpus:
    """Read a labeled corpus from a UTF-8 CSV or JSONL file.

    File order is preserved. Labels are matched case-insensitively against
    ``fake``/``real``; anything else raises :class:`UnknownLabel`.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"file not found: {path}")
    fmt = (format or detect_format(path)).lower()
    if fmt == "csv":
        records = _iter_csv(path)
    elif fmt == "jsonl":
        records = _iter_jsonl(path)
    else:
        raise CorpusError(f"unsupported corpus format {fmt!r}")
    articles = [_record_to_article(rec, i) for i, rec in enumerate(records, 1)]
    if not articles:
        raise EmptyCorpus(f"{path} contains no records")
    return Corpus(tuple(articles))


def save_corpus(corpus: Corpus, path: str | Path, format: str | None = None) -> None:
    path = Path(path)
    fmt = (format or detect_format(path)).lower()
    if fmt == "jsonl":
        with open(path, "w", encoding="utf-8") as fh:
            for art in corpus:
                fh.write(json.dumps(art.to_record(), ensure_ascii=False, sort_keys=True) + "\n")
    elif fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=["id", "text", "label", "source", "date"])
            writer.writeheader()
            for art in corpus:
                writer.writerow(art.to_record())
    else:
        raise CorpusError(f"unsupported corpus format {fmt!r}")


def corpus_stats(corpus: Corpus) -> CorpusStats:
    total = len(corpus)
    per_class = dict(corpus.counts)
    shares = {lab: (n / total if total else 0.0) for lab, n in per_class.items()}
    return CorpusStats(total=total, per_class=per_class, per_class_share=shares)

"""Stratified k-fold cross-validation, metrics and the setup x algorithm matrix."""

from __future__ import annotations

import hashlib
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .classifiers import ALGORITHMS, Algorithm, Hyperparameters, train
from .corpus import Corpus, Label
from .errors import EmptyConfusion, InsufficientClassMembers
from .features import SETUPS, Setup, assemble_matrix, featurize_corpus, fit_vectorizer
from .postag import default_lexicon
from .textproc import default_stoplist

log = logging.getLogger(__name__)

REPORT_FORMAT_VERSION = 1
METRIC_NAMES = ("accuracy", "recall", "precision", "f1")


@dataclass(frozen=True)
class FoldPlan:
    k: int
    assignments: tuple[int, ...]
    seed: int

    def test_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(np.asarray(self.assignments) == fold)

    def train_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(np.asarray(self.assignments) != fold)

    def splits(self):
        for fold in range(self.k):
            yield self.train_indices(fold), self.test_indices(fold)


def _codes(labels) -> np.ndarray:
    return np.array([lab.code if isinstance(lab, Label) else int(lab) for lab in labels], dtype=np.int64)


def stratified_kfold(labels, k: int = 10, seed: int = 0) -> FoldPlan:
    """Shuffle each class with ``seed`` and deal its members round-robin into ``k`` folds.

    Dealing continues across classes (Fake first, then Real) where the
    previous class stopped, which keeps fold sizes within one of each other.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    y = _codes(labels)
    rng = np.random.default_rng(seed & 0xFFFFFFFFFFFFFFFF)
    assignments = np.full(y.size, -1, dtype=np.int64)
    cursor = 0
    for code in (1, 0):
        members = np.flatnonzero(y == code)
        if members.size < k:
            name = Label.from_code(code).value
            raise InsufficientClassMembers(f"class {name} has {members.size} members, fewer than k={k}")
        shuffled = rng.permutation(members)
        assignments[shuffled] = (cursor + np.arange(shuffled.size)) % k
        cursor = (cursor + shuffled.size) % k
    return FoldPlan(k, tuple(int(a) for a in assignments), seed)


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    precision: float
    recall: float
    f1: float
    warnings: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in METRIC_NAMES}


def confusion_counts(y_true, y_pred) -> tuple[int, int, int, int]:
    """(TP, FP, FN, TN) with Fake (1) as the positive class."""
    t = _codes(y_true)
    p = _codes(y_pred)
    tp = int(np.sum((t == 1) & (p == 1)))
    fp = int(np.sum((t == 0) & (p == 1)))
    fn = int(np.sum((t == 1) & (p == 0)))
    tn = int(np.sum((t == 0) & (p == 0)))
    return tp, fp, fn, tn


def compute_metrics(tp: int, fp: int, fn: int, tn: int) -> Metrics:
    if min(tp, fp, fn, tn) < 0:
        raise ValueError("confusion counts must be non-negative")
    n = tp + fp + fn + tn
    if n == 0:
        raise EmptyConfusion("confusion matrix is empty")
    warnings = []
    if tp + fp == 0:
        precision = 0.0
        warnings.append("precision: no positive predictions")
    else:
        precision = tp / (tp + fp)
    if tp + fn == 0:
        recall = 0.0
        warnings.append("recall: no positive samples")
    else:
        recall = tp / (tp + fn)
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return Metrics((tp + tn) / n, precision, recall, f1, tuple(warnings))


@dataclass(frozen=True)
class ExperimentConfig:
    setups: tuple[Setup, ...] = SETUPS
    algorithms: tuple[Algorithm, ...] = ALGORITHMS
    k_folds: int = 10
    seed: int = 0
    min_df: int = 2
    max_unigrams: int | None = 5000
    max_bigrams: int | None = 5000
    hyperparameters: Hyperparameters = field(default_factory=Hyperparameters)
    keep_per_fold: bool = True
    jobs: int = 1

    def __post_init__(self):
        if not self.setups or not self.algorithms:
            raise ValueError("setups and algorithms must be non-empty")
        if self.k_folds < 2:
            raise ValueError("k_folds must be >= 2")

    def echo(self) -> dict:
        return {
            "setups": [s.value for s in self.setups],
            "algorithms": [a.value for a in self.algorithms],
            "k_folds": self.k_folds,
            "seed": self.seed,
            "vectorizer": {"min_df": self.min_df, "max_unigrams": self.max_unigrams, "max_bigrams": self.max_bigrams},
            "hyperparameters": self.hyperparameters.to_dict(),
        }


@dataclass
class ReportRow:
    setup: Setup
    algorithm: Algorithm
    metrics: Metrics | None
    status: str = "ok"
    error: str | None = None
    per_fold: list = field(default_factory=list)

    def to_dict(self, include_folds: bool) -> dict:
        out = {
            "setup": self.setup.value,
            "algorithm": self.algorithm.value,
            "status": self.status,
            "metrics": self.metrics.as_dict() if self.metrics else None,
        }
        if self.error:
            out["error"] = self.error
        if include_folds:
            out["per_fold"] = self.per_fold
        return out


@dataclass
class EvalReport:
    rows: list[ReportRow]
    config_echo: dict
    provenance: dict
    include_folds: bool = True

    def row(self, setup, algorithm) -> ReportRow:
        setup, algorithm = Setup.parse(setup), Algorithm.parse(algorithm)
        for r in self.rows:
            if r.setup is setup and r.algorithm is algorithm:
                return r
        raise KeyError((setup, algorithm))

    @property
    def failed(self) -> list[ReportRow]:
        return [r for r in self.rows if r.status != "ok"]

    def to_dict(self) -> dict:
        return {
            "format_version": REPORT_FORMAT_VERSION,
            "package_version": __version__,
            "provenance": self.provenance,
            "config": self.config_echo,
            "averaging": "mean of per-fold metrics; positive class = Fake",
            "rows": [r.to_dict(self.include_folds) for r in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_markdown(self) -> str:
        header = ["Setup", "Algorithm", "Accuracy", "Recall", "Precision", "F1"]
        body = []
        for r in self.rows:
            if r.metrics is None:
                body.append([r.setup.value, r.algorithm.value] + ["failed"] * 4)
            else:
                m = r.metrics
                body.append([r.setup.value, r.algorithm.value] + [f"{v:.4f}" for v in (m.accuracy, m.recall, m.precision, m.f1)])
        widths = [max(len(row[i]) for row in [header, *body]) for i in range(len(header))]

        def line(cells):
            padded = [c.ljust(w) if i < 2 else c.rjust(w) for i, (c, w) in enumerate(zip(cells, widths))]
            return "| " + " | ".join(padded) + " |"

        rule = "|" + "|".join("-" * (w + 1) + ("-" if i < 2 else ":") for i, w in enumerate(widths)) + "|"
        lines = [f"> {self.provenance['banner']}", "", line(header), rule, *map(line, body)]
        lines += ["", f"Metrics are means over {self.config_echo['k_folds']} stratified folds (seed {self.config_echo['seed']})."]
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        lines = ["setup,algorithm,status,accuracy,recall,precision,f1"]
        for r in self.rows:
            vals = [f"{getattr(r.metrics, n)!r}" for n in METRIC_NAMES] if r.metrics else [""] * 4
            lines.append(",".join([r.setup.value, r.algorithm.value, r.status, *vals]))
        return "\n".join(lines) + "\n"

    def write(self, directory: str | Path, stem: str = "report") -> list[Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        paths = []
        for suffix, text in ((".json", self.to_json()), (".md", self.to_markdown()), (".csv", self.to_csv())):
            path = directory / f"{stem}{suffix}"
            path.write_text(text, encoding="utf-8")
            paths.append(path)
        return paths


def corpus_fingerprint(corpus: Corpus) -> str:
    h = hashlib.sha256()
    for art in corpus:
        h.update(json.dumps(art.to_record(), sort_keys=True, ensure_ascii=False).encode("utf-8"))
        h.update(b"\n")
    return h.hexdigest()


def make_provenance(corpus: Corpus, corpus_name: str) -> dict:
    digest = corpus_fingerprint(corpus)
    counts = {lab.value: n for lab, n in corpus.counts.items()}
    banner = (
        f"Corpus used: {corpus_name} ({len(corpus)} articles, Fake={counts['Fake']}, Real={counts['Real']}, "
        f"sha256 {digest[:12]}). These figures describe this corpus only and are not a reproduction of "
        f"results published on the original private dataset."
    )
    return {
        "corpus": corpus_name,
        "corpus_sha256": digest,
        "n_articles": len(corpus),
        "class_counts": counts,
        "assets": {"stoplist": default_stoplist().version, "lexicon": default_lexicon().version},
        "banner": banner,
    }


def fold_seed(seed: int, fold: int) -> int:
    return int(np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF, fold]).generate_state(1, dtype=np.uint64)[0] >> 1)


# Worker state for process pools; set by _init_worker.
_DOCS = None
_LABELS = None


def _init_worker(docs, labels):
    global _DOCS, _LABELS
    _DOCS, _LABELS = docs, labels


def _run_fold(fold, train_idx, test_idx, config: ExperimentConfig, docs=None, labels=None):
    """All cells for one fold: {(setup, algorithm): (confusion, metrics) or error string}."""
    docs = _DOCS if docs is None else docs
    labels = _LABELS if labels is None else labels
    train_docs = [docs[i] for i in train_idx]
    test_docs = [docs[i] for i in test_idx]
    y_train, y_test = labels[train_idx], labels[test_idx]
    hp = config.hyperparameters.with_overrides({"seed": fold_seed(config.seed, fold)})
    results = {}
    try:
        fitted = fit_vectorizer(train_docs, config.min_df, config.max_unigrams, config.max_bigrams)
    except Exception as exc:  # the whole fold is unusable
        msg = f"fold {fold}: {type(exc).__name__}: {exc}"
        return {(s, a): msg for s in config.setups for a in config.algorithms}
    for setup in config.setups:
        try:
            X_train, _ = assemble_matrix(train_docs, setup, fitted)
            X_test, _ = assemble_matrix(test_docs, setup, fitted)
        except Exception as exc:
            for a in config.algorithms:
                results[(setup, a)] = f"fold {fold}: {type(exc).__name__}: {exc}"
            continue
        for algorithm in config.algorithms:
            try:
                model = train(algorithm, X_train, y_train, hp)
                conf = confusion_counts(y_test, model.predict(X_test))
                results[(setup, algorithm)] = (conf, compute_metrics(*conf))
            except Exception as exc:
                results[(setup, algorithm)] = f"fold {fold}: {type(exc).__name__}: {exc}"
    return results


def run_experiment_matrix(corpus: Corpus, config: ExperimentConfig | None = None, corpus_name: str = "corpus", docs=None) -> EvalReport:
    """Cross-validate every requested (setup, algorithm) pair.

    Vocabularies, idf weights and the misc scaler are refitted on the training
    folds of every split. A cell that fails in any fold is reported as failed
    instead of aborting the run. Row order is canonical regardless of ``jobs``.
    """
    config = config or ExperimentConfig()
    docs = docs if docs is not None else featurize_corpus(corpus)
    labels = _codes(corpus.labels)
    plan = stratified_kfold(labels, config.k_folds, config.seed)
    splits = list(plan.splits())

    if config.jobs > 1:
        with ProcessPoolExecutor(config.jobs, initializer=_init_worker, initargs=(docs, labels)) as pool:
            futures = [pool.submit(_run_fold, f, tr, te, config) for f, (tr, te) in enumerate(splits)]
            fold_results = [fut.result() for fut in futures]
    else:
        fold_results = []
        for f, (tr, te) in enumerate(splits):
            log.info("fold %d/%d", f + 1, config.k_folds)
            fold_results.append(_run_fold(f, tr, te, config, docs, labels))

    setups = [s for s in SETUPS if s in config.setups]
    algorithms = [a for a in ALGORITHMS if a in config.algorithms]
    rows = []
    for setup in setups:
        for algorithm in algorithms:
            cells = [fr[(setup, algorithm)] for fr in fold_results]
            errors = [c for c in cells if isinstance(c, str)]
            per_fold = []
            for fold, c in enumerate(cells):
                if isinstance(c, str):
                    per_fold.append({"fold": fold, "error": c})
                else:
                    (tp, fp, fn, tn), m = c
                    per_fold.append({"fold": fold, "tp": tp, "fp": fp, "fn": fn, "tn": tn, **m.as_dict(), "warnings": list(m.warnings)})
            if errors:
                rows.append(ReportRow(setup, algorithm, None, "failed", errors[0], per_fold))
                continue
            metrics = [c[1] for c in cells]
            mean = {n: float(math.fsum(getattr(m, n) for m in metrics) / len(metrics)) for n in METRIC_NAMES}
            warnings = tuple(sorted({w for m in metrics for w in m.warnings}))
            rows.append(ReportRow(setup, algorithm, Metrics(mean["accuracy"], mean["precision"], mean["recall"], mean["f1"], warnings), per_fold=per_fold))
    return EvalReport(rows, config.echo(), make_provenance(corpus, corpus_name), include_folds=config.keep_per_fold)


__all__ = [
    "EvalReport",
    "ExperimentConfig",
    "FoldPlan",
    "Metrics",
    "ReportRow",
    "compute_metrics",
    "confusion_counts",
    "run_experiment_matrix",
    "stratified_kfold",
]

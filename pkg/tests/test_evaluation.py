import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from infodemic import evaluation
from infodemic.classifiers import Algorithm
from infodemic.corpus import Corpus, Label, NewsArticle
from infodemic.errors import EmptyConfusion, InsufficientClassMembers
from infodemic.evaluation import (
    ExperimentConfig,
    compute_metrics,
    confusion_counts,
    run_experiment_matrix,
    stratified_kfold,
)
from infodemic.features import Setup, featurize_corpus, fit_vectorizer


def test_twenty_samples_one_per_class_per_fold():
    labels = [Label.FAKE] * 10 + [Label.REAL] * 10
    plan = stratified_kfold(labels, k=10, seed=3)
    for fold in range(10):
        members = plan.test_indices(fold)
        assert sorted(labels[i] for i in members) == [Label.FAKE, Label.REAL]


def test_small_class_rejected():
    with pytest.raises(InsufficientClassMembers):
        stratified_kfold([1] * 5 + [0] * 30, k=10)


@given(st.lists(st.integers(0, 1), min_size=20, max_size=400), st.integers(0, 2**64 - 1))
def test_fold_partition_and_balance(labels, seed):
    y = np.array(labels)
    k = 10
    if min((y == 1).sum(), (y == 0).sum()) < k:
        with pytest.raises(InsufficientClassMembers):
            stratified_kfold(y, k, seed)
        return
    plan = stratified_kfold(y, k, seed)
    seen = np.concatenate([plan.test_indices(f) for f in range(k)])
    assert sorted(seen.tolist()) == list(range(len(y)))
    for code in (0, 1):
        per_fold = np.array([(y[plan.test_indices(f)] == code).sum() for f in range(k)])
        expected = (y == code).sum() / k
        assert np.abs(per_fold - expected).max() <= 1
    assert stratified_kfold(y, k, seed) == plan


def test_train_and_test_indices_complement():
    plan = stratified_kfold([0, 1] * 10, k=2, seed=1)
    for tr, te in plan.splits():
        assert sorted(np.r_[tr, te].tolist()) == list(range(20))
        assert not set(tr) & set(te)


# -- metrics


def test_metric_examples():
    m = compute_metrics(3, 1, 1, 5)
    assert (m.accuracy, m.precision, m.recall, m.f1) == (0.8, 0.75, 0.75, 0.75)
    perfect = compute_metrics(7, 0, 0, 0)
    assert (perfect.accuracy, perfect.precision, perfect.recall, perfect.f1) == (1.0, 1.0, 1.0, 1.0)
    flagged = compute_metrics(0, 0, 2, 8)
    assert (flagged.precision, flagged.recall, flagged.accuracy) == (0.0, 0.0, 0.8)
    assert flagged.warnings
    with pytest.raises(EmptyConfusion):
        compute_metrics(0, 0, 0, 0)


@given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), min_size=1, max_size=200))
def test_metrics_match_counting_oracle(pairs):
    truth = [t for t, _ in pairs]
    pred = [p for _, p in pairs]
    tp = fp = fn = tn = 0
    for t, p in pairs:
        if t and p:
            tp += 1
        elif p:
            fp += 1
        elif t:
            fn += 1
        else:
            tn += 1
    assert confusion_counts(truth, pred) == (tp, fp, fn, tn)
    m = compute_metrics(tp, fp, fn, tn)
    assert m.accuracy == (tp + tn) / len(pairs)
    assert m.precision == (tp / (tp + fp) if tp + fp else 0.0)
    assert m.recall == (tp / (tp + fn) if tp + fn else 0.0)
    if m.precision + m.recall:
        assert m.f1 == pytest.approx(2 * m.precision * m.recall / (m.precision + m.recall), abs=1e-12)
    else:
        assert m.f1 == 0.0


# -- the matrix


def small_config(**kw):
    base = dict(
        setups=(Setup.BASELINE, Setup.ALL),
        algorithms=(Algorithm.DECISION_TREE, Algorithm.LOGISTIC_REGRESSION, Algorithm.KNN),
        k_folds=5,
        seed=42,
    )
    base.update(kw)
    return ExperimentConfig(**base)


def test_matrix_rows_and_per_fold_metrics(small_synthetic):
    corpus, docs = small_synthetic
    report = run_experiment_matrix(corpus, small_config(), "unit", docs=docs)
    assert [(r.setup, r.algorithm) for r in report.rows] == [
        (s, a) for s in (Setup.BASELINE, Setup.ALL) for a in (Algorithm.DECISION_TREE, Algorithm.LOGISTIC_REGRESSION, Algorithm.KNN)
    ]
    for row in report.rows:
        assert row.status == "ok" and len(row.per_fold) == 5
        for fold in row.per_fold:
            p, r = fold["precision"], fold["recall"]
            if p + r:
                assert fold["f1"] == pytest.approx(2 * p * r / (p + r), abs=1e-12)
        mean_acc = sum(f["accuracy"] for f in row.per_fold) / 5
        assert row.metrics.accuracy == pytest.approx(mean_acc, abs=1e-12)


def test_report_is_deterministic_across_jobs(small_synthetic):
    corpus, docs = small_synthetic
    one = run_experiment_matrix(corpus, small_config(), "unit", docs=docs).to_json()
    again = run_experiment_matrix(corpus, small_config(), "unit", docs=docs).to_json()
    parallel = run_experiment_matrix(corpus, small_config(jobs=2), "unit", docs=docs).to_json()
    assert one == again
    assert json.loads(one)["rows"] == json.loads(parallel)["rows"]


def test_vectorizer_sees_training_documents_only(small_synthetic, monkeypatch):
    corpus, docs = small_synthetic
    seen = []

    def spy(train_docs, *args):
        seen.append({d.article_id for d in train_docs})
        return fit_vectorizer(train_docs, *args)

    monkeypatch.setattr(evaluation, "fit_vectorizer", spy)
    cfg = small_config(algorithms=(Algorithm.LOGISTIC_REGRESSION,), setups=(Setup.BIGRAM,))
    run_experiment_matrix(corpus, cfg, "unit", docs=docs)
    plan = stratified_kfold(corpus.labels, cfg.k_folds, cfg.seed)
    ids = [a.id for a in corpus]
    for fold, train_ids in enumerate(seen):
        test_ids = {ids[i] for i in plan.test_indices(fold)}
        assert not train_ids & test_ids
        assert train_ids | test_ids == set(ids)


def test_failed_cell_does_not_abort(small_synthetic):
    corpus, docs = small_synthetic
    cfg = small_config(algorithms=(Algorithm.KNN, Algorithm.DECISION_TREE), setups=(Setup.MISC,))
    cfg = ExperimentConfig(**{**cfg.__dict__, "hyperparameters": cfg.hyperparameters.with_overrides({"knn": {"k": 10_000}})})
    report = run_experiment_matrix(corpus, cfg, "unit", docs=docs)
    rows = {r.algorithm: r for r in report.rows}
    knn, tree = rows[Algorithm.KNN], rows[Algorithm.DECISION_TREE]
    assert knn.status == "failed" and "KExceedsTrainingSize" in knn.error
    assert tree.status == "ok"
    assert "failed" in report.to_markdown()


def test_provenance_banner_and_config_echo(small_synthetic):
    corpus, docs = small_synthetic
    report = run_experiment_matrix(corpus, small_config(), "my_corpus.csv", docs=docs)
    data = json.loads(report.to_json())
    assert "my_corpus.csv" in data["provenance"]["banner"]
    assert "not a reproduction" in data["provenance"]["banner"]
    assert data["provenance"]["assets"] == {"stoplist": "en-stop-v1", "lexicon": "brill-pattern-5000-v1"}
    assert data["config"]["seed"] == 42
    assert data["config"]["hyperparameters"]["knn"]["k"] == 10
    assert report.to_markdown().startswith("> Corpus used: my_corpus.csv")


def test_identical_documents_give_chance_accuracy():
    arts = [NewsArticle(f"{lab.value}{i}", "Same text.", lab) for lab in Label for i in range(4)]
    corpus = Corpus(tuple(arts))
    cfg = ExperimentConfig(setups=(Setup.BASELINE,), algorithms=(Algorithm.LOGISTIC_REGRESSION,), k_folds=2)
    report = run_experiment_matrix(corpus, cfg, "dup", docs=featurize_corpus(corpus))
    assert report.rows[0].status == "ok"
    assert report.rows[0].metrics.accuracy == 0.5

"""Five from-scratch binary classifiers behind one train/predict surface.

Labels are integers throughout: 1 = Fake (the positive class), 0 = Real.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field, fields, replace

import numpy as np
import scipy.sparse as sp

from ..corpus import Label
from ..errors import DimensionMismatch
from .base import Model, load_model, save_model
from .knn import KNN, euclidean_distances, vote
from .linear import LinearSVM, LogisticRegression, hinge_loss, sigmoid
from .tree import DecisionTree, RandomForest, gini


class Algorithm(str, enum.Enum):
    DECISION_TREE = "DecisionTree"
    RANDOM_FOREST = "RandomForest"
    LOGISTIC_REGRESSION = "LogisticRegression"
    LINEAR_SVM = "LinearSVM"
    KNN = "KNN"

    @classmethod
    def parse(cls, name: str) -> "Algorithm":
        key = str(name).strip().lower()
        aliases = {"dt": cls.DECISION_TREE, "rf": cls.RANDOM_FOREST, "lr": cls.LOGISTIC_REGRESSION, "svm": cls.LINEAR_SVM}
        if key in aliases:
            return aliases[key]
        for a in cls:
            if a.value.lower() == key:
                return a
        raise ValueError(f"unknown algorithm {name!r}; expected one of {[a.value for a in cls]}")


ALGORITHMS = tuple(Algorithm)


@dataclass(frozen=True)
class TreeParams:
    max_depth: int | None = None
    min_samples_split: int = 2
    criterion: str = "gini"


@dataclass(frozen=True)
class ForestParams:
    n_trees: int = 100
    features_per_split: str = "sqrt"
    bootstrap: bool = True


@dataclass(frozen=True)
class LogisticParams:
    l2_lambda: float = 1e-4
    learning_rate: float = 0.1
    max_iters: int = 1000
    tol: float = 1e-6


@dataclass(frozen=True)
class SVMParams:
    c: float = 1.0
    epochs: int = 50


@dataclass(frozen=True)
class KNNParams:
    k: int = 10
    metric: str = "euclidean"


@dataclass(frozen=True)
class Hyperparameters:
    tree: TreeParams = field(default_factory=TreeParams)
    forest: ForestParams = field(default_factory=ForestParams)
    logistic: LogisticParams = field(default_factory=LogisticParams)
    svm: SVMParams = field(default_factory=SVMParams)
    knn: KNNParams = field(default_factory=KNNParams)
    seed: int = 0

    def __post_init__(self):
        if self.knn.k < 1:
            raise ValueError("knn.k must be >= 1")
        if self.forest.n_trees < 1:
            raise ValueError("forest.n_trees must be >= 1")
        if self.svm.c <= 0:
            raise ValueError("svm.c must be > 0")
        for name, value in (
            ("tree.min_samples_split", self.tree.min_samples_split),
            ("logistic.max_iters", self.logistic.max_iters),
            ("svm.epochs", self.svm.epochs),
        ):
            if value < 1:
                raise ValueError(f"{name} must be positive")
        if self.tree.criterion != "gini":
            raise ValueError("only the gini criterion is supported")
        if self.forest.features_per_split != "sqrt":
            raise ValueError("only features_per_split='sqrt' is supported")
        if self.knn.metric != "euclidean":
            raise ValueError("only the euclidean metric is supported")

    def to_dict(self) -> dict:
        return asdict(self)

    def with_overrides(self, overrides: dict | None) -> "Hyperparameters":
        """Apply ``{"svm": {"c": 0.5}, "seed": 3, ...}``-style overrides."""
        if not overrides:
            return self
        changes = {}
        for key, value in overrides.items():
            current = getattr(self, key, None)
            if key == "seed":
                changes["seed"] = int(value)
            elif current is not None and isinstance(value, dict):
                valid = {f.name for f in fields(current)}
                unknown = set(value) - valid
                if unknown:
                    raise ValueError(f"unknown {key} hyperparameters: {sorted(unknown)}")
                changes[key] = replace(current, **value)
            else:
                raise ValueError(f"unknown hyperparameter group {key!r}")
        return replace(self, **changes)


def make_model(algorithm: Algorithm | str, hp: Hyperparameters | None = None) -> Model:
    hp = hp or Hyperparameters()
    algorithm = Algorithm.parse(algorithm) if not isinstance(algorithm, Algorithm) else algorithm
    if algorithm is Algorithm.DECISION_TREE:
        return DecisionTree(hp.tree.max_depth, hp.tree.min_samples_split)
    if algorithm is Algorithm.RANDOM_FOREST:
        return RandomForest(hp.forest.n_trees, hp.forest.bootstrap, hp.tree.max_depth, hp.tree.min_samples_split, hp.seed)
    if algorithm is Algorithm.LOGISTIC_REGRESSION:
        p = hp.logistic
        return LogisticRegression(p.l2_lambda, p.learning_rate, p.max_iters, p.tol)
    if algorithm is Algorithm.LINEAR_SVM:
        return LinearSVM(hp.svm.c, hp.svm.epochs, hp.seed)
    return KNN(hp.knn.k)


def train(algorithm: Algorithm | str, X, y, hp: Hyperparameters | None = None) -> Model:
    return make_model(algorithm, hp).fit(X, y)


def train_decision_tree(X, y, hp: Hyperparameters | None = None) -> DecisionTree:
    return train(Algorithm.DECISION_TREE, X, y, hp)


def train_random_forest(X, y, hp: Hyperparameters | None = None) -> RandomForest:
    return train(Algorithm.RANDOM_FOREST, X, y, hp)


def train_logistic_regression(X, y, hp: Hyperparameters | None = None) -> LogisticRegression:
    return train(Algorithm.LOGISTIC_REGRESSION, X, y, hp)


def train_linear_svm(X, y, hp: Hyperparameters | None = None) -> LinearSVM:
    return train(Algorithm.LINEAR_SVM, X, y, hp)


def knn_predict(model: KNN, query) -> Label:
    return Label.from_code(model.predict(np.atleast_2d(_as_row(query)))[0])


def _as_row(vector):
    values = getattr(vector, "values", vector)
    if sp.issparse(values):
        return values
    arr = np.asarray(values, dtype=float)
    if arr.ndim > 2 or (arr.ndim == 2 and arr.shape[0] != 1):
        raise DimensionMismatch("predict expects a single feature vector")
    return arr.reshape(1, -1)


def predict(model: Model, vector) -> Label:
    """Label for one feature vector (FeatureVector, 1-D array or 1-row sparse matrix)."""
    return Label.from_code(model.predict(_as_row(vector))[0])


__all__ = [
    "ALGORITHMS",
    "Algorithm",
    "DecisionTree",
    "ForestParams",
    "Hyperparameters",
    "KNN",
    "KNNParams",
    "LinearSVM",
    "LogisticParams",
    "LogisticRegression",
    "Model",
    "RandomForest",
    "SVMParams",
    "TreeParams",
    "euclidean_distances",
    "gini",
    "hinge_loss",
    "knn_predict",
    "load_model",
    "make_model",
    "predict",
    "save_model",
    "sigmoid",
    "train",
    "train_decision_tree",
    "train_linear_svm",
    "train_logistic_regression",
    "train_random_forest",
    "vote",
]

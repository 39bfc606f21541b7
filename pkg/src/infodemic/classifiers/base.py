"""Shared model plumbing: input checks, registry, JSON serialization."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from ..errors import DimensionMismatch, EmptyModel, EmptyTrainingSet, ModelError, NonFiniteLoss

MODEL_FORMAT_VERSION = 1
_REGISTRY: dict[str, type] = {}


def register(name):
    def deco(cls):
        cls.algorithm = name
        _REGISTRY[name] = cls
        return cls

    return deco


def as_dense(X) -> np.ndarray:
    if sp.issparse(X):
        return X.toarray()
    return np.asarray(X, dtype=float)


def as_matrix(X):
    """Sparse input stays CSR; anything else becomes a 2-D float array."""
    if sp.issparse(X):
        return sp.csr_matrix(X, dtype=float)
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    return X


def check_training_data(X, y):
    X = as_matrix(X)
    y = np.asarray(y, dtype=np.int64).ravel()
    if X.shape[0] == 0 or y.size == 0:
        raise EmptyTrainingSet("no training samples")
    if X.shape[0] != y.size:
        raise DimensionMismatch(f"X has {X.shape[0]} rows but y has {y.size} labels")
    if not np.isin(y, (0, 1)).all():
        raise ValueError("labels must be encoded 1 (Fake) / 0 (Real)")
    values = X.data if sp.issparse(X) else X
    if not np.all(np.isfinite(values)):
        raise NonFiniteLoss("training features contain non-finite values")
    return X, y


class Model:
    """Common surface of the five classifiers; labels are 1 = Fake, 0 = Real."""

    algorithm = "?"
    n_features: int | None = None

    def _check_input(self, X):
        if self.n_features is None:
            raise EmptyModel(f"{self.algorithm} model has not been trained")
        X = as_matrix(X)
        if X.shape[1] != self.n_features:
            raise DimensionMismatch(f"expected {self.n_features} features, got {X.shape[1]}")
        return X

    def predict(self, X) -> np.ndarray:
        raise NotImplementedError

    def _state(self) -> dict:
        raise NotImplementedError

    @classmethod
    def _from_state(cls, state):
        raise NotImplementedError

    def to_dict(self, **extra) -> dict:
        out = {
            "format_version": MODEL_FORMAT_VERSION,
            "algorithm": self.algorithm,
            "n_features": self.n_features,
            "state": self._state(),
        }
        out.update(extra)
        return out

    @staticmethod
    def from_dict(d: dict) -> "Model":
        if d.get("format_version") != MODEL_FORMAT_VERSION:
            raise ModelError(f"unsupported model format {d.get('format_version')!r}")
        cls = _REGISTRY[d["algorithm"]]
        model = cls._from_state(d["state"])
        model.n_features = d["n_features"]
        return model


def save_model(model: Model, path, **extra) -> None:
    Path(path).write_text(json.dumps(model.to_dict(**extra), sort_keys=True), encoding="utf-8")


def load_model(path) -> Model:
    return Model.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

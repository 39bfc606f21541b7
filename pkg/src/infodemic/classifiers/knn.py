"""k-nearest-neighbour classifier with Euclidean distance and pinned tie rules."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from ..errors import EmptyModel, KExceedsTrainingSize
from .base import Model, as_matrix, check_training_data, register


def euclidean_distances(Q, X) -> np.ndarray:
    """Pairwise distances, rows of ``Q`` against rows of ``X``.

    Dense inputs use direct differences; sparse inputs use the
    ``|q|^2 + |x|^2 - 2 q.x`` expansion (clipped at zero).
    """
    if sp.issparse(Q) or sp.issparse(X):
        Q = sp.csr_matrix(Q)
        X = sp.csr_matrix(X)
        qn = np.asarray(Q.multiply(Q).sum(axis=1)).ravel()
        xn = np.asarray(X.multiply(X).sum(axis=1)).ravel()
        cross = (Q @ X.T).toarray()
        d2 = qn[:, None] + xn[None, :] - 2.0 * cross
        return np.sqrt(np.maximum(d2, 0.0))
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    X = np.atleast_2d(np.asarray(X, dtype=float))
    out = np.empty((Q.shape[0], X.shape[0]))
    for i, q in enumerate(Q):
        diff = X - q
        out[i] = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    return out


def vote(neighbor_labels, neighbor_distances) -> int:
    """Majority label; a tied vote goes to the class with the smaller mean distance, then Real."""
    labels = np.asarray(neighbor_labels)
    dists = np.asarray(neighbor_distances, dtype=float)
    fake = int(labels.sum())
    real = labels.size - fake
    if fake != real:
        return 1 if fake > real else 0
    fake_mean = dists[labels == 1].mean()
    real_mean = dists[labels == 0].mean()
    return 1 if fake_mean < real_mean else 0


@register("KNN")
class KNN(Model):
    """Stores the training set; predicts by the ``k`` nearest rows.

    Distance ties at the k-th position keep the lower training index.
    """

    def __init__(self, k=10):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        self.X_ = None
        self.y_ = None
        self.n_features = None

    def fit(self, X, y):
        X, y = check_training_data(X, y)
        if self.k > X.shape[0]:
            raise KExceedsTrainingSize(f"k={self.k} exceeds {X.shape[0]} training samples")
        self.X_ = X
        self.y_ = y
        self.n_features = X.shape[1]
        return self

    def kneighbors(self, X):
        if self.X_ is None:
            raise EmptyModel("KNN model holds no training data")
        if self.k > self.X_.shape[0]:
            raise KExceedsTrainingSize(f"k={self.k} exceeds {self.X_.shape[0]} training samples")
        X = self._check_input(X)
        dist = euclidean_distances(X, self.X_)
        order = np.argsort(dist, axis=1, kind="stable")[:, : self.k]
        return np.take_along_axis(dist, order, axis=1), order

    def predict(self, X):
        dist, order = self.kneighbors(X)
        return np.array([vote(self.y_[o], d) for d, o in zip(dist, order)], dtype=np.int64)

    def _state(self):
        X = self.X_.toarray() if sp.issparse(self.X_) else self.X_
        return {"k": self.k, "X": np.asarray(X).tolist(), "y": self.y_.tolist(), "sparse": bool(sp.issparse(self.X_))}

    @classmethod
    def _from_state(cls, state):
        model = cls(state["k"])
        X = np.asarray(state["X"], dtype=float)
        model.X_ = sp.csr_matrix(X) if state.get("sparse") else as_matrix(X)
        model.y_ = np.asarray(state["y"], dtype=np.int64)
        return model

"""Logistic regression (full-batch gradient descent) and a Pegasos linear SVM."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from ..errors import NonFiniteLoss
from ._kernels import pegasos_epochs
from .base import Model, check_training_data, register


def sigmoid(z):
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def hinge_loss(margin):
    return np.maximum(0.0, 1.0 - np.asarray(margin, dtype=float))


def optimal_bias(scores, y_pm) -> float:
    """Bias minimizing the mean hinge loss for fixed scores ``w.x``.

    The loss is convex and piecewise linear in ``b`` and is often flat over an
    interval (balanced classes with every margin below one); the midpoint of
    the minimizing interval is returned.
    """
    scores = np.asarray(scores, dtype=float)
    y_pm = np.asarray(y_pm, dtype=float)
    p = np.sort(1.0 - scores[y_pm > 0])  # Fake terms active while b < p
    q = np.sort(-1.0 - scores[y_pm < 0])  # Real terms active while b > q
    cand = np.unique(np.concatenate([p, q]))
    cp = np.concatenate([[0.0], np.cumsum(p)])
    cq = np.concatenate([[0.0], np.cumsum(q)])
    above = p.size - np.searchsorted(p, cand, side="right")
    below = np.searchsorted(q, cand, side="left")
    loss = (cp[-1] - cp[p.size - above]) - above * cand + below * cand - cq[below]
    best = loss.min()
    hits = cand[loss <= best + 1e-12 * max(1.0, abs(best))]
    return float(0.5 * (hits[0] + hits[-1]))


def _matvec(X, w):
    return np.asarray(X @ w).ravel()


def _rmatvec(X, r):
    return np.asarray(X.T @ r).ravel()


class _LinearModel(Model):
    coef_: np.ndarray | None = None
    intercept_: float = 0.0

    def decision_function(self, X):
        X = self._check_input(X)
        return _matvec(X, self.coef_) + self.intercept_

    def _state(self):
        state = {k: v for k, v in self.params().items()}
        state["coef"] = self.coef_.tolist()
        state["intercept"] = float(self.intercept_)
        return state

    @classmethod
    def _from_state(cls, state):
        params = {k: v for k, v in state.items() if k not in ("coef", "intercept")}
        model = cls(**params)
        model.coef_ = np.asarray(state["coef"], dtype=float)
        model.intercept_ = float(state["intercept"])
        return model


@register("LogisticRegression")
class LogisticRegression(_LinearModel):
    """Mean log-loss plus ``(l2_lambda / 2) * ||w||^2`` (bias unpenalized).

    Plain gradient descent from zero. If a step would raise the loss the
    learning rate is halved and the step retried, so the recorded loss never
    increases. Stops after ``max_iters`` steps or once the largest gradient
    component drops below ``tol``.
    """

    def __init__(self, l2_lambda=1e-4, learning_rate=0.1, max_iters=1000, tol=1e-6):
        self.l2_lambda = l2_lambda
        self.learning_rate = learning_rate
        self.max_iters = max_iters
        self.tol = tol
        self.n_features = None
        self.loss_history_: list[float] = []

    def params(self):
        return {"l2_lambda": self.l2_lambda, "learning_rate": self.learning_rate, "max_iters": self.max_iters, "tol": self.tol}

    def loss(self, X, y, w, b) -> float:
        z = _matvec(X, w) + b
        # log(1 + e^z) - y z, written to stay finite for large |z|
        data = np.mean(np.logaddexp(0.0, z) - y * z)
        value = float(data + 0.5 * self.l2_lambda * np.dot(w, w))
        if not np.isfinite(value):
            raise NonFiniteLoss("log-loss became non-finite")
        return value

    def gradient(self, X, y, w, b):
        n = X.shape[0]
        r = sigmoid(_matvec(X, w) + b) - y
        return _rmatvec(X, r) / n + self.l2_lambda * w, float(np.sum(r) / n)

    def fit(self, X, y):
        X, y = check_training_data(X, y)
        y = y.astype(float)
        self.n_features = X.shape[1]
        w = np.zeros(X.shape[1])
        b = 0.0
        lr = self.learning_rate
        current = self.loss(X, y, w, b)
        self.loss_history_ = [current]
        for _ in range(self.max_iters):
            gw, gb = self.gradient(X, y, w, b)
            if max(np.max(np.abs(gw)) if gw.size else 0.0, abs(gb)) < self.tol:
                break
            for _halving in range(60):
                w_new = w - lr * gw
                b_new = b - lr * gb
                new = self.loss(X, y, w_new, b_new)
                if new <= current:
                    break
                lr *= 0.5
            else:
                break
            w, b, current = w_new, b_new, new
            self.loss_history_.append(current)
        self.coef_ = w
        self.intercept_ = b
        return self

    def predict_proba(self, X):
        """Probability of Fake."""
        return sigmoid(self.decision_function(X))

    def predict(self, X):
        return (self.predict_proba(X) >= 0.5).astype(np.int64)


@register("LinearSVM")
class LinearSVM(_LinearModel):
    """Primal linear SVM: ``0.5 * ||w||^2 + c * mean hinge``.

    Dividing by ``c`` gives the Pegasos objective with ``lambda = 1 / c``;
    training runs ``epochs`` passes of single-sample subgradient steps of size
    ``1 / (lambda * t)`` over seeded shuffles. The bias is learned without
    regularization and finally replaced by the exact minimizer for the learned
    ``w`` (see ``optimal_bias``). A zero score predicts Real.
    """

    def __init__(self, c=1.0, epochs=50, seed=0):
        if c <= 0:
            raise ValueError("c must be positive")
        self.c = c
        self.epochs = epochs
        self.seed = int(seed)
        self.n_features = None

    def params(self):
        return {"c": self.c, "epochs": self.epochs, "seed": self.seed}

    def objective(self, X, y_pm, w=None, b=None):
        w = self.coef_ if w is None else w
        b = self.intercept_ if b is None else b
        margins = y_pm * (_matvec(X, w) + b)
        return float(0.5 * np.dot(w, w) + self.c * np.mean(hinge_loss(margins)))

    def fit(self, X, y):
        X, y = check_training_data(X, y)
        self.n_features = X.shape[1]
        Xs = sp.csr_matrix(X, dtype=float)
        Xs.sort_indices()
        y_pm = np.where(y == 1, 1.0, -1.0)
        rng = np.random.default_rng([self.seed & 0xFFFFFFFFFFFFFFFF, 0x5F3])
        orders = np.vstack([rng.permutation(len(y)) for _ in range(self.epochs)]) if self.epochs else np.zeros((0, len(y)), dtype=np.int64)
        w, b = pegasos_epochs(
            Xs.data.astype(float), Xs.indices.astype(np.int64), Xs.indptr.astype(np.int64),
            y_pm, X.shape[1], 1.0 / self.c, orders.astype(np.int64), True,
        )
        self.coef_ = w
        # The objective is often flat in b; pick the centre of the optimal range.
        self.intercept_ = optimal_bias(_matvec(Xs, w), y_pm) if len(y) else float(b)
        return self

    def predict(self, X):
        return (self.decision_function(X) > 0).astype(np.int64)

"""CART decision tree (Gini) and a bagged random forest built from it."""

from __future__ import annotations

import math

import numpy as np

from ._kernels import apply_tree, best_split
from .base import Model, as_dense, check_training_data, register

# Forest vote ties fall back to Real.
_TIE_LABEL = 0


def gini(counts) -> float:
    """Gini impurity 1 - sum(p_k^2) of a class-count vector."""
    counts = np.asarray(counts, dtype=float)
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts / total
    return float(1.0 - np.sum(p * p))


class _TreeBuilder:
    def __init__(self, X, y, max_depth, min_samples_split, n_candidates=None, rng=None):
        self.X = X
        self.y = y
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.n_candidates = n_candidates
        self.rng = rng
        self.d = X.shape[1]
        self.all_features = np.arange(self.d, dtype=np.int64)
        self.feature, self.threshold, self.left, self.right, self.counts = [], [], [], [], []

    def _new_node(self, idx):
        n1 = int(self.y[idx].sum())
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.counts.append((len(idx) - n1, n1))
        return len(self.feature) - 1

    def _candidates(self):
        if self.n_candidates is None:
            return self.all_features, self.d
        return self.rng.permutation(self.d).astype(np.int64), self.n_candidates

    def build(self, idx):
        root = self._new_node(idx)
        stack = [(root, idx, 0)]
        while stack:
            node, idx, depth = stack.pop()
            n0, n1 = self.counts[node]
            if n0 == 0 or n1 == 0:
                continue
            if len(idx) < self.min_samples_split:
                continue
            if self.max_depth is not None and depth >= self.max_depth:
                continue
            feats, max_eval = self._candidates()
            # A zero-gain split is still taken: XOR-like nodes need it to reach purity.
            f, thr, _, _ = best_split(self.X, self.y, idx, feats, max_eval)
            if f < 0:
                continue
            go_left = self.X[idx, f] <= thr
            left_idx, right_idx = idx[go_left], idx[~go_left]
            self.feature[node] = int(f)
            self.threshold[node] = float(thr)
            left = self._new_node(left_idx)
            right = self._new_node(right_idx)
            self.left[node], self.right[node] = left, right
            # Right pushed first so the left subtree gets lower node ids.
            stack.append((right, right_idx, depth + 1))
            stack.append((left, left_idx, depth + 1))
        return _TreeArrays(
            np.asarray(self.feature, dtype=np.int64),
            np.asarray(self.threshold, dtype=float),
            np.asarray(self.left, dtype=np.int64),
            np.asarray(self.right, dtype=np.int64),
            np.asarray(self.counts, dtype=np.int64).reshape(-1, 2),
        )


class _TreeArrays:
    __slots__ = ("feature", "threshold", "left", "right", "counts")

    def __init__(self, feature, threshold, left, right, counts):
        self.feature, self.threshold, self.left, self.right, self.counts = feature, threshold, left, right, counts

    def leaves(self, X):
        return apply_tree(X, self.feature, self.threshold, self.left, self.right)

    def to_dict(self):
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "counts": self.counts.tolist(),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            np.asarray(d["feature"], dtype=np.int64),
            np.asarray(d["threshold"], dtype=float),
            np.asarray(d["left"], dtype=np.int64),
            np.asarray(d["right"], dtype=np.int64),
            np.asarray(d["counts"], dtype=np.int64).reshape(-1, 2),
        )

    @property
    def n_nodes(self):
        return len(self.feature)


@register("DecisionTree")
class DecisionTree(Model):
    """CART tree: Gini splits at midpoints of sorted distinct values.

    A sample goes left when ``x[feature] <= threshold``. Equal-score splits
    prefer the lower feature index, then the lower threshold. A leaf with
    equal class counts predicts Real.
    """

    def __init__(self, max_depth=None, min_samples_split=2):
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.tree_: _TreeArrays | None = None
        self.n_features = None

    def fit(self, X, y):
        X, y = check_training_data(X, y)
        self.n_features = X.shape[1]
        Xd = np.asfortranarray(as_dense(X))
        builder = _TreeBuilder(Xd, y, self.max_depth, self.min_samples_split)
        self.tree_ = builder.build(np.arange(len(y), dtype=np.int64))
        return self

    def leaf_counts(self, X):
        X = self._check_input(X)
        leaves = self.tree_.leaves(np.ascontiguousarray(as_dense(X)))
        return self.tree_.counts[leaves]

    def predict(self, X):
        counts = self.leaf_counts(X)
        return (counts[:, 1] > counts[:, 0]).astype(np.int64)

    def _state(self):
        return {"max_depth": self.max_depth, "min_samples_split": self.min_samples_split, "tree": self.tree_.to_dict()}

    @classmethod
    def _from_state(cls, state):
        model = cls(state["max_depth"], state["min_samples_split"])
        model.tree_ = _TreeArrays.from_dict(state["tree"])
        return model


@register("RandomForest")
class RandomForest(Model):
    """Bagged CART trees with ``ceil(sqrt(d))`` random candidate features per split.

    Tree ``t`` draws its bootstrap sample and feature subsets from a generator
    seeded with ``(seed, t)`` only, so trees are independent of build order.
    Majority vote; ties go to the class with the larger summed leaf class
    fraction, then to Real.
    """

    def __init__(self, n_trees=100, bootstrap=True, max_depth=None, min_samples_split=2, seed=0):
        if n_trees < 1:
            raise ValueError("n_trees must be >= 1")
        self.n_trees = n_trees
        self.bootstrap = bootstrap
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.seed = int(seed)
        self.trees_: list[_TreeArrays] = []
        self.n_features = None

    def tree_seed(self, t: int) -> list[int]:
        return [self.seed & 0xFFFFFFFFFFFFFFFF, t]

    def fit(self, X, y):
        X, y = check_training_data(X, y)
        n, d = X.shape
        self.n_features = d
        Xd = np.asfortranarray(as_dense(X))
        n_candidates = max(1, math.ceil(math.sqrt(d)))
        self.trees_ = []
        for t in range(self.n_trees):
            rng = np.random.default_rng(self.tree_seed(t))
            if self.bootstrap:
                sample = np.sort(rng.integers(0, n, size=n)).astype(np.int64)
            else:
                sample = np.arange(n, dtype=np.int64)
            builder = _TreeBuilder(Xd, y, self.max_depth, self.min_samples_split, n_candidates, rng)
            self.trees_.append(builder.build(sample))
        return self

    def votes(self, X):
        """Per-row (fake votes, summed fake fraction, summed real fraction)."""
        X = np.ascontiguousarray(as_dense(self._check_input(X)))
        fake_votes = np.zeros(X.shape[0], dtype=np.int64)
        fake_frac = np.zeros(X.shape[0])
        real_frac = np.zeros(X.shape[0])
        for tree in self.trees_:
            counts = tree.counts[tree.leaves(X)]
            totals = counts.sum(axis=1)
            fake_votes += counts[:, 1] > counts[:, 0]
            fake_frac += counts[:, 1] / totals
            real_frac += counts[:, 0] / totals
        return fake_votes, fake_frac, real_frac

    def predict(self, X):
        fake_votes, fake_frac, real_frac = self.votes(X)
        real_votes = len(self.trees_) - fake_votes
        out = np.where(fake_votes > real_votes, 1, 0)
        tied = fake_votes == real_votes
        out[tied] = np.where(fake_frac[tied] > real_frac[tied], 1, _TIE_LABEL)
        return out.astype(np.int64)

    def _state(self):
        return {
            "n_trees": self.n_trees,
            "bootstrap": self.bootstrap,
            "max_depth": self.max_depth,
            "min_samples_split": self.min_samples_split,
            "seed": self.seed,
            "tree_seeds": [self.tree_seed(t) for t in range(self.n_trees)],
            "trees": [t.to_dict() for t in self.trees_],
        }

    @classmethod
    def _from_state(cls, state):
        model = cls(state["n_trees"], state["bootstrap"], state["max_depth"], state["min_samples_split"], state["seed"])
        model.trees_ = [_TreeArrays.from_dict(t) for t in state["trees"]]
        return model


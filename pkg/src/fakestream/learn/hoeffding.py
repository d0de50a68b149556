from __future__ import annotations

import math
from itertools import count

import numpy as np

from .. import _accel
from .stats import GaussianStats, normalize, softmax_log, take

VAR_FLOOR = 1e-9


def hoeffding_bound(value_range, delta, n):
    return math.sqrt(value_range * value_range * math.log(1.0 / delta) / (2.0 * n))


def _xval(x, f):
    return x[f] if f < len(x) else 0.0


class Leaf:
    __slots__ = ("id", "depth", "class_w", "stats", "feat_idx", "last_eval",
                 "mc_correct", "nb_correct", "frozen", "adwin")

    def __init__(self, node_id, depth, n_classes, class_w=None, feat_idx=None):
        self.id = node_id
        self.depth = depth
        self.class_w = np.zeros(n_classes) if class_w is None else np.array(class_w, dtype=float)
        self.stats = GaussianStats(n_classes, 0 if feat_idx is None else len(feat_idx))
        self.feat_idx = feat_idx
        self.last_eval = 0.0
        self.mc_correct = 0.0
        self.nb_correct = 0.0
        self.frozen = False
        self.adwin = None

    is_leaf = True

    @property
    def observed(self):
        return float(self.stats.weight.sum())

    def local(self, x):
        return take(x, self.feat_idx)

    def global_feature(self, j):
        return int(j) if self.feat_idx is None else int(self.feat_idx[j])


class Split:
    __slots__ = ("id", "depth", "feature", "threshold", "children", "adwin", "alternate")

    def __init__(self, node_id, depth, feature, threshold, left, right):
        self.id = node_id
        self.depth = depth
        self.feature = feature
        self.threshold = threshold
        self.children = [left, right]
        self.adwin = None
        self.alternate = None

    is_leaf = False

    def branch(self, x):
        return 0 if _xval(x, self.feature) <= self.threshold else 1


class HoeffdingTree:
    """Incremental binary decision tree with Gaussian split estimators.

    Leaves keep per-class Gaussian statistics for their features.  Every
    ``grace_period`` units of observed weight a leaf evaluates ``n_splits``
    thresholds per feature by information gain and splits when the best
    candidate beats the runner-up (the null split included) by more than the
    Hoeffding bound, or when the bound has shrunk below ``tau``.

    ``max_size`` caps the node count, ``max_depth`` the depth; leaves that
    hit either limit stop trying to split but keep learning.  With
    ``max_features`` set, each new leaf watches a random subset of that many
    features drawn from ``rng``.
    """

    def __init__(self, n_classes=2, grace_period=200, delta=1e-7, tau=0.5, max_depth=50,
                 max_size=50, n_splits=10, min_branch_frac=0.01, leaf_prediction="nba",
                 max_features=None, rng=None, record_splits=False):
        if leaf_prediction not in ("mc", "nb", "nba"):
            raise ValueError(f"unknown leaf_prediction {leaf_prediction!r}")
        self.n_classes = n_classes
        self.grace_period = grace_period
        self.delta = delta
        self.tau = tau
        self.max_depth = max_depth
        self.max_size = max_size
        self.n_splits = n_splits
        self.min_branch_frac = min_branch_frac
        self.leaf_prediction = leaf_prediction
        self.max_features = max_features
        self.rng = rng if rng is not None else np.random.default_rng(0)
        self.record_splits = record_splits
        self.split_log = []
        self.split_features = []     # global feature index of every split, in order
        self.n_features = 0
        self.n_learned = 0.0
        self._ids = count()
        self.root = None
        self.n_nodes = 0

    # -- construction -------------------------------------------------
    def _new_leaf(self, depth, class_w=None):
        feat_idx = None
        if self.max_features is not None and self.n_features > self.max_features:
            feat_idx = np.sort(self.rng.choice(self.n_features, self.max_features, replace=False))
        return Leaf(next(self._ids), depth, self.n_classes, class_w, feat_idx)

    def _ensure_root(self, x):
        self.n_features = max(self.n_features, len(x))
        if self.root is None:
            self.root = self._new_leaf(0)
            self.n_nodes = 1

    # -- traversal ----------------------------------------------------
    def sort(self, x):
        node = self.root
        while node is not None and not node.is_leaf:
            node = node.children[node.branch(x)]
        return node

    def decision_path(self, x):
        """Root-to-leaf tests as (feature, threshold, direction, value) tuples."""
        path = []
        node = self.root
        while node is not None and not node.is_leaf:
            b = node.branch(x)
            path.append((node.feature, node.threshold, "left" if b == 0 else "right",
                         float(_xval(x, node.feature))))
            node = node.children[b]
        return path

    def follow(self, path):
        node = self.root
        for step in path:
            if node is None or node.is_leaf:
                raise ValueError("path longer than tree")
            if node.feature != step[0] or node.threshold != step[1]:
                raise ValueError("path does not match tree")
            node = node.children[0 if step[2] == "left" else 1]
        return node

    # -- prediction ---------------------------------------------------
    def _nb_proba(self, leaf, x):
        present = leaf.class_w > 0
        if not present.any() or (leaf.stats.weight[present] <= 0).any():
            return None
        with np.errstate(divide="ignore"):
            logp = np.log(normalize(leaf.class_w))
        ll = leaf.stats.loglik(leaf.local(x), VAR_FLOOR)
        return softmax_log(np.where(present, logp + ll, -np.inf))

    def leaf_proba(self, leaf, x):
        if leaf is None or leaf.class_w.sum() <= 0:
            return np.full(self.n_classes, 1.0 / self.n_classes)
        if self.leaf_prediction == "mc":
            return normalize(leaf.class_w)
        if self.leaf_prediction == "nba" and leaf.mc_correct > leaf.nb_correct:
            return normalize(leaf.class_w)
        nb = self._nb_proba(leaf, x)
        return normalize(leaf.class_w) if nb is None else nb

    def predict_proba(self, x):
        return self.leaf_proba(self.sort(x), x)

    def predict(self, x):
        return int(np.argmax(self.predict_proba(x)))

    # -- learning -----------------------------------------------------
    def learn(self, x, y, w=1.0):
        x = np.asarray(x, dtype=np.float64)
        self._ensure_root(x)
        parent, b = None, None
        node = self.root
        while not node.is_leaf:
            parent, b = node, node.branch(x)
            node = node.children[b]
        self._learn_leaf(node, parent, b, x, int(y), w, None)
        self.n_learned += w

    def _learn_leaf(self, leaf, parent, branch, x, y, w, budget_root):
        if self.leaf_prediction == "nba" and leaf.class_w.sum() > 0:
            if int(np.argmax(leaf.class_w)) == y:
                leaf.mc_correct += w
            nb = self._nb_proba(leaf, x)
            if nb is not None and int(np.argmax(nb)) == y:
                leaf.nb_correct += w
        leaf.class_w[y] += w
        leaf.stats.update(leaf.local(x), y, w)
        if leaf.frozen or leaf.observed - leaf.last_eval < self.grace_period:
            return None
        leaf.last_eval = leaf.observed
        return self._attempt_split(leaf, parent, branch, budget_root)

    def _size_of(self, budget_root):
        if budget_root is None:
            return self.n_nodes
        return count_nodes(budget_root)

    def _attempt_split(self, leaf, parent, branch, budget_root):
        if leaf.depth >= self.max_depth:
            leaf.frozen = True
            return None
        if self.max_size is not None and self._size_of(budget_root) + 2 > self.max_size:
            leaf.frozen = True
            return None
        obs = leaf.stats.weight
        if (obs > 0).sum() < 2 or leaf.stats.n_features == 0:
            return None
        st = leaf.stats
        merit, thr, left, right = _accel.split_merits(obs, st.mean, st.m2, st.minv, st.maxv,
                                                      self.n_splits, self.min_branch_frac)
        best_j = int(np.argmax(merit))
        best = merit[best_j]
        if not best > 0.0:
            return None
        others = np.delete(merit, best_j)
        second = max(0.0, float(others.max())) if len(others) else 0.0
        eps = hoeffding_bound(math.log2(max(self.n_classes, 2)), self.delta, float(obs.sum()))
        if not (best - second > eps or eps < self.tau):
            return None

        feature = leaf.global_feature(best_j)
        if self.record_splits:
            self.split_log.append({
                "node": leaf.id, "feature": feature, "local_feature": best_j,
                "threshold": float(thr[best_j]), "best": float(best), "second": second,
                "epsilon": eps, "n": float(obs.sum()), "tau": self.tau,
                "n_splits": self.n_splits, "min_branch_frac": self.min_branch_frac,
                "stats": st.copy(),
            })
        new = Split(next(self._ids), leaf.depth, feature, float(thr[best_j]),
                    self._new_leaf(leaf.depth + 1, left[best_j]),
                    self._new_leaf(leaf.depth + 1, right[best_j]))
        if parent is None:
            self.root = new
        elif isinstance(parent, Split) and branch is not None:
            parent.children[branch] = new
        else:
            parent.alternate = new
        if budget_root is None:
            self.n_nodes += 2
            self.split_features.append(feature)
        return new

    # -- introspection --------------------------------------------------
    def leaves(self):
        out = []
        stack = [self.root] if self.root is not None else []
        while stack:
            node = stack.pop()
            if node.is_leaf:
                out.append(node)
            else:
                stack.extend(reversed(node.children))
        return out

    @property
    def depth(self):
        return max((leaf.depth for leaf in self.leaves()), default=0)


def count_nodes(node):
    if node is None:
        return 0
    if node.is_leaf:
        return 1
    return 1 + count_nodes(node.children[0]) + count_nodes(node.children[1])


def ht_learn(x, y, model, w=1.0):
    model.learn(x, y, w)
    return model


def ht_predict_proba(x, model):
    return model.predict_proba(x)

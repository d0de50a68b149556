from __future__ import annotations

import numpy as np

from .adwin import DRIFT, WARNING, DriftDetector
from .hoeffding import HoeffdingTree

MEMBER_DEFAULTS = dict(grace_period=50, delta=0.01, tau=0.05, max_depth=50, max_size=None)


class ForestMember:
    __slots__ = ("tree", "background", "detector", "rng", "n_warnings", "n_drifts")

    def __init__(self, tree, detector, rng):
        self.tree = tree
        self.background = None
        self.detector = detector
        self.rng = rng
        self.n_warnings = 0
        self.n_drifts = 0


class AdaptiveRandomForest:
    """Online bagging of Hoeffding trees with random feature subsets and drift resets.

    Each member draws its training weight from Poisson(``lambda_value``) and
    its leaf feature subsets from its own seeded generator, so results do
    not depend on the order in which members are visited.  A warning on a
    member's error stream starts a background tree; a drift swaps it in
    (or a fresh tree when none was started).  Prediction is the plain
    average of member distributions.
    """

    def __init__(self, n_models=200, max_features=50, lambda_value=50.0, n_classes=2, seed=0,
                 warning_delta=0.01, drift_delta=0.002, drift_detection=True, resample=True,
                 **tree_params):
        self.n_models = n_models
        self.max_features = max_features
        self.lambda_value = lambda_value
        self.n_classes = n_classes
        self.seed = seed
        self.warning_delta = warning_delta
        self.drift_delta = drift_delta
        self.drift_detection = drift_detection
        self.resample = resample
        self.tree_params = {**MEMBER_DEFAULTS, **tree_params}
        children = np.random.SeedSequence(seed).spawn(n_models)
        self.members = []
        for ss in children:
            rng = np.random.default_rng(ss)
            self.members.append(ForestMember(self._new_tree(rng), self._new_detector(), rng))
        self.n_learned = 0.0
        self._cache_x = None
        self._cache = None

    def _new_tree(self, rng):
        return HoeffdingTree(n_classes=self.n_classes, max_features=self.max_features, rng=rng,
                             **self.tree_params)

    def _new_detector(self):
        if not self.drift_detection:
            return None
        return DriftDetector(self.warning_delta, self.drift_delta)

    def member_probas(self, x):
        if self._cache_x is x and self._cache is not None:
            return self._cache
        probas = [m.tree.predict_proba(x) for m in self.members]
        self._cache_x, self._cache = x, probas
        return probas

    def predict_proba(self, x):
        probas = self.member_probas(x)
        p = np.mean(probas, axis=0)
        return p / p.sum()

    def predict(self, x):
        return int(np.argmax(self.predict_proba(x)))

    def learn(self, x, y, w=1.0):
        x = np.asarray(x, dtype=np.float64) if not isinstance(x, np.ndarray) else x
        probas = self.member_probas(x)
        y = int(y)
        for m, proba in zip(self.members, probas):
            k = int(m.rng.poisson(self.lambda_value)) if self.resample else 1
            if k > 0:
                m.tree.learn(x, y, w * k)
                if m.background is not None:
                    m.background.learn(x, y, w * k)
            if m.detector is None:
                continue
            state = m.detector.update(0.0 if int(np.argmax(proba)) == y else 1.0)
            if state == DRIFT:
                m.n_drifts += 1
                m.tree = m.background if m.background is not None else self._new_tree(m.rng)
                m.background = None
                m.detector.reset()
            elif state == WARNING:
                m.n_warnings += 1
                if m.background is None:
                    m.background = self._new_tree(m.rng)
                m.detector.reset_warning()
        self._cache_x = self._cache = None
        self.n_learned += w

    @property
    def n_drifts(self):
        return sum(m.n_drifts for m in self.members)

    def best_member(self, x, label=None):
        """Index of the member most confident in ``label`` (default: the ensemble label)."""
        probas = self.member_probas(x)
        if label is None:
            label = int(np.argmax(np.mean(probas, axis=0)))
        best, best_conf = None, -1.0
        for i, p in enumerate(probas):
            if int(np.argmax(p)) != label:
                continue
            if p[label] > best_conf:
                best, best_conf = i, float(p[label])
        if best is None:
            best = int(np.argmax([p[label] for p in probas]))
        return best


def arf_learn(x, y, model, w=1.0):
    model.learn(x, y, w)
    return model


def arf_predict_proba(x, model):
    return model.predict_proba(x)

from __future__ import annotations

import numpy as np

from .stats import GaussianStats, softmax_log

VAR_FLOOR = 1e-9


class GaussianNB:
    """Incremental Gaussian naive Bayes over a growing dense feature space."""

    def __init__(self, n_classes=2, var_floor=VAR_FLOOR):
        self.n_classes = n_classes
        self.var_floor = var_floor
        self.stats = GaussianStats(n_classes)

    @property
    def n_seen(self):
        return float(self.stats.weight.sum())

    def learn(self, x, y, w=1.0):
        self.stats.update(x, int(y), w)

    def predict_proba(self, x):
        counts = self.stats.weight
        if (counts <= 0).any():
            return np.full(self.n_classes, 1.0 / self.n_classes)
        logp = np.log(counts / counts.sum()) + self.stats.loglik(x, self.var_floor)
        return softmax_log(logp)

    def predict(self, x):
        return int(np.argmax(self.predict_proba(x)))


def nb_learn(x, y, model):
    model.learn(x, y)
    return model


def nb_predict_proba(x, model):
    return model.predict_proba(x)

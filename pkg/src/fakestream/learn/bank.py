from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arf import AdaptiveRandomForest
from .gnb import GaussianNB
from .hat import HoeffdingAdaptiveTree
from .hoeffding import HoeffdingTree
from .kmeans import OnlineKMeans

FAMILIES = ("gnb", "htc", "hatc", "arfc")


@dataclass
class Prediction:
    label: int
    proba: np.ndarray
    cluster: int
    cold: bool

    @property
    def confidence(self):
        return float(self.proba[self.label])


def make_classifier(family, n_classes=2, seed=0, **params):
    if family == "gnb":
        return GaussianNB(n_classes)
    if family == "htc":
        return HoeffdingTree(n_classes, **params)
    if family == "hatc":
        return HoeffdingAdaptiveTree(n_classes, **params)
    if family == "arfc":
        return AdaptiveRandomForest(n_classes=n_classes, seed=seed, **params)
    raise ValueError(f"unknown classifier family {family!r}; expected one of {FAMILIES}")


def n_trained(model):
    if isinstance(model, GaussianNB):
        return model.n_seen
    return model.n_learned


class ModelBank:
    """k-means router with one classifier per cluster."""

    def __init__(self, family="arfc", k=10, n_classes=2, seed=0, **params):
        self.family = family
        self.k = k
        self.n_classes = n_classes
        self.seed = seed
        self.kmeans = OnlineKMeans(k)
        self.models = [make_classifier(family, n_classes, seed=seed * 1009 + c, **params) for c in range(k)]

    def route(self, xc):
        return self.kmeans.assign(xc)

    def predict(self, x, xc) -> Prediction:
        cid = self.route(xc)
        model = self.models[cid]
        if n_trained(model) <= 0:
            proba = np.full(self.n_classes, 1.0 / self.n_classes)
            return Prediction(0, proba, cid, True)
        proba = model.predict_proba(x)
        return Prediction(int(np.argmax(proba)), proba, cid, False)

    def learn(self, x, xc, y, cluster=None):
        cid = self.route(xc) if cluster is None else cluster
        self.models[cid].learn(x, y)
        self.kmeans.update(xc, cid)
        return cid


def bank_predict(bank, x, xc):
    return bank.predict(x, xc)


def bank_learn(bank, x, xc, y, cluster=None):
    return bank.learn(x, xc, y, cluster)

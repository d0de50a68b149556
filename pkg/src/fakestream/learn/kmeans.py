from __future__ import annotations

import numpy as np

from .. import _accel


class OnlineKMeans:
    """Sequential k-means: the first k distinct inputs seed the centroids, and
    each centroid is the running mean of the points assigned to it."""

    def __init__(self, k=10):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        self.centroids = None
        self.counts = np.zeros(k, dtype=np.int64)
        self.n_active = 0

    def _fit_dim(self, x):
        x = np.asarray(x, dtype=np.float64)
        if self.centroids is None:
            self.centroids = np.zeros((self.k, len(x)))
        d = self.centroids.shape[1]
        if len(x) > d:
            self.centroids = np.hstack([self.centroids, np.zeros((self.k, len(x) - d))])
        elif len(x) < d:
            x = np.concatenate([x, np.zeros(d - len(x))])
        return x

    def assign(self, x) -> int:
        """Nearest centroid (lowest id on ties).  While fewer than k centroids
        exist, an input that matches none of them gets the next free id."""
        x = self._fit_dim(x)
        best, d2 = _accel.nearest_centroid(self.centroids, self.n_active, x)
        if self.n_active < self.k and (best < 0 or d2 > 0.0):
            return self.n_active
        return best

    def update(self, x, cid):
        x = self._fit_dim(x)
        if cid == self.n_active and self.n_active < self.k:
            self.centroids[cid] = x
            self.counts[cid] = 1
            self.n_active += 1
            return
        self.counts[cid] += 1
        self.centroids[cid] += (x - self.centroids[cid]) / self.counts[cid]

    def learn(self, x):
        cid = self.assign(x)
        self.update(x, cid)
        return cid


def kmeans_assign(x, state):
    return state.assign(x)


def kmeans_update(x, cid, state):
    state.update(x, cid)
    return state

from __future__ import annotations

import numpy as np

from .. import _accel


def take(x, idx):
    """x[idx] with indices past the end of x read as 0 (sparse contract)."""
    if idx is None:
        return x
    out = np.zeros(len(idx))
    ok = idx < len(x)
    out[ok] = x[idx[ok]]
    return out


def fit_length(x, n):
    if len(x) == n:
        return x
    if len(x) > n:
        return x[:n]
    out = np.zeros(n)
    out[: len(x)] = x
    return out


class GaussianStats:
    """Per-class weighted count, mean, M2, min and max for a growing feature set.

    A column added after some samples were seen is initialised as if those
    samples had value 0 there, so absent dimensions behave as zeros.
    """

    def __init__(self, n_classes, n_features=0):
        self.n_classes = n_classes
        self.weight = np.zeros(n_classes)
        self.mean = np.zeros((n_classes, n_features))
        self.m2 = np.zeros((n_classes, n_features))
        self.minv = np.full((n_classes, n_features), np.inf)
        self.maxv = np.full((n_classes, n_features), -np.inf)

    @property
    def n_features(self):
        return self.mean.shape[1]

    def grow(self, n_features):
        extra = n_features - self.n_features
        if extra <= 0:
            return
        C = self.n_classes
        seen = (self.weight > 0)[:, None]
        self.mean = np.hstack([self.mean, np.zeros((C, extra))])
        self.m2 = np.hstack([self.m2, np.zeros((C, extra))])
        self.minv = np.hstack([self.minv, np.where(seen, 0.0, np.inf) * np.ones((C, extra))])
        self.maxv = np.hstack([self.maxv, np.where(seen, 0.0, -np.inf) * np.ones((C, extra))])

    def update(self, xs, c, w=1.0):
        if len(xs) > self.n_features:
            self.grow(len(xs))
        xs = fit_length(np.asarray(xs, dtype=np.float64), self.n_features)
        _accel.welford_row(self.mean[c], self.m2[c], self.minv[c], self.maxv[c],
                           float(self.weight[c]), xs, float(w))
        self.weight[c] += w

    def variance(self):
        n = self.weight[:, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(n > 1, self.m2 / np.where(n > 1, n - 1.0, 1.0), 0.0)

    def loglik(self, xs, var_floor=1e-9):
        xs = fit_length(np.asarray(xs, dtype=np.float64), self.n_features)
        return _accel.gaussian_loglik(self.weight, self.mean, self.m2, xs, var_floor)

    def copy(self):
        other = GaussianStats.__new__(GaussianStats)
        other.n_classes = self.n_classes
        for name in ("weight", "mean", "m2", "minv", "maxv"):
            setattr(other, name, getattr(self, name).copy())
        return other


def normalize(p):
    p = np.asarray(p, dtype=np.float64)
    s = p.sum()
    if not np.isfinite(s) or s <= 0:
        return np.full(len(p), 1.0 / len(p))
    return p / s


def softmax_log(logp):
    logp = np.asarray(logp, dtype=np.float64)
    finite = np.isfinite(logp)
    if not finite.any():
        return np.full(len(logp), 1.0 / len(logp))
    m = logp[finite].max()
    e = np.where(finite, np.exp(logp - m), 0.0)
    return e / e.sum()

"""Independent reference computations used by the unit and acceptance tests.

These deliberately avoid the package's kernels: plain loops, scipy.stats and
batch numpy reductions.
"""
import math

import numpy as np
from scipy.stats import norm


def batch_nb(X, y, x, n_classes=2, floor=1e-9):
    logp = []
    for c in range(n_classes):
        Xc = X[y == c]
        var = np.maximum(Xc.var(axis=0, ddof=1), floor)
        logp.append(math.log(len(Xc) / len(X)) + norm.logpdf(x, Xc.mean(axis=0), np.sqrt(var)).sum())
    logp = np.array(logp)
    p = np.exp(logp - logp.max())
    return p / p.sum()


def entropy(w):
    t = sum(w)
    return -sum(v / t * math.log2(v / t) for v in w if v > 0) if t > 0 else 0.0


def oracle_merits(stats, n_splits, min_frac):
    """Best gain and threshold per feature, recomputed with scipy and plain loops."""
    weight, C = stats.weight, len(stats.weight)
    total = weight.sum()
    out = []
    for j in range(stats.mean.shape[1]):
        seen = [c for c in range(C) if weight[c] > 0]
        lo = min(stats.minv[c, j] for c in seen)
        hi = max(stats.maxv[c, j] for c in seen)
        best = (-math.inf, 0.0)
        for i in range(1, n_splits + 1):
            t = lo + (hi - lo) * i / (n_splits + 1.0)
            if not lo < t < hi:
                continue
            left = []
            for c in range(C):
                if weight[c] <= 0:
                    left.append(0.0)
                    continue
                sd = math.sqrt(stats.m2[c, j] / (weight[c] - 1)) if weight[c] > 1 else 0.0
                if t < stats.minv[c, j]:
                    frac = 0.0
                elif t >= stats.maxv[c, j]:
                    frac = 1.0
                elif sd > 0:
                    frac = norm.cdf(t, stats.mean[c, j], sd)
                else:
                    frac = 1.0 if t >= stats.mean[c, j] else 0.0
                left.append(weight[c] * frac)
            right = [weight[c] - left[c] for c in range(C)]
            wl, wr = sum(left), sum(right)
            if not (wl / total > min_frac and wr / total > min_frac):
                continue
            gain = entropy(weight) - wl / total * entropy(left) - wr / total * entropy(right)
            if gain > best[0]:
                best = (gain, t)
        out.append(best)
    return out


def check_logged_split(rec, delta):
    """Recompute one logged split from its stored statistics; return a list of problems."""
    problems = []
    merits = oracle_merits(rec["stats"], rec["n_splits"], rec["min_branch_frac"])
    gains = [g for g, _ in merits]
    j = int(np.argmax(gains))
    if j != rec["local_feature"]:
        problems.append(f"best feature {j} != logged {rec['local_feature']}")
    if abs(gains[j] - rec["best"]) > 1e-9:
        problems.append(f"gain {gains[j]} != logged {rec['best']}")
    if abs(merits[j][1] - rec["threshold"]) > 1e-12:
        problems.append(f"threshold {merits[j][1]} != logged {rec['threshold']}")
    second = max([0.0] + [g for i, g in enumerate(gains) if i != j])
    n = rec["stats"].weight.sum()
    eps = math.sqrt(math.log(1 / delta) / (2 * n))
    if not (gains[j] > 0 and (gains[j] - second > eps or eps < rec["tau"])):
        problems.append("split condition does not hold")
    return problems

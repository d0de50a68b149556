"""Hot numeric kernels with a numba path and a pure-numpy path.

Set ``FAKESTREAM_DISABLE_JIT=1`` before import to force the numpy path
(numba is also skipped automatically when it cannot be imported).  Both
paths compute the same quantities; the numpy versions are the readable
reference and the jitted ones avoid per-call temporaries.
"""
import math
import os

import numpy as np
from scipy.special import ndtr

_SQRT2 = math.sqrt(2.0)
_LOG2PI = math.log(2.0 * math.pi)


def _env_disabled():
    return os.environ.get("FAKESTREAM_DISABLE_JIT", "").strip().lower() in ("1", "true", "yes", "on")


# --------------------------------------------------------------------------
# numpy reference implementations
# --------------------------------------------------------------------------

def _entropy_rows(dist):
    total = dist.sum(axis=-1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(total > 0, dist / np.where(total > 0, total, 1.0), 0.0)
        logs = np.where(p > 0, np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return -(p * logs).sum(axis=-1)


def split_merits_np(class_w, mean, m2, minv, maxv, n_splits, min_frac):
    """Best information-gain binary split per feature under Gaussian class models.

    Returns ``(merit, threshold, left, right)`` where ``left``/``right`` hold
    the estimated class weights on each side of the chosen threshold.
    Features without a usable candidate get merit ``-inf``.
    """
    C, F = mean.shape
    merit = np.full(F, -np.inf)
    thr = np.zeros(F)
    left = np.zeros((F, C))
    right = np.zeros((F, C))
    seen = class_w > 0
    total = class_w.sum()
    if F == 0 or total <= 0 or seen.sum() < 1:
        return merit, thr, left, right

    lo = np.where(seen[:, None], minv, np.inf).min(axis=0)
    hi = np.where(seen[:, None], maxv, -np.inf).max(axis=0)
    steps = np.arange(1, n_splits + 1) / (n_splits + 1.0)
    cand = lo[:, None] + (hi - lo)[:, None] * steps[None, :]            # F x S
    valid = (cand > lo[:, None]) & (cand < hi[:, None]) & np.isfinite(cand)

    n = class_w[:, None]                                              # C x 1
    with np.errstate(divide="ignore", invalid="ignore"):
        var = np.where(n > 1, m2 / np.where(n > 1, n - 1.0, 1.0), 0.0)
    std = np.sqrt(np.maximum(var, 0.0))                                # C x F

    s = cand[None, :, :]                                               # 1 x F x S
    mu = mean[:, :, None]
    sd = std[:, :, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        z = (s - mu) / np.where(sd > 0, sd, 1.0)
    cdf = np.where(sd > 0, ndtr(z), (s >= mu).astype(float))
    frac = np.where(s < minv[:, :, None], 0.0, np.where(s >= maxv[:, :, None], 1.0, cdf))
    lw = frac * n[:, :, None]                                          # C x F x S
    lw = np.where(seen[:, None, None], lw, 0.0)
    rw = np.where(seen[:, None, None], n[:, :, None] - lw, 0.0)

    lw_t = np.moveaxis(lw, 0, -1)                                      # F x S x C
    rw_t = np.moveaxis(rw, 0, -1)
    wl = lw_t.sum(axis=-1)
    wr = rw_t.sum(axis=-1)
    h_parent = _entropy_rows(class_w[None, :])[0]
    gain = h_parent - (wl / total) * _entropy_rows(lw_t) - (wr / total) * _entropy_rows(rw_t)
    branches_ok = ((wl / total) > min_frac).astype(int) + ((wr / total) > min_frac).astype(int) >= 2
    gain = np.where(valid & branches_ok, gain, -np.inf)

    best = np.argmax(gain, axis=1)
    rows = np.arange(F)
    merit = gain[rows, best]
    thr = np.where(np.isfinite(merit), cand[rows, best], 0.0)
    ok = np.isfinite(merit)[:, None]
    left = np.where(ok, lw_t[rows, best], 0.0)
    right = np.where(ok, rw_t[rows, best], 0.0)
    return merit, thr, left, right


def welford_row_np(mean_row, m2_row, min_row, max_row, n_before, xs, w):
    n_new = n_before + w
    delta = xs - mean_row
    mean_row += delta * (w / n_new)
    m2_row += w * delta * (xs - mean_row)
    np.minimum(min_row, xs, out=min_row)
    np.maximum(max_row, xs, out=max_row)


def gaussian_loglik_np(n_obs, mean, m2, xs, var_floor):
    n = n_obs[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        var = np.where(n > 1, m2 / np.where(n > 1, n - 1.0, 1.0), 0.0)
    var = np.maximum(var, var_floor)
    diff = xs[None, :] - mean
    return -0.5 * (np.log(var) + _LOG2PI).sum(axis=1) - 0.5 * (diff * diff / var).sum(axis=1)


def nearest_centroid_np(centroids, n_active, x):
    if n_active == 0:
        return -1, np.inf
    diff = centroids[:n_active] - x[None, :]
    d2 = np.einsum("ij,ij->i", diff, diff)
    best = int(np.argmin(d2))   # argmin returns the first minimum: lowest id wins ties
    return best, float(d2[best])


# --------------------------------------------------------------------------
# numba implementations
# --------------------------------------------------------------------------

HAVE_NUMBA = False
if not _env_disabled():
    try:
        from numba import njit
        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAVE_NUMBA = False

if HAVE_NUMBA:

    @njit(cache=True)
    def _entropy(vec):
        total = 0.0
        for v in vec:
            total += v
        if total <= 0.0:
            return 0.0
        h = 0.0
        for v in vec:
            if v > 0.0:
                p = v / total
                h -= p * math.log2(p)
        return h

    @njit(cache=True)
    def split_merits_nb(class_w, mean, m2, minv, maxv, n_splits, min_frac):
        C, F = mean.shape
        merit = np.full(F, -np.inf)
        thr = np.zeros(F)
        left = np.zeros((F, C))
        right = np.zeros((F, C))
        total = 0.0
        for c in range(C):
            total += class_w[c]
        if F == 0 or total <= 0.0:
            return merit, thr, left, right
        h_parent = _entropy(class_w)
        std = np.zeros((C, F))
        for c in range(C):
            n = class_w[c]
            for f in range(F):
                if n > 1.0:
                    v = m2[c, f] / (n - 1.0)
                    std[c, f] = math.sqrt(v) if v > 0.0 else 0.0
        lw = np.zeros(C)
        rw = np.zeros(C)
        for f in range(F):
            lo = np.inf
            hi = -np.inf
            for c in range(C):
                if class_w[c] > 0.0:
                    if minv[c, f] < lo:
                        lo = minv[c, f]
                    if maxv[c, f] > hi:
                        hi = maxv[c, f]
            if not (lo < hi) or not math.isfinite(lo) or not math.isfinite(hi):
                continue
            for i in range(n_splits):
                s = lo + (hi - lo) * ((i + 1) / (n_splits + 1.0))
                if not (s > lo and s < hi):
                    continue
                wl = 0.0
                wr = 0.0
                for c in range(C):
                    n = class_w[c]
                    if n <= 0.0:
                        lw[c] = 0.0
                        rw[c] = 0.0
                        continue
                    if s < minv[c, f]:
                        frac = 0.0
                    elif s >= maxv[c, f]:
                        frac = 1.0
                    elif std[c, f] > 0.0:
                        frac = 0.5 * (1.0 + math.erf((s - mean[c, f]) / (std[c, f] * _SQRT2)))
                    else:
                        frac = 1.0 if s >= mean[c, f] else 0.0
                    lw[c] = frac * n
                    rw[c] = n - lw[c]
                    wl += lw[c]
                    wr += rw[c]
                ok = 0
                if wl / total > min_frac:
                    ok += 1
                if wr / total > min_frac:
                    ok += 1
                if ok < 2:
                    continue
                g = h_parent - (wl / total) * _entropy(lw) - (wr / total) * _entropy(rw)
                if g > merit[f]:
                    merit[f] = g
                    thr[f] = s
                    for c in range(C):
                        left[f, c] = lw[c]
                        right[f, c] = rw[c]
        return merit, thr, left, right

    @njit(cache=True)
    def welford_row_nb(mean_row, m2_row, min_row, max_row, n_before, xs, w):
        n_new = n_before + w
        scale = w / n_new
        for f in range(xs.shape[0]):
            x = xs[f]
            delta = x - mean_row[f]
            mean_row[f] += delta * scale
            m2_row[f] += w * delta * (x - mean_row[f])
            if x < min_row[f]:
                min_row[f] = x
            if x > max_row[f]:
                max_row[f] = x

    @njit(cache=True)
    def gaussian_loglik_nb(n_obs, mean, m2, xs, var_floor):
        C, F = mean.shape
        out = np.zeros(C)
        for c in range(C):
            n = n_obs[c]
            acc = 0.0
            for f in range(F):
                v = m2[c, f] / (n - 1.0) if n > 1.0 else 0.0
                if v < var_floor:
                    v = var_floor
                d = xs[f] - mean[c, f]
                acc += -0.5 * (math.log(v) + _LOG2PI) - 0.5 * d * d / v
            out[c] = acc
        return out

    @njit(cache=True)
    def _nearest_nb(centroids, n_active, x):
        best = -1
        best_d = np.inf
        for k in range(n_active):
            d = 0.0
            for j in range(x.shape[0]):
                t = centroids[k, j] - x[j]
                d += t * t
            if d < best_d:
                best_d = d
                best = k
        return best, best_d

    def nearest_centroid_nb(centroids, n_active, x):
        best, d = _nearest_nb(centroids, n_active, x)
        return int(best), float(d)

    split_merits = split_merits_nb
    welford_row = welford_row_nb
    gaussian_loglik = gaussian_loglik_nb
    nearest_centroid = nearest_centroid_nb
    BACKEND = "numba"
else:
    split_merits = split_merits_np
    welford_row = welford_row_np
    gaussian_loglik = gaussian_loglik_np
    nearest_centroid = nearest_centroid_np
    BACKEND = "numpy"

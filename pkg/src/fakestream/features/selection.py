from __future__ import annotations

import math

from .vectorizer import NGRAM_PREFIX

LEXICON_PREFIX = "lexicon_"


def is_textual(name: str) -> bool:
    return name.startswith(NGRAM_PREFIX) or name.startswith(LEXICON_PREFIX)


class RunningStats:
    """Per-feature Welford count / mean / M2 keyed by feature name."""

    def __init__(self):
        self.stats = {}

    def update(self, values):
        for name, x in values.items():
            s = self.stats.get(name)
            if s is None:
                self.stats[name] = [1, float(x), 0.0]
                continue
            s[0] += 1
            d = float(x) - s[1]
            s[1] += d / s[0]
            s[2] += d * (float(x) - s[1])

    def count(self, name):
        s = self.stats.get(name)
        return 0 if s is None else s[0]

    def mean(self, name):
        s = self.stats.get(name)
        return None if s is None else s[1]

    def var(self, name):
        # population variance, matching the selection rule
        s = self.stats.get(name)
        if s is None or s[0] == 0:
            return None
        return max(s[2] / s[0], 0.0)

    def std(self, name):
        v = self.var(name)
        return None if v is None else math.sqrt(v)


class VarianceSelector:
    """Drop base features whose running variance is at or below ``threshold``.

    Features with fewer than ``min_samples`` observations are kept (the
    variance is not yet defined).  Textual dimensions always pass.
    """

    def __init__(self, threshold=0.0, min_samples=2):
        self.threshold = threshold
        self.min_samples = min_samples
        self.running = RunningStats()

    def keeps(self, name):
        if is_textual(name):
            return True
        if self.running.count(name) < self.min_samples:
            return True
        return self.running.var(name) > self.threshold

    def transform(self, values):
        return {k: v for k, v in values.items() if self.keeps(k)}

    def update(self, values):
        self.running.update({k: v for k, v in values.items() if not is_textual(k)})

    def selected(self):
        return [k for k in self.running.stats if self.keeps(k)]


def variance_select(values, state: VarianceSelector):
    return state.transform(values)


class Standardizer:
    """z-score against statistics of earlier observations only."""

    def __init__(self):
        self.running = RunningStats()

    def transform(self, values):
        out = {}
        for name, x in values.items():
            if self.running.count(name) == 0:
                out[name] = float(x)
                continue
            sd = self.running.std(name)
            out[name] = 0.0 if sd == 0.0 else (float(x) - self.running.mean(name)) / sd
        return out

    def update(self, values):
        self.running.update(values)


def standardize(values, state: Standardizer):
    return state.transform(values)

"""Prequential (test-then-train) evaluation: windows, metrics, run driver."""
from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import asdict, dataclass

from .ingest import CLASSES, FAKE, LABEL_INDEX, NON_FAKE

I_NON, I_FAKE = LABEL_INDEX[NON_FAKE], LABEL_INDEX[FAKE]


class MetricsWindow:
    """(predicted, actual) pairs plus confusion counts; ``capacity`` None = unbounded."""

    def __init__(self, capacity=None, n_classes=2):
        self.capacity = capacity
        self.n_classes = n_classes
        self.pairs = deque()
        self.confusion = [[0] * n_classes for _ in range(n_classes)]   # [actual][predicted]

    def add(self, predicted, actual):
        self.pairs.append((predicted, actual))
        self.confusion[actual][predicted] += 1
        if self.capacity is not None and len(self.pairs) > self.capacity:
            p, a = self.pairs.popleft()
            self.confusion[a][p] -= 1

    def __len__(self):
        return len(self.pairs)

    def recount(self):
        conf = [[0] * self.n_classes for _ in range(self.n_classes)]
        for p, a in self.pairs:
            conf[a][p] += 1
        return conf


def window_capacity(spec, n_events=None):
    kind, value = spec
    if kind == "full":
        return None
    if kind == "count":
        return int(value)
    if n_events is None:
        raise ValueError("a fractional window needs the stream length")
    return max(1, math.ceil(value * n_events))


def f_measure(conf, c):
    tp = conf[c][c]
    fp = sum(conf[a][c] for a in range(len(conf)) if a != c)
    fn = sum(conf[c][p] for p in range(len(conf)) if p != c)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def metrics_from_confusion(conf):
    total = sum(map(sum, conf))
    if total == 0:
        return None
    correct = sum(conf[i][i] for i in range(len(conf)))
    f_non, f_fake = f_measure(conf, I_NON), f_measure(conf, I_FAKE)
    return {"accuracy": correct / total, "macro_f": (f_non + f_fake) / 2.0,
            "f_fake": f_fake, "f_nonfake": f_non, "window_size": total}


def compute_metrics(window: MetricsWindow):
    """Accuracy, per-class F and macro F for the pairs in the window (None when empty)."""
    return metrics_from_confusion(window.confusion)


@dataclass
class RunReport:
    accuracy: float
    macro_f: float
    f_fake: float
    f_nonfake: float
    samples: int
    feature_set: str
    family: str
    window: str
    drift_events: int = 0
    seconds_per_sample: float = 0.0

    def deterministic(self):
        """Report without wall-clock timing (those go to a separate file)."""
        d = asdict(self)
        d.pop("seconds_per_sample")
        return d


SERIES_FIELDS = ("samples", "accuracy", "macro_f", "f_fake", "f_nonfake")


def run_stream(engine, events, window_spec=("full", None), series_every=100, on_step=None,
               report_tag=None):
    """Full prequential pass.  Returns (RunReport, series rows, timing rows).

    ``on_step(step, engine)`` runs after prediction and before training, so
    it can inspect the exact state that produced the prediction.
    """
    window = MetricsWindow(window_capacity(window_spec, len(events)))
    series, timing = [], []
    start = time.perf_counter()
    n = 0
    for ev in events:
        if ev.label is None:
            raise ValueError(f"event {ev.tweet_id} has no label; prequential mode needs labels")
        step = engine.predict(ev)
        window.add(step.prediction.label, ev.label_index)
        if on_step is not None:
            on_step(step, engine)
        engine.learn(step)
        n += 1
        if series_every and n % series_every == 0:
            m = compute_metrics(window)
            series.append({"samples": n, **{k: m[k] for k in SERIES_FIELDS[1:]}})
            timing.append({"samples": n, "seconds_per_sample": (time.perf_counter() - start) / n})
    elapsed = time.perf_counter() - start
    m = compute_metrics(window) or {"accuracy": 0.0, "macro_f": 0.0, "f_fake": 0.0, "f_nonfake": 0.0}
    kind, value = window_spec
    report = RunReport(
        accuracy=m["accuracy"], macro_f=m["macro_f"], f_fake=m["f_fake"], f_nonfake=m["f_nonfake"],
        samples=n, feature_set=engine.feature_set, family=engine.family,
        window=kind if value is None else f"{kind}:{value}",
        drift_events=engine.drift_events(),
        seconds_per_sample=elapsed / n if n else 0.0,
    )
    return report, series, timing


def majority_baseline(labels, window_spec=("full", None)):
    """Constant prediction of the stream's majority class, scored prequentially.

    Ties go to the non-fake class.  Returns the metric dict.
    """
    idx = [LABEL_INDEX[l] if isinstance(l, str) else int(l) for l in labels]
    n_fake = sum(1 for i in idx if i == I_FAKE)
    majority = I_FAKE if n_fake > len(idx) - n_fake else I_NON
    window = MetricsWindow(window_capacity(window_spec, len(idx)))
    for a in idx:
        window.add(majority, a)
    out = compute_metrics(window)
    if out is not None:
        out["majority"] = CLASSES[majority]
    return out

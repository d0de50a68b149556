from __future__ import annotations

import math

STABLE = "stable"
WARNING = "warning"
DRIFT = "drift"


class ADWIN:
    """Adaptive windowing change detector over an exponential histogram.

    Level ``i`` holds up to ``max_buckets`` buckets of ``2**i`` values, each
    stored as (total, variance).  Every ``clock`` updates the window is
    scanned for a split point where the two sub-window means differ beyond
    the bound; the oldest buckets are dropped until no such split remains.
    """

    def __init__(self, delta=0.002, clock=32, max_buckets=5, min_window_length=5, grace_period=10):
        self.delta = delta
        self.clock = clock
        self.max_buckets = max_buckets
        self.min_window_length = min_window_length
        self.grace_period = grace_period
        self.levels = []      # levels[i] = list of [total, variance], oldest first
        self.total = 0.0
        self.variance = 0.0
        self.width = 0
        self.n_detections = 0
        self.tick = 0
        self.drift_detected = False
        self.last_change_increase = False

    @property
    def estimation(self):
        return self.total / self.width if self.width else 0.0

    def update(self, x) -> bool:
        """Add one value; return True when a change was detected."""
        self._insert(float(x))
        self.tick += 1
        self.drift_detected = False
        if self.tick % self.clock == 0 and self.width > self.grace_period:
            self.drift_detected = self._detect()
        return self.drift_detected

    def _insert(self, x):
        self.width += 1
        if self.width > 1:
            mean = self.total / (self.width - 1)
            self.variance += (self.width - 1) * (x - mean) ** 2 / self.width
        self.total += x
        if not self.levels:
            self.levels.append([])
        self.levels[0].append([x, 0.0])
        self._compress()

    def _compress(self):
        i = 0
        while i < len(self.levels):
            level = self.levels[i]
            if len(level) <= self.max_buckets:
                break
            (t1, v1), (t2, v2) = level[0], level[1]
            n = 2 ** i
            merged = [t1 + t2, v1 + v2 + n * n * (t1 / n - t2 / n) ** 2 / (2 * n)]
            del level[:2]
            if i + 1 == len(self.levels):
                self.levels.append([])
            self.levels[i + 1].append(merged)
            i += 1

    def _cut(self, n0, n1, u0, u1):
        mean_diff = abs(u0 / n0 - u1 / n1)
        m = 1.0 / (n0 - self.min_window_length + 1) + 1.0 / (n1 - self.min_window_length + 1)
        d = math.log(2.0 * math.log(self.width) / self.delta)
        var = self.variance / self.width
        eps = math.sqrt(2.0 * m * var * d) + 2.0 / 3.0 * d * m
        return mean_diff > eps

    def _detect(self):
        changed = False
        while self.width > self.min_window_length * 2:
            n0, u0 = 0, 0.0
            n1, u1 = self.width, self.total
            cut_found = False
            # walk buckets from the oldest; never consume the newest one
            for i in range(len(self.levels) - 1, -1, -1):
                size = 2 ** i
                level = self.levels[i]
                last_k = len(level) - 1 if i == 0 else len(level)
                for k in range(last_k):
                    t = level[k][0]
                    n0 += size
                    n1 -= size
                    u0 += t
                    u1 -= t
                    if n0 >= self.min_window_length and n1 >= self.min_window_length and self._cut(n0, n1, u0, u1):
                        cut_found = True
                        self.last_change_increase = u1 / n1 > u0 / n0
                        break
                if cut_found:
                    break
            if not cut_found:
                break
            changed = True
            self._drop_oldest()
        if changed:
            self.n_detections += 1
        return changed

    def _drop_oldest(self):
        i = len(self.levels) - 1
        size = 2 ** i
        t, v = self.levels[i].pop(0)
        if not self.levels[i]:
            self.levels.pop()
        self.width -= size
        self.total -= t
        if self.width > 0:
            mu_w = self.total / self.width
            self.variance -= v + size * self.width * (t / size - mu_w) ** 2 / (size + self.width)
            self.variance = max(self.variance, 0.0)
        else:
            self.variance = 0.0
            self.total = 0.0


class DriftDetector:
    """Warning/drift pair of ADWIN detectors over an error indicator.

    Only increases of the monitored mean are reported; a drop in error is
    good news and not a reason to adapt.
    """

    def __init__(self, warning_delta=0.01, drift_delta=0.002, increase_only=True):
        self.warning_delta = warning_delta
        self.drift_delta = drift_delta
        self.increase_only = increase_only
        self.warning = ADWIN(warning_delta) if warning_delta else None
        self.drift = ADWIN(drift_delta)

    def _fired(self, det, value):
        hit = det.update(value)
        return hit and (det.last_change_increase or not self.increase_only)

    def update(self, value) -> str:
        state = STABLE
        if self.warning is not None and self._fired(self.warning, value):
            state = WARNING
        if self._fired(self.drift, value):
            state = DRIFT
        return state

    def reset_warning(self):
        if self.warning is not None:
            self.warning = ADWIN(self.warning_delta)

    def reset(self):
        self.reset_warning()
        self.drift = ADWIN(self.drift_delta)


def adwin_update(detector, value) -> str:
    """Feed one value to an ADWIN or DriftDetector; report stable / warning / drift."""
    if isinstance(detector, DriftDetector):
        return detector.update(value)
    return DRIFT if detector.update(value) else STABLE

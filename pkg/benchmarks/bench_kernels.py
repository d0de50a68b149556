"""Numba vs pure-numpy timing for the hot kernels and one end-to-end learner.

    python benchmarks/bench_kernels.py            # both backends, side by side
    python benchmarks/bench_kernels.py --worker   # active backend only, JSON on stdout

Each backend runs in its own interpreter because the backend is chosen at
import time from FAKESTREAM_DISABLE_JIT.
"""
import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _best_of(fn, repeat=5, number=200):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(number):
            fn()
        best = min(best, (time.perf_counter() - t0) / number)
    return best


def worker(n_stream):
    from fakestream import _accel
    from fakestream.learn import HoeffdingTree
    from fakestream.synth import separable_stream

    rng = np.random.default_rng(0)
    C, F = 2, 60
    class_w = np.array([120.0, 80.0])
    mean = rng.normal(size=(C, F))
    m2 = rng.uniform(1, 50, size=(C, F))
    minv = mean - 3.0
    maxv = mean + 3.0
    xs = rng.normal(size=F)
    cents = rng.normal(size=(10, F))

    def merits():
        _accel.split_merits(class_w, mean, m2, minv, maxv, 10, 0.01)

    def welford():
        _accel.welford_row(mean[0].copy(), m2[0].copy(), minv[0].copy(), maxv[0].copy(), 120.0, xs, 1.0)

    def loglik():
        _accel.gaussian_loglik(class_w, mean, m2, xs, 1e-9)

    def nearest():
        _accel.nearest_centroid(cents, 10, xs)

    for fn in (merits, welford, loglik, nearest):  # compile outside the timed loops
        fn()
    out = {"backend": _accel.BACKEND}
    for name, fn in (("split_merits", merits), ("welford_row", welford),
                     ("gaussian_loglik", loglik), ("nearest_centroid", nearest)):
        out[name] = _best_of(fn)

    X, y = separable_stream(n_stream, n_features=20, seed=1)
    tree = HoeffdingTree(grace_period=200, max_size=50)
    t0 = time.perf_counter()
    for xi, yi in zip(X, y):
        tree.predict_proba(xi)
        tree.learn(xi, int(yi))
    out["htc_stream_per_sample"] = (time.perf_counter() - t0) / n_stream
    return out


def _spawn(disable, n_stream):
    env = dict(os.environ)
    if disable:
        env["FAKESTREAM_DISABLE_JIT"] = "1"
    else:
        env.pop("FAKESTREAM_DISABLE_JIT", None)
    res = subprocess.run([sys.executable, __file__, "--worker", "--n", str(n_stream)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--worker", action="store_true")
    ap.add_argument("--n", type=int, default=5000, help="samples for the end-to-end stream")
    args = ap.parse_args()
    if args.worker:
        print(json.dumps(worker(args.n)))
        return
    jit = _spawn(False, args.n)
    ref = _spawn(True, args.n)
    print(f"{'kernel':<24}{jit['backend'] + ' (us)':>16}{ref['backend'] + ' (us)':>16}{'speedup':>10}")
    for key in ("split_merits", "welford_row", "gaussian_loglik", "nearest_centroid", "htc_stream_per_sample"):
        a, b = jit[key] * 1e6, ref[key] * 1e6
        print(f"{key:<24}{a:>16.2f}{b:>16.2f}{b / a:>9.1f}x")


if __name__ == "__main__":
    main()

import pickle

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fakestream.learn import (
    ADWIN, AdaptiveRandomForest, DriftDetector, GaussianNB, HoeffdingAdaptiveTree, HoeffdingTree,
    ModelBank, OnlineKMeans, hoeffding_bound, snapshot,
)
from fakestream.learn.adwin import DRIFT
from fakestream.synth import separable_stream

from oracles import batch_nb, check_logged_split


# -- Gaussian naive Bayes ------------------------------------------------------

def test_gnb_matches_batch():
    rng = np.random.default_rng(11)
    X = rng.normal(size=(1000, 5)) * [1, 2, 3, 4, 5] + [0, 1, 2, 3, 4]
    y = rng.integers(0, 2, 1000)
    X[y == 1] += 0.7
    nb = GaussianNB()
    for xi, yi in zip(X, y):
        nb.learn(xi, yi)
    for c in (0, 1):
        np.testing.assert_allclose(nb.stats.mean[c], X[y == c].mean(axis=0), atol=1e-9)
        np.testing.assert_allclose(nb.stats.variance()[c], X[y == c].var(axis=0, ddof=1), atol=1e-9)
    for x in X[:50]:
        np.testing.assert_allclose(nb.predict_proba(x), batch_nb(X, y, x), atol=1e-9)


def test_gnb_symmetry_and_proximity():
    nb = GaussianNB()
    for v, c in ((1, 0), (3, 0), (5, 1), (7, 1)):
        nb.learn(np.array([v], float), c)
    np.testing.assert_allclose(nb.predict_proba(np.array([4.0])), [0.5, 0.5], atol=1e-12)
    p = nb.predict_proba(np.array([2.0]))
    assert p[0] > p[1]


def test_gnb_uniform_until_both_classes():
    nb = GaussianNB()
    nb.learn(np.array([1.0]), 0)
    np.testing.assert_array_equal(nb.predict_proba(np.array([1.0])), [0.5, 0.5])


# -- Hoeffding tree ------------------------------------------------------------

def test_hoeffding_bound_value():
    assert hoeffding_bound(1, 0.05, 1000) == pytest.approx(0.03870, abs=1e-4)


def test_logged_splits_satisfy_condition():
    rng = np.random.default_rng(5)
    X = rng.random((4000, 4))
    y = ((X[:, 0] > 0.5) ^ (X[:, 1] > 0.7)).astype(int)
    tree = HoeffdingTree(grace_period=100, delta=1e-5, tau=0.05, record_splits=True)
    for xi, yi in zip(X, y):
        tree.learn(xi, yi)
    assert len(tree.split_log) >= 2
    for rec in tree.split_log:
        assert check_logged_split(rec, tree.delta) == []


def test_htc_separable_stream():
    X, y = separable_stream(5000, seed=0)
    tree = HoeffdingTree()
    hits = []
    for xi, yi in zip(X, y):
        hits.append(tree.predict(xi) == yi)
        tree.learn(xi, yi)
    assert np.mean(hits[-1000:]) >= 0.95


def test_tree_limits():
    X, y = separable_stream(3000, n_features=5, seed=2)
    y = (X[:, :3].sum(axis=1) > 1.5).astype(int)
    small = HoeffdingTree(grace_period=50, tau=0.5, max_size=5, max_depth=50)
    shallow = HoeffdingTree(grace_period=50, tau=0.5, max_size=None, max_depth=1)
    for xi, yi in zip(X, y):
        small.learn(xi, yi)
        shallow.learn(xi, yi)
    assert small.n_nodes <= 5
    assert shallow.depth <= 1


def test_decision_path_reaches_leaf():
    X, y = separable_stream(2000, seed=3)
    tree = HoeffdingTree(grace_period=50)
    for xi, yi in zip(X, y):
        tree.learn(xi, yi)
    assert tree.n_nodes > 1
    for x in X[:100]:
        path = tree.decision_path(x)
        assert tree.follow(path) is tree.sort(x)
        for feat, thr, direction, value in path:
            assert (value <= thr) == (direction == "left")


def test_single_leaf_path_empty():
    tree = HoeffdingTree()
    tree.learn(np.array([0.3]), 1)
    assert tree.decision_path(np.array([0.3])) == []


# -- adaptive learners ---------------------------------------------------------

def test_hat_equals_htc_on_stationary_stream():
    X, y = separable_stream(4000, seed=4)
    ht, hat = HoeffdingTree(grace_period=100), HoeffdingAdaptiveTree(grace_period=100)
    for xi, yi in zip(X, y):
        assert np.array_equal(ht.predict_proba(xi), hat.predict_proba(xi))
        ht.learn(xi, yi)
        hat.learn(xi, yi)
    assert hat.n_alternates == 0 and hat.n_replacements == 0


def test_arf_single_member_equals_htc():
    X, y = separable_stream(3000, seed=6)
    params = dict(grace_period=50, delta=0.01, tau=0.05, max_depth=50, max_size=None)
    forest = AdaptiveRandomForest(n_models=1, resample=False, drift_detection=False)
    tree = HoeffdingTree(**params)
    for xi, yi in zip(X, y):
        np.testing.assert_allclose(forest.predict_proba(xi), tree.predict_proba(xi), atol=1e-12)
        assert forest.predict(xi) == tree.predict(xi)
        forest.learn(xi, yi)
        tree.learn(xi, yi)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=3, max_size=3))
def test_arf_output_simplex(xq):
    forest = _trained_forest()
    p = forest.predict_proba(np.array(xq))
    assert abs(p.sum() - 1) < 1e-9 and (p >= 0).all()


_FOREST = []


def _trained_forest():
    if not _FOREST:
        X, y = separable_stream(800, seed=8)
        f = AdaptiveRandomForest(n_models=5, max_features=2, lambda_value=6, seed=1)
        for xi, yi in zip(X, y):
            f.learn(xi, yi)
        _FOREST.append(f)
    return _FOREST[0]


def test_arf_seed_determinism():
    X, y = separable_stream(600, seed=9)
    runs = []
    for _ in range(2):
        f = AdaptiveRandomForest(n_models=4, max_features=2, lambda_value=6, seed=3)
        out = []
        for xi, yi in zip(X, y):
            out.append(f.predict_proba(xi).tolist())
            f.learn(xi, yi)
        runs.append(out)
    assert runs[0] == runs[1]


# -- ADWIN -------------------------------------------------------------------

def test_adwin_constant_no_drift():
    det = ADWIN(0.002)
    assert not any(det.update(0.5) for _ in range(10000))


def test_adwin_detects_step_and_forgets():
    det = ADWIN(0.002)
    for _ in range(1000):
        det.update(0.0)
    before = det.width
    hit = None
    for i in range(300):
        if det.update(1.0):
            hit = i
            break
    assert hit is not None
    assert det.width < before
    assert det.last_change_increase


def test_drift_detector_ignores_decrease():
    dd = DriftDetector(0.01, 0.002)
    for _ in range(1000):
        dd.update(1.0)
    states = [dd.update(0.0) for _ in range(500)]
    assert DRIFT not in states


# -- k-means -------------------------------------------------------------------

def test_kmeans_nearest_and_ties():
    km = OnlineKMeans(2)
    km.learn(np.array([0.0, 0.0]))
    km.learn(np.array([10.0, 10.0]))
    assert km.assign(np.array([1.0, 1.0])) == 0
    assert km.assign(np.array([5.0, 5.0])) == 0


def test_kmeans_update_rule():
    km = OnlineKMeans(1)
    km.learn(np.array([0.0, 0.0]))
    km.update(np.array([2.0, 2.0]), 0)
    np.testing.assert_array_equal(km.centroids[0], [1.0, 1.0])
    for _ in range(5):
        km.learn(np.array([1.0, 1.0]))
    np.testing.assert_array_equal(km.centroids[0], [1.0, 1.0])


def test_kmeans_assign_is_pure():
    km = OnlineKMeans(3)
    km.learn(np.array([1.0]))
    c = km.centroids.copy()
    km.assign(np.array([4.0]))
    np.testing.assert_array_equal(km.centroids, c)
    assert km.n_active == 1


@settings(max_examples=30)
@given(st.lists(st.lists(st.floats(-100, 100), min_size=2, max_size=2), min_size=1, max_size=100))
def test_kmeans_k1_batch_mean(points):
    km = OnlineKMeans(1)
    for p in points:
        assert km.learn(np.array(p)) == 0
    np.testing.assert_allclose(km.centroids[0], np.mean(points, axis=0), atol=1e-9)


# -- model bank ----------------------------------------------------------------

def test_bank_shape_and_cold_start():
    bank = ModelBank("htc", k=10)
    assert len(bank.models) == 10
    pred = bank.predict(np.zeros(3), np.zeros(2))
    assert pred.cold and pred.label == 0
    np.testing.assert_array_equal(pred.proba, [0.5, 0.5])


def test_bank_routes_and_learns():
    bank = ModelBank("gnb", k=2)
    for i in range(20):
        xc = np.array([0.0]) if i % 2 else np.array([10.0])
        bank.learn(np.array([float(i % 2)]), xc, i % 2)
    assert bank.models[0].n_seen == 10 and bank.models[1].n_seen == 10
    assert not bank.predict(np.array([1.0]), np.array([0.0])).cold


def test_confidence_property():
    bank = ModelBank("gnb", k=1)
    pred = bank.predict(np.zeros(1), np.zeros(1))
    assert pred.confidence == 0.5


# -- snapshots -----------------------------------------------------------------

def test_snapshot_round_trip(tmp_path):
    X, y = separable_stream(500, seed=1)
    tree = HoeffdingAdaptiveTree(grace_period=50)
    for xi, yi in zip(X, y):
        tree.learn(xi, yi)
    snapshot.save({"tree": tree}, tmp_path / "s.pkl")
    back = snapshot.load(tmp_path / "s.pkl")["tree"]
    for x in X[:50]:
        np.testing.assert_array_equal(back.predict_proba(x), tree.predict_proba(x))


def test_snapshot_rejects_foreign_file(tmp_path):
    (tmp_path / "x.pkl").write_bytes(pickle.dumps({"a": 1}))
    with pytest.raises(snapshot.SnapshotError):
        snapshot.load(tmp_path / "x.pkl")

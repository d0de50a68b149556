import numpy as np
import pytest

from fakestream.config import RunConfig
from fakestream.engine import Engine
from fakestream.explain import (
    COLD_SENTENCE, cluster_characteristic_features, emit_report, explain_step, parse_structured, render_step,
    replay_path, to_html, to_structured, to_text, transcript_for,
)
from fakestream.ingest import validate_event
from fakestream.learn import HoeffdingTree, OnlineKMeans
from fakestream.synth import generate


def test_step_sentence():
    step = {"feature": "surprise", "threshold": 0.55, "direction": "left", "value": 0.3, "index": 0}
    assert render_step(step) == ("Because surprise was 0.30, which is ≤ 0.55, "
                                 "the model followed the left branch.")


def test_cold_transcript():
    assert transcript_for([], 0, 0.5) == [COLD_SENTENCE]


def test_transcript_length_and_confidence():
    path = [{"feature": "a", "threshold": 1.0, "direction": "right", "value": 2.0, "index": 0}] * 3
    t = transcript_for(path, 1, 0.81)
    assert len(t) == len(path) + 1
    assert t[-1] == "The post was classified as fake with 81% confidence."


def test_root_left_branch_first():
    tree = HoeffdingTree(grace_period=20, tau=0.5)
    rng = np.random.default_rng(0)
    for _ in range(400):
        x = rng.random(1)
        tree.learn(x, int(x[0] > 0.55))
    thr = tree.root.threshold
    from fakestream.explain import decision_path
    path = decision_path(tree, np.array([thr - 0.1]), ["surprise"])
    assert path[0]["direction"] == "left" and path[0]["feature"] == "surprise"
    assert replay_path(tree, path) is tree.sort(np.array([thr - 0.1]))


def _kmeans(centroids, counts=None):
    km = OnlineKMeans(len(centroids))
    km.centroids = np.array(centroids, dtype=float)
    km.n_active = len(centroids)
    km.counts[:] = counts if counts is not None else 1
    return km


def test_cluster_ranking_brute_force():
    names = ("hashtag_count", "word_count", "link_count")
    km = _kmeans([[5.0, 0.2, -0.1], [0.0, 0.0, 0.0]])
    got, marker = cluster_characteristic_features(km, 0, [0, 0, 0], [1, 1, 1], 2, names)
    assert marker is None and got[0][0] == "hashtag_count"
    assert [n for n, _ in got] == ["hashtag_count", "word_count"]
    every, _ = cluster_characteristic_features(km, 0, [0, 0, 0], [1, 1, 1], 10, names)
    assert len(every) == 3


def test_identical_centroids_identical_lists():
    names = ("a", "b")
    km = _kmeans([[1.0, 2.0], [1.0, 2.0]])
    a, _ = cluster_characteristic_features(km, 0, [0, 0], [1, 1], 2, names)
    b, _ = cluster_characteristic_features(km, 1, [0, 0], [1, 1], 2, names)
    assert a == b


def test_empty_cluster_marker():
    km = OnlineKMeans(3)
    assert cluster_characteristic_features(km, 1, [], [], 5)[1] == "empty cluster"


@pytest.fixture(scope="module")
def explanations():
    cfg = RunConfig(family="htc", feature_set="C", k=2, htc_grace=30, lexicon_warmup_count=30,
                    lexicon_rebuild_every=10)
    events = [validate_event(r) for r in generate(300, seed=4)]
    engine = Engine(cfg, expected_size=len(events))
    out = []
    for ev in events:
        step = engine.predict(ev)
        expl = explain_step(engine, step)
        model = engine.bank.models[step.prediction.cluster]
        replayed = None
        if not expl.cold:
            # replay now, before learning changes the tree
            leaf = replay_path(model, expl.path)
            replayed = int(np.argmax(model.leaf_proba(leaf, step.x)))
        out.append((expl, step, replayed))
        engine.learn(step)
    return out


def test_first_event_is_cold(explanations):
    first = explanations[0][0]
    assert first.cold and first.marker == "insufficient history" and first.path == []


def test_paths_replay_to_reported_label(explanations):
    checked = 0
    for expl, step, replayed in explanations[100:]:
        if expl.cold:
            continue
        assert replayed == step.prediction.label
        checked += 1
    assert checked > 100


def test_structured_round_trip(explanations):
    for expl, _, _ in explanations[::25]:
        body = to_structured(expl)
        assert to_structured(parse_structured(body)) == body


def test_html_blocks_and_text_width(explanations):
    expl = explanations[-1][0]
    page = to_html(expl)
    for block in ("features", "prediction", "lexicon", "cluster"):
        assert f'<section id="{block}">' in page
    text = to_text(expl)
    assert all(len(line) <= 100 for line in text.splitlines())
    for title in ("[Selected features]", "[Prediction]", "[Lexicon elements]", "[Cluster characteristic features]"):
        assert title in text


def test_lexicon_blocks_disjoint_and_ordered(explanations):
    expl = explanations[-1][0]
    assert expl.fake_lexicon
    fake = {g for g, _ in expl.fake_lexicon}
    assert not fake & {g for g, _ in expl.nonfake_lexicon}
    for block in (expl.fake_lexicon, expl.nonfake_lexicon):
        freqs = [f for _, f in block]
        assert freqs == sorted(freqs, reverse=True)


def test_warning_flag(explanations):
    rows = [row for expl, _, _ in explanations for rs in expl.features.values() for row in rs]
    for row in rows:
        if row["warning"]:
            assert row["user_average"] is not None and row["value"] != row["user_average"]
    assert any(r["warning"] for r in rows) and any(not r["warning"] for r in rows)


def test_confidence_rendering(explanations):
    expl = explanations[-1][0]
    from fakestream.explain import label_text
    assert f"{label_text(expl.label)} with {expl.confidence:.0f}% confidence" in to_text(expl)


def test_emit_report_formats(tmp_path, explanations):
    expl = explanations[-1][0]
    for fmt in ("structured", "text", "html"):
        body = emit_report(expl, fmt, tmp_path / f"r.{fmt}")
        assert (tmp_path / f"r.{fmt}").read_text(encoding="utf-8") == body
    with pytest.raises(ValueError):
        emit_report(expl, "pdf")


def test_gnb_marker():
    cfg = RunConfig(family="gnb", feature_set="A", k=1)
    events = [validate_event(r) for r in generate(20, seed=1)]
    engine = Engine(cfg)
    for ev in events[:-1]:
        engine.process(ev)
    expl = explain_step(engine, engine.predict(events[-1]))
    assert expl.marker == "no decision tree" and expl.path == []

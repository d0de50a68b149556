from datetime import datetime, timezone

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fakestream.features import (
    CLUSTER_FEATURES, TRACKED, AssemblyError, DuplicateStore, Featurizer, FeatureSpace, NgramVectorizer,
    RunningStats, Standardizer, UserProfile, VarianceSelector, creator_features, duplicate_check,
    feature_dictionary, profile_class, trend_flag, update_profile, word_ngrams,
)
from fakestream.features.assemble import AVG_SUFFIX, BASE_FEATURES, LEXICON_FEATURES, TREND_SUFFIX, assemble
from fakestream.ingest import CreatorMeta, validate_event
from fakestream.lexicon import FrequencyLexicon

from conftest import make_record

UTC = timezone.utc


def test_profile_running_mean():
    p = UserProfile("u")
    update_profile(p, {"x": 4})
    assert p.mean("x") == 4 and p.means["x"][0] == 1
    update_profile(p, {"x": 2})
    assert p.mean("x") == 3


@settings(max_examples=30)
@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=300))
def test_profile_matches_batch_mean(xs):
    p = UserProfile("u")
    for x in xs:
        update_profile(p, {"x": x})
    assert p.mean("x") == pytest.approx(float(np.mean(xs)), rel=1e-9, abs=1e-6)


def test_running_mean_1000_values():
    xs = np.random.default_rng(3).normal(5, 2, 1000)
    p = UserProfile("u")
    for x in xs:
        update_profile(p, {"x": x})
    assert abs(p.mean("x") - xs.mean()) < 1e-9


def test_trend_flag():
    assert trend_flag(4, 3) is True
    assert trend_flag(2, 3) is False
    assert trend_flag(3, 3) is True
    assert trend_flag(1, None) is True


def test_creator_features():
    reg = datetime(2014, 8, 1, tzinfo=UTC)
    now = datetime(2014, 8, 11, tzinfo=UTC)
    c = CreatorMeta(follower_count=0, friend_count=5, registered_at=reg)
    f = creator_features(c, UserProfile("u"), now)
    assert f["registration_days"] == 10
    assert f["friends_followers_ratio"] == 0
    two_weeks = creator_features(c, UserProfile("u"), datetime(2014, 8, 15, tzinfo=UTC), n_posts=14)
    assert two_weeks["weekly_frequency"] == 7


def test_duplicates():
    store = DuplicateStore()
    assert duplicate_check("police confirm", store) is False
    assert duplicate_check("police confirm", store) is True


def test_duplicate_after_url_removal(resources):
    fz = Featurizer(resources, "A")
    a = fz.featurize(validate_event(make_record(tweet_id="1", text="Breaking news http://t.co/a")))
    fz.learn(a)
    b = fz.featurize(validate_event(make_record(tweet_id="2", text="Breaking news http://t.co/b")))
    assert a.vector["text_duplicated"] == 0 and b.vector["text_duplicated"] == 1


def test_word_ngrams():
    assert set(word_ngrams(("a", "b", "c"), (1, 3))) == {"a", "b", "c", "a b", "b c", "a b c"}


def test_vectorizer_df_pruning():
    v = NgramVectorizer((1, 1), max_df=0.7, min_df=0.01)
    for i in range(200):
        doc = ["common"] if i < 180 else []
        if i == 0:
            doc.append("rare")
        if i % 2 == 0:
            doc.append("half")
        v.update(doc)
    assert "rare" not in v.vocabulary       # 1/200 = 0.005
    assert "common" not in v.vocabulary     # 180/200 = 0.9
    assert "half" in v.vocabulary
    assert v.transform(["half", "half", "rare"]) == {"ngram=half": 2.0}


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.sampled_from("abcdef"), max_size=5), min_size=1, max_size=60),
       st.floats(0, 0.5), st.floats(0.5, 1))
def test_vectorizer_invariant(docs, min_df, max_df):
    v = NgramVectorizer((1, 2), max_df=max_df, min_df=min_df)
    for d in docs:
        v.update(d)
    for gram in v.df:
        df = sum(1 for d in docs if gram in set(word_ngrams(tuple(d), (1, 2))))
        assert v.df[gram] == df
        assert (gram in v.vocabulary) == (min_df <= df / len(docs) <= max_df)


def test_variance_selector():
    sel = VarianceSelector(0.0)
    assert sel.transform({"c": 1.0, "alt": 0.0}) == {"c": 1.0, "alt": 0.0}
    for i in range(100):
        sel.update({"c": 1.0, "alt": float(i % 2), "ngram=x": 1.0})
    kept = sel.transform({"c": 1.0, "alt": 1.0, "ngram=x": 1.0})
    assert "c" not in kept and "alt" in kept and "ngram=x" in kept
    assert sel.running.var("alt") == pytest.approx(0.25)


def test_standardizer():
    s = Standardizer()
    assert s.transform({"f": 7.0}) == {"f": 7.0}
    s.update({"f": 2.0, "k": 5.0})
    s.update({"f": 4.0, "k": 5.0})
    z = s.transform({"f": 4.0, "k": 9.0})
    assert z["f"] == pytest.approx(1.0) and z["k"] == 0.0


@settings(max_examples=30)
@given(st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=200))
def test_running_stats_batch(xs):
    rs = RunningStats()
    for x in xs:
        rs.update({"f": x})
    assert rs.mean("f") == pytest.approx(np.mean(xs), abs=1e-7)
    assert rs.var("f") == pytest.approx(np.var(xs), abs=1e-6, rel=1e-7)


def test_feature_space_append_only():
    sp = FeatureSpace()
    x1 = sp.to_array({"a": 1.0, "b": 2.0})
    x2 = sp.to_array({"c": 3.0, "a": 4.0})
    assert list(x1) == [1.0, 2.0] and list(x2) == [4.0, 0.0, 3.0]
    assert sp.names == ["a", "b", "c"]


def _item(resources, feature_set, **rec):
    fz = Featurizer(resources, feature_set)
    return fz, fz.featurize(validate_event(make_record(**rec)))


def test_feature_set_a_has_no_ngrams(resources):
    _, item = _item(resources, "A")
    assert not any(k.startswith("ngram=") for k in item.vector.values)
    assert not any(k.startswith("lexicon_") for k in item.vector.values)


def test_feature_set_c_prewarmup_lexicon_zero(resources):
    _, item = _item(resources, "C")
    assert all(item.vector[k] == 0 for k in LEXICON_FEATURES)


def test_two_companions_per_tracked(resources):
    _, item = _item(resources, "A")
    vals = item.vector.values
    assert len(TRACKED) == 22
    for name in TRACKED:
        assert name + AVG_SUFFIX in vals and name + TREND_SUFFIX in vals
    numeric_untracked = [n for _, n, _, d in BASE_FEATURES if d == "numerical" and n not in TRACKED]
    for name in numeric_untracked:
        assert name + AVG_SUFFIX not in vals


def test_companions_use_earlier_posts(resources):
    fz = Featurizer(resources, "A")
    a = fz.featurize(validate_event(make_record(tweet_id="1", text="one two three")))
    assert a.vector["word_count_user_avg"] == 3 and a.vector["word_count_trend"] == 1
    fz.learn(a)
    b = fz.featurize(validate_event(make_record(tweet_id="2", text="one", timestamp="2014-08-12T00:00:00Z")))
    assert b.vector["word_count_user_avg"] == 3 and b.vector["word_count_trend"] == 0


def test_timezone_one_hot(resources):
    _, item = _item(resources, "A", creator={"timezone": "Paris"})
    assert item.vector["timezone=Paris"] == 1.0


def test_assembly_errors(resources):
    _, item = _item(resources, "A")
    with pytest.raises(AssemblyError) as err:
        assemble(None, None, None, None, None, {}, {}, feature_set="A")
    assert err.value.part == "event"
    with pytest.raises(AssemblyError):
        assemble(1, 1, 1, 1, 1, {}, {}, feature_set="Z")


def test_cluster_features_fixed():
    assert not any(n.startswith("timezone") for n in CLUSTER_FEATURES)
    assert len(CLUSTER_FEATURES) == len(set(CLUSTER_FEATURES))


def test_profile_classes_and_dictionary():
    assert profile_class("follower_count_user_avg") == "creator"
    assert profile_class("timezone=London") == "creator"
    assert profile_class("retweet_count") == "context"
    assert profile_class("ngram=police") == "content"
    rows = feature_dictionary()
    assert {r["profile"] for r in rows} == {"creator", "content", "context"}


def test_featurize_reads_prior_state_only(resources):
    lex = FrequencyLexicon(warm_up_count=1, rebuild_every=1)
    fz = Featurizer(resources, "C", lexicon=lex, min_df=0.0)
    ev = validate_event(make_record(text="Shocking secret cover up revealed"))
    before = fz.featurize(ev)
    again = fz.featurize(ev)
    assert before.vector.values == again.vector.values
    fz.learn(before, "fake")
    assert fz.vectorizer.n_docs == 1 and lex.samples_seen == 1

"""Synthetic labeled tweet streams in the event schema (for tests, benchmarks and demos).

Fake posts lean on sensational vocabulary, capitals, exclamation marks and
hashtags and come more often from young, unverified accounts; non-fake
posts lean on attribution vocabulary.  The overlap is wide enough that no
single cue separates the classes.
"""
from __future__ import annotations

import json
from datetime import datetime, timedelta, timezone

import numpy as np

from .ingest import FAKE, NON_FAKE, format_time

START = datetime(2014, 8, 1, tzinfo=timezone.utc)

SHARED = ("police", "city", "people", "news", "video", "today", "report", "scene", "hostage",
          "gunman", "crash", "plane", "shooting", "cafe", "sydney", "paris", "ottawa", "ferguson",
          "crowd", "street", "minister", "president", "attack", "victims", "families", "world")
FAKE_WORDS = ("breaking", "shocking", "unbelievable", "secret", "hoax", "allegedly", "rumor",
              "exposed", "cover", "truth", "insane", "omg", "wow", "leaked", "hidden", "claim")
NON_WORDS = ("confirmed", "statement", "official", "according", "spokesperson", "update",
             "authorities", "released", "sources", "reported", "briefing", "investigation")
FAKE_PHRASES = ("you won't believe", "share before deleted", "they don't want you to know",
                "media is hiding", "wake up people")
NON_PHRASES = ("police have confirmed", "according to officials", "in a statement",
               "live updates here", "press conference at")
HASHTAGS = ("breaking", "JeSuisCharlie", "prayforsydney", "Ferguson", "hatecannotdriveouthate",
            "ottawashooting", "GermanWings", "truthmatters", "news")
TIMEZONES = ("Eastern Time (US & Canada)", "London", "Pacific Time (US & Canada)", "Paris",
             "Sydney", "Central Time (US & Canada)", "Amsterdam", "none")


def make_text(rng, fake, signal=0.55):
    """One post; ``signal`` is the chance each content word comes from the class pool."""
    n = int(rng.integers(5, 16))
    own, other = (FAKE_WORDS, NON_WORDS) if fake else (NON_WORDS, FAKE_WORDS)
    words = []
    for _ in range(n):
        u = rng.random()
        if u < signal * 0.5:
            words.append(own[int(rng.integers(len(own)))])
        elif u < signal * 0.5 + (1 - signal) * 0.3:
            words.append(other[int(rng.integers(len(other)))])
        else:
            words.append(SHARED[int(rng.integers(len(SHARED)))])
    if rng.random() < 0.5:
        phrases = FAKE_PHRASES if (fake == (rng.random() < 0.8)) else NON_PHRASES
        pos = int(rng.integers(0, len(words) + 1))
        words[pos:pos] = phrases[int(rng.integers(len(phrases)))].split()
    if rng.random() < (0.25 if fake else 0.1):
        i = int(rng.integers(len(words)))
        words[i] = words[i].upper()
    text = " ".join(words)
    text = text[0].upper() + text[1:]
    text += "!!" if rng.random() < (0.35 if fake else 0.1) else "."
    if rng.random() < (0.5 if fake else 0.3):
        text += " #" + HASHTAGS[int(rng.integers(len(HASHTAGS)))]
    if rng.random() < (0.3 if fake else 0.6):
        text += f" http://t.co/{int(rng.integers(1e6)):06d}"
    return text


def make_users(rng, n_users, fake_share):
    users = []
    for i in range(n_users):
        leaning = rng.random() < fake_share
        age_days = float(rng.uniform(5, 400) if leaning else rng.uniform(200, 2500))
        users.append({
            "user_id": f"u{i:05d}",
            "leaning_fake": leaning,
            "registered_offset_days": age_days,
            "has_description": bool(rng.random() < (0.6 if leaning else 0.9)),
            "has_profile_image": bool(rng.random() < 0.9),
            "protected": False,
            "verified": bool(rng.random() < (0.02 if leaning else 0.25)),
            "timezone": TIMEZONES[int(rng.integers(len(TIMEZONES)))],
            "follower_count": int(rng.lognormal(5 if leaning else 7, 1.5)),
            "friend_count": int(rng.lognormal(6, 1.0)),
            "user_favourite_count": int(rng.lognormal(5, 1.5)),
        })
    return users


def generate(n=1000, fake_fraction=0.374, n_users=None, seed=0, signal=0.55, n_fake=None):
    """Return a list of raw event records (dicts) in chronological order.

    ``n_fake`` fixes the exact number of fake posts (otherwise it is
    ``round(fake_fraction * n)``).  Every user posts at least once when
    ``n_users <= n``.
    """
    rng = np.random.default_rng(seed)
    if n_users is None:
        n_users = max(1, n // 2)
    n_fake = int(round(fake_fraction * n)) if n_fake is None else int(n_fake)
    labels = np.array([1] * n_fake + [0] * (n - n_fake))
    rng.shuffle(labels)
    users = make_users(rng, n_users, n_fake / max(n, 1))
    fake_users = [u for u in users if u["leaning_fake"]] or users
    non_users = [u for u in users if not u["leaning_fake"]] or users
    # the first n_users posts cover every account once, matched to leaning where possible
    order = list(range(n_users)) if n_users <= n else []
    records = []
    t = START
    for i in range(n):
        fake = bool(labels[i])
        if i < len(order):
            user = users[order[i]]
        else:
            pool = fake_users if (fake == (rng.random() < 0.65)) else non_users
            user = pool[int(rng.integers(len(pool)))]
        t = t + timedelta(seconds=int(rng.integers(1, 600)))
        reg = START - timedelta(days=user["registered_offset_days"])
        rts = int(rng.poisson(22 if fake else 12))
        depth = int(min(rng.poisson(1.5 if fake else 1.0), 6)) if rts else 0
        records.append({
            "tweet_id": f"t{i:06d}",
            "user_id": user["user_id"],
            "timestamp": format_time(t),
            "text": make_text(rng, fake, signal),
            "label": FAKE if fake else NON_FAKE,
            "creator": {
                "has_description": user["has_description"],
                "has_profile_image": user["has_profile_image"],
                "protected": user["protected"],
                "verified": user["verified"],
                "timezone": user["timezone"],
                "follower_count": user["follower_count"],
                "friend_count": user["friend_count"],
                "user_favourite_count": user["user_favourite_count"],
                "registered_at": format_time(reg),
            },
            "context": {
                "retweeted": False,
                "favourited": False,
                "distribution_depth": depth,
                "first_level_retweets": int(min(rts, rng.poisson(3))) if depth else 0,
                "retweet_count": rts,
                "favourite_count": int(rng.poisson(20 if fake else 15)),
                "image_urls": ["http://pbs.twimg.com/media/x.jpg"] if rng.random() < 0.2 else [],
                "video_urls": [],
                "link_urls": [],
            },
        })
    return records


def write_jsonl(records, path):
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def separable_stream(n=5000, n_features=3, seed=0, flip_at=None):
    """(X, y) with y = [x0 > 0.5], labels inverted from ``flip_at`` onwards."""
    rng = np.random.default_rng(seed)
    X = rng.random((n, n_features))
    y = (X[:, 0] > 0.5).astype(int)
    if flip_at is not None:
        y[flip_at:] = 1 - y[flip_at:]
    return X, y

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .selection import LEXICON_PREFIX, is_textual
from .vectorizer import NGRAM_PREFIX

FEATURE_SETS = ("A", "B", "C")
TIMEZONE_PREFIX = "timezone="
AVG_SUFFIX = "_user_avg"
TREND_SUFFIX = "_trend"

# (row, name, profile, dtype); emotion occupies one row with five dimensions
BASE_FEATURES = (
    (1, "has_description", "creator", "boolean"),
    (2, "has_profile_image", "creator", "boolean"),
    (3, "protected", "creator", "boolean"),
    (4, "verified", "creator", "boolean"),
    (5, "timezone", "creator", "categorical"),
    (6, "follower_count", "creator", "numerical"),
    (7, "friend_count", "creator", "numerical"),
    (8, "friends_followers_ratio", "creator", "numerical"),
    (9, "user_favourite_count", "creator", "numerical"),
    (10, "registration_days", "creator", "numerical"),
    (11, "weekly_frequency", "creator", "numerical"),
    (12, "text_duplicated", "content", "boolean"),
    (13, "adjective_count", "content", "numerical"),
    (14, "auxiliary_count", "content", "numerical"),
    (15, "bad_word_count", "content", "numerical"),
    (16, "char_count", "content", "numerical"),
    (17, "determiner_count", "content", "numerical"),
    (18, "difficult_word_count", "content", "numerical"),
    (19, "anger", "content", "numerical"),
    (19, "fear", "content", "numerical"),
    (19, "happiness", "content", "numerical"),
    (19, "sadness", "content", "numerical"),
    (19, "surprise", "content", "numerical"),
    (20, "flesch_reading_ease", "content", "numerical"),
    (21, "hashtag_count", "content", "numerical"),
    (22, "image_count", "content", "numerical"),
    (23, "link_count", "content", "numerical"),
    (24, "link_repeated_count", "content", "numerical"),
    (25, "mcalpine_eflaw", "content", "numerical"),
    (26, "noun_count", "content", "numerical"),
    (27, "polarity", "content", "numerical"),
    (28, "pronoun_count", "content", "numerical"),
    (29, "punctuation_count", "content", "numerical"),
    (30, "reading_time", "content", "numerical"),
    (31, "uppercase_word_count", "content", "numerical"),
    (32, "video_count", "content", "numerical"),
    (33, "word_count", "content", "numerical"),
    (35, "retweeted", "context", "boolean"),
    (36, "favourited", "context", "boolean"),
    (37, "distribution_depth", "context", "numerical"),
    (38, "first_level_retweets", "context", "numerical"),
    (39, "retweet_count", "context", "numerical"),
    (40, "favourite_count", "context", "numerical"),
)

# rows that get a per-user average and a trend flag
TRACKED_ROWS = frozenset([6, 7, 8, 9, 13, 14, 15, 16, 17, 18, 21, 22, 23, 24, 26, 28, 29, 31, 32, 33, 39, 40])
TRACKED = tuple(name for row, name, _, _ in BASE_FEATURES if row in TRACKED_ROWS)
PROFILE_OF = {name: prof for _, name, prof, _ in BASE_FEATURES}
ROW_OF = {name: row for row, name, _, _ in BASE_FEATURES}
NGRAM_ROW = 34
LEXICON_FEATURES = (LEXICON_PREFIX + "fake_hits", LEXICON_PREFIX + "nonfake_hits")

# fixed-dimension block used for clustering (one-hot timezone excluded)
CLUSTER_FEATURES = tuple(
    [name for _, name, _, dtype in BASE_FEATURES if dtype != "categorical"]
    + [n + suffix for n in TRACKED for suffix in (AVG_SUFFIX, TREND_SUFFIX)]
)


class AssemblyError(ValueError):
    def __init__(self, part, message=None):
        super().__init__(message or f"missing feature part: {part}")
        self.part = part


def base_name(name: str) -> str:
    """Base feature a (possibly derived) dimension belongs to."""
    if name.startswith(TIMEZONE_PREFIX):
        return "timezone"
    if name.endswith(AVG_SUFFIX):
        return name[: -len(AVG_SUFFIX)]
    if name.endswith(TREND_SUFFIX):
        return name[: -len(TREND_SUFFIX)]
    return name


def profile_class(name: str) -> str:
    if is_textual(name):
        return "content"
    return PROFILE_OF.get(base_name(name), "content")


def feature_dictionary():
    """One record per declared feature dimension family."""
    rows = []
    for row, name, prof, dtype in BASE_FEATURES:
        shown = TIMEZONE_PREFIX + "<category>" if dtype == "categorical" else name
        rows.append({"id": row, "name": shown, "profile": prof, "dtype": dtype, "sets": "ABC"})
        if name in TRACKED:
            rows.append({"id": row, "name": name + AVG_SUFFIX, "profile": prof, "dtype": "numerical", "sets": "ABC"})
            rows.append({"id": row, "name": name + TREND_SUFFIX, "profile": prof, "dtype": "boolean", "sets": "ABC"})
    rows.append({"id": NGRAM_ROW, "name": NGRAM_PREFIX + "<n-gram>", "profile": "content", "dtype": "textual", "sets": "BC"})
    for name in LEXICON_FEATURES:
        rows.append({"id": None, "name": name, "profile": "content", "dtype": "numerical", "sets": "C"})
    return rows


def export_feature_dictionary(path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(feature_dictionary(), fh, indent=2, sort_keys=True)
        fh.write("\n")


@dataclass
class FeatureVector:
    values: dict
    feature_set: str = "A"

    def names(self):
        return list(self.values)

    def base(self):
        return {k: v for k, v in self.values.items() if not is_textual(k)}

    def __getitem__(self, name):
        return self.values.get(name, 0.0)

    def __len__(self):
        return len(self.values)


@dataclass
class FeatureSpace:
    """Append-only registry mapping feature names to column indices."""
    index: dict = field(default_factory=dict)
    names: list = field(default_factory=list)

    def add(self, name):
        i = self.index.get(name)
        if i is None:
            i = len(self.names)
            self.index[name] = i
            self.names.append(name)
        return i

    def __len__(self):
        return len(self.names)

    def to_array(self, values) -> np.ndarray:
        for name in values:
            self.add(name)
        x = np.zeros(len(self.names))
        for name, v in values.items():
            x[self.index[name]] = v
        return x


def user_companions(profile, current) -> dict:
    """Average (strictly earlier posts) and trend flag for every tracked feature."""
    out = {}
    for name in TRACKED:
        x = current[name]
        prior = profile.mean(name) if profile is not None else None
        out[name + AVG_SUFFIX] = x if prior is None else prior
        out[name + TREND_SUFFIX] = 1.0 if (prior is None or x >= prior) else 0.0
    return out


def content_values(style, readability, affect, duplicated) -> dict:
    return {
        "text_duplicated": float(bool(duplicated)),
        "adjective_count": float(style.adjective),
        "auxiliary_count": float(style.auxiliary),
        "bad_word_count": float(style.bad_word),
        "char_count": float(style.char),
        "determiner_count": float(style.determiner),
        "difficult_word_count": float(style.difficult_word),
        "anger": affect.anger,
        "fear": affect.fear,
        "happiness": affect.happiness,
        "sadness": affect.sadness,
        "surprise": affect.surprise,
        "flesch_reading_ease": readability.flesch_reading_ease,
        "hashtag_count": float(style.hashtag),
        "image_count": float(style.image),
        "link_count": float(style.link),
        "link_repeated_count": float(style.link_repeated),
        "mcalpine_eflaw": readability.mcalpine_eflaw,
        "noun_count": float(style.noun),
        "polarity": affect.polarity,
        "pronoun_count": float(style.pronoun),
        "punctuation_count": float(style.punctuation),
        "reading_time": readability.reading_time_s,
        "uppercase_word_count": float(style.uppercase_word),
        "video_count": float(style.video),
        "word_count": float(style.word),
    }


def assemble(event, processed, style, readability, affect, creator_part, context_part,
             ngram_part=None, lexicon_part=None, feature_set="A", duplicated=None,
             companions=None) -> FeatureVector:
    """Build the ordered feature vector for ``feature_set``.

    ``creator_part`` carries the raw timezone category under ``"timezone"``;
    it becomes a one-hot ``timezone=<category>`` dimension.  ``companions``
    maps each tracked feature to its user average and trend flag (see
    ``user_companions``); pass a profile-free dict for a first post.
    """
    if feature_set not in FEATURE_SETS:
        raise AssemblyError("feature_set", f"unknown feature set {feature_set!r}")
    parts = {
        "event": event, "processed": processed, "style": style, "readability": readability,
        "affect": affect, "creator": creator_part, "context": context_part,
        "duplicated": duplicated, "companions": companions,
    }
    if feature_set in ("B", "C"):
        parts["ngrams"] = ngram_part
    if feature_set == "C":
        parts["lexicon"] = lexicon_part
    for part, value in parts.items():
        if value is None:
            raise AssemblyError(part)

    flat = dict(creator_part)
    flat.update(content_values(style, readability, affect, duplicated))
    flat.update(context_part)
    values = {}
    for _, name, _, dtype in BASE_FEATURES:
        if name not in flat:
            raise AssemblyError(PROFILE_OF[name], f"missing feature {name!r} in {PROFILE_OF[name]} part")
        if dtype == "categorical":
            values[TIMEZONE_PREFIX + str(flat[name])] = 1.0
        else:
            values[name] = float(flat[name])
    for name in TRACKED:
        for suffix in (AVG_SUFFIX, TREND_SUFFIX):
            key = name + suffix
            if key not in companions:
                raise AssemblyError("companions", f"missing companion {key!r}")
            values[key] = float(companions[key])
    if feature_set in ("B", "C"):
        values.update(ngram_part)
    if feature_set == "C":
        fake_hits, nonfake_hits = lexicon_part
        values[LEXICON_FEATURES[0]] = float(fake_hits)
        values[LEXICON_FEATURES[1]] = float(nonfake_hits)
    return FeatureVector(values=values, feature_set=feature_set)

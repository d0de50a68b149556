from __future__ import annotations

from dataclasses import dataclass

from ..lexicon import FrequencyLexicon
from ..textproc import affect_scores, normalize_and_tokenize, readability, style_counts
from .assemble import TRACKED, FeatureVector, assemble, content_values, user_companions
from .duplicates import DuplicateStore
from .profile import UserProfile, context_features, creator_features, update_profile
from .vectorizer import NgramVectorizer

OTHER = "other"


class CategoryEncoder:
    """Growing category set with a hard cap; overflow maps to ``other``."""

    def __init__(self, cap=64):
        self.cap = cap
        self.seen = {}

    def encode(self, cat):
        cat = str(cat)
        if cat in self.seen:
            return cat
        if len(self.seen) < self.cap:
            self.seen[cat] = len(self.seen)
            return cat
        return OTHER


@dataclass
class Featurized:
    event: object
    processed: object
    vector: FeatureVector
    tracked: dict


class Featurizer:
    """Stateful feature pipeline.  ``featurize`` reads prior state only; ``learn`` updates it."""

    def __init__(self, resources, feature_set="C", ngram_range=(1, 3), max_df=0.7, min_df=0.01,
                 lexicon=None, timezone_cap=64, ms_per_char=14.69):
        self.resources = resources
        self.feature_set = feature_set
        self.profiles = {}
        self.duplicates = DuplicateStore()
        self.vectorizer = NgramVectorizer(ngram_range, max_df, min_df)
        self.lexicon = lexicon if lexicon is not None else FrequencyLexicon()
        self.timezones = CategoryEncoder(timezone_cap)
        self.ms_per_char = ms_per_char

    def process(self, text):
        r = self.resources
        return normalize_and_tokenize(text, r.stopwords, r.lemmas, r.corpus)

    def featurize(self, event) -> Featurized:
        r = self.resources
        processed = self.process(event.text)
        profile = self.profiles.get(event.user_id)
        if profile is None:
            profile = UserProfile(event.user_id)
        style = style_counts(event.text, processed, event.context, r.bad_words, r.easy_words, r.pos_tags)
        read = readability(event.text, self.ms_per_char)
        affect = affect_scores(processed, r.polarity, r.emotion)
        creator = creator_features(event.creator, profile, event.timestamp)
        creator["timezone"] = self.timezones.encode(creator["timezone"])
        context = context_features(event.context)
        dup = self.duplicates.seen(processed.normalized)

        ngrams = lex = None
        if self.feature_set in ("B", "C"):
            ngrams = self.vectorizer.transform(processed.lemmas)
        if self.feature_set == "C":
            lex = self.lexicon.features(processed.lemmas)
        flat = {**creator, **content_values(style, read, affect, dup), **context}
        tracked = {name: float(flat[name]) for name in TRACKED}
        companions = user_companions(self.profiles.get(event.user_id), tracked)
        vec = assemble(event, processed, style, read, affect, creator, context, ngrams, lex,
                       self.feature_set, duplicated=dup, companions=companions)
        return Featurized(event, processed, vec, tracked)

    def learn(self, item: Featurized, label=None):
        ev = item.event
        profile = self.profiles.get(ev.user_id)
        if profile is None:
            profile = self.profiles[ev.user_id] = UserProfile(ev.user_id)
        update_profile(profile, item.tracked, now=ev.timestamp, registered_at=ev.creator.registered_at)
        self.duplicates.add(item.processed.normalized)
        if self.feature_set in ("B", "C"):
            self.vectorizer.update(item.processed.lemmas)
        if self.feature_set == "C" and label is not None:
            self.lexicon.update(item.processed.lemmas, label)
            self.lexicon.maybe_rebuild()

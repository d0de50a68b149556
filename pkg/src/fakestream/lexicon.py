"""Per-class n-gram frequency store and the disjoint fake / non-fake lexica."""
from __future__ import annotations

import math
from collections import Counter

from .features.vectorizer import word_ngrams
from .ingest import FAKE, NON_FAKE


class FrequencyLexicon:
    def __init__(self, ngram_range=(2, 4), num_elements=700, threshold=1,
                 warm_up_fraction=0.05, expected_size=None, warm_up_count=300,
                 rebuild_every=100):
        self.ngram_range = tuple(ngram_range)
        self.num_elements = num_elements
        self.threshold = threshold
        self.warm_up_fraction = warm_up_fraction
        self.expected_size = expected_size
        self.warm_up_count = warm_up_count
        self.rebuild_every = max(int(rebuild_every), 1)
        self.freq = {FAKE: Counter(), NON_FAKE: Counter()}
        self.samples_seen = 0
        self.fake = ()
        self.non_fake = ()
        self._built_at = None

    @property
    def warm_up_size(self):
        if self.expected_size:
            return math.ceil(self.warm_up_fraction * self.expected_size)
        return self.warm_up_count

    @property
    def ready(self):
        return self.samples_seen >= self.warm_up_size

    def ngrams(self, tokens):
        return word_ngrams(tuple(tokens), self.ngram_range)

    def update(self, tokens, label):
        if label not in self.freq:
            raise ValueError(f"unknown label {label!r}")
        self.freq[label].update(self.ngrams(tokens))
        self.samples_seen += 1

    def build(self):
        """Return (fake, non_fake) as tuples of (ngram, frequency), frequency-ordered.

        Before the warm-up boundary both are empty.
        """
        if not self.ready:
            return (), ()
        fake_f, non_f = self.freq[FAKE], self.freq[NON_FAKE]
        fake_c = {g: f for g, f in fake_f.items() if f > self.threshold}
        non_c = {g: f for g, f in non_f.items() if f > self.threshold}
        # an n-gram qualifying for both goes to the more frequent class; ties to neither
        for g in set(fake_c) & set(non_c):
            if fake_c[g] > non_c[g]:
                del non_c[g]
            elif non_c[g] > fake_c[g]:
                del fake_c[g]
            else:
                del fake_c[g], non_c[g]

        def rank(cands):
            return tuple(sorted(cands.items(), key=lambda kv: (-kv[1], kv[0]))[: self.num_elements])

        return rank(fake_c), rank(non_c)

    def maybe_rebuild(self, force=False):
        if not self.ready:
            return False
        if force or self._built_at is None or self.samples_seen - self._built_at >= self.rebuild_every:
            self.fake, self.non_fake = self.build()
            self._built_at = self.samples_seen
            return True
        return False

    def features(self, tokens):
        return lexicon_features(self.ngrams(tokens), self.fake, self.non_fake)

    def export(self):
        rows = [(g, FAKE, f) for g, f in self.fake] + [(g, NON_FAKE, f) for g, f in self.non_fake]
        return rows


def lexicon_update(lex: FrequencyLexicon, tokens, label):
    lex.update(tokens, label)
    return lex


def build_class_lexica(lex: FrequencyLexicon):
    return lex.build()


def lexicon_features(ngrams, fake_lexicon, nonfake_lexicon):
    """(fake_hits, nonfake_hits): occurrences of ``ngrams`` in each lexicon."""
    fake = {g for g, _ in fake_lexicon}
    non = {g for g, _ in nonfake_lexicon}
    return sum(1 for g in ngrams if g in fake), sum(1 for g in ngrams if g in non)

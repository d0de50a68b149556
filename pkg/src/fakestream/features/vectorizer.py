from __future__ import annotations

from collections import Counter

NGRAM_PREFIX = "ngram="


def word_ngrams(tokens, ngram_range):
    lo, hi = ngram_range
    out = []
    n_tok = len(tokens)
    for n in range(lo, hi + 1):
        for i in range(n_tok - n + 1):
            out.append(" ".join(tokens[i:i + n]))
    return out


class NgramVectorizer:
    """Incremental bag of word n-grams with document-frequency pruning.

    The active vocabulary is every seen n-gram whose document fraction lies in
    ``[min_df, max_df]`` (both inclusive).  It is evaluated lazily, so the
    pruning rule holds exactly after every update without rescanning the store.
    """

    def __init__(self, ngram_range=(1, 3), max_df=0.7, min_df=0.01):
        if not 0.0 <= min_df <= max_df <= 1.0:
            raise ValueError("need 0 <= min_df <= max_df <= 1")
        self.ngram_range = tuple(ngram_range)
        self.max_df = max_df
        self.min_df = min_df
        self.n_docs = 0
        self.df = Counter()

    def is_active(self, gram):
        if self.n_docs == 0:
            return False
        frac = self.df.get(gram, 0) / self.n_docs
        return frac > 0 and self.min_df <= frac <= self.max_df

    @property
    def vocabulary(self):
        return sorted(g for g in self.df if self.is_active(g))

    def update(self, tokens):
        self.n_docs += 1
        self.df.update(set(word_ngrams(tokens, self.ngram_range)))

    def transform(self, tokens):
        counts = Counter(g for g in word_ngrams(tokens, self.ngram_range) if self.is_active(g))
        return {NGRAM_PREFIX + g: float(c) for g, c in sorted(counts.items())}


def vectorize_ngrams(tokens, state: NgramVectorizer, mode="transform"):
    if mode == "update+transform":
        state.update(tokens)
    elif mode != "transform":
        raise ValueError(f"unknown mode {mode!r}")
    return state.transform(tokens)

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

from .basic import HASHTAG_RE, count_sentences, count_syllables, strip_urls, surface_words
from .hashtags import split_hashtag

_NON_ALNUM = re.compile(r"[^0-9a-z]+")


@dataclass(frozen=True)
class ProcessedText:
    tokens: tuple = ()
    lemmas: tuple = ()
    hashtags_expanded: tuple = ()
    sentence_count: int = 0
    syllable_total: int = 0

    @property
    def normalized(self) -> str:
        return " ".join(self.lemmas)


def _fold(text: str) -> str:
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch)).casefold()


def normalize_and_tokenize(text: str, stopwords, lemma_table, corpus=None) -> ProcessedText:
    """Clean a post and return stopword-free tokens and their lemmas.

    URLs go first, then hashtags are expanded into words when a corpus is
    given, then accents and every non-alphanumeric character are stripped
    and the text is case-folded.  Lemmas come from ``lemma_table`` with the
    token itself as fallback.
    """
    if not text:
        return ProcessedText()
    body = strip_urls(text)
    expanded = []
    if corpus is not None:
        def _expand(m):
            split = split_hashtag(m.group(1), corpus)
            expanded.append(split.words)
            return " " + " ".join(split.words) + " "
        body = HASHTAG_RE.sub(_expand, body)

    tokens = tuple(t for t in _NON_ALNUM.split(_fold(body)) if t and t not in stopwords)
    lemmas = tuple(lemma_table.get(t, t) for t in tokens)
    words = surface_words(text)
    return ProcessedText(
        tokens=tokens,
        lemmas=lemmas,
        hashtags_expanded=tuple(expanded),
        sentence_count=max(count_sentences(text), 1) if text.strip() else 0,
        syllable_total=sum(count_syllables(w) for w in words),
    )

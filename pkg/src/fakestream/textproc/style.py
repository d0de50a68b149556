from __future__ import annotations

import string
from dataclasses import asdict, dataclass

from .basic import HASHTAG_RE, count_syllables, find_urls, strip_urls, surface_words

_PUNCT = frozenset(string.punctuation) | frozenset("“”‘’…–—¡¿«»")

# suffix fallbacks for words missing from the tag lexicon
_ADJ_SUFFIXES = ("ous", "ful", "ive", "able", "ible", "less", "ish", "ical", "ary")
_NOUN_SUFFIXES = ("tion", "sion", "ment", "ness", "ity", "ism", "ship", "ance", "ence", "hood", "dom")


@dataclass(frozen=True)
class StyleCounts:
    adjective: int = 0
    auxiliary: int = 0
    bad_word: int = 0
    determiner: int = 0
    difficult_word: int = 0
    hashtag: int = 0
    link: int = 0
    link_repeated: int = 0
    noun: int = 0
    pronoun: int = 0
    punctuation: int = 0
    uppercase_word: int = 0
    word: int = 0
    char: int = 0
    image: int = 0
    video: int = 0

    def as_dict(self):
        return asdict(self)


def guess_tag(word: str, pos_lexicon) -> str | None:
    tag = pos_lexicon.get(word)
    if tag is not None:
        return tag
    if word.endswith(_ADJ_SUFFIXES):
        return "ADJ"
    if word.endswith(_NOUN_SUFFIXES):
        return "NOUN"
    return None


def style_counts(text, processed, context, bad_words, easy_words, pos_lexicon) -> StyleCounts:
    """Physical style counters of one post.

    Character, punctuation, uppercase, hashtag and link counters read the raw
    text.  Word, part-of-speech, bad-word and difficult-word counters read the
    surface words (before stopword removal, otherwise determiners, pronouns
    and auxiliaries would always count zero).  ``processed`` is accepted for
    interface symmetry with the other primitives.
    """
    text = text or ""
    links = find_urls(text)
    body = strip_urls(text)
    words = surface_words(text)
    tags = {"ADJ": 0, "AUX": 0, "DET": 0, "NOUN": 0, "PRON": 0}
    bad = difficult = upper = 0
    for w in words:
        lw = w.lower()
        tag = guess_tag(lw, pos_lexicon)
        if tag in tags:
            tags[tag] += 1
        if lw in bad_words:
            bad += 1
        if lw.isalpha() and lw not in easy_words and count_syllables(lw) >= 2:
            difficult += 1
        if len(w) >= 2 and w.isupper():
            upper += 1
    images = len(context.image_urls) if context is not None else 0
    videos = len(context.video_urls) if context is not None else 0
    return StyleCounts(
        adjective=tags["ADJ"],
        auxiliary=tags["AUX"],
        bad_word=bad,
        determiner=tags["DET"],
        difficult_word=difficult,
        hashtag=len(HASHTAG_RE.findall(body)),
        link=len(links),
        link_repeated=len(links) - len(set(links)),
        noun=tags["NOUN"],
        pronoun=tags["PRON"],
        punctuation=sum(1 for ch in body if ch in _PUNCT),
        uppercase_word=upper,
        word=len(words),
        char=sum(1 for ch in text if not ch.isspace()),
        image=images,
        video=videos,
    )

"""Hashtag decomposition into dictionary words."""
from __future__ import annotations

import re
from typing import NamedTuple

_TITLE_RE = re.compile(r"(?:[A-Z][a-z]+|[0-9]+)+")
_TITLE_PART_RE = re.compile(r"[A-Z][a-z]+|[0-9]+")
MAX_WORD_LEN = 32


class HashtagSplit(NamedTuple):
    words: tuple
    resolved: bool


def is_title_format(tag: str) -> bool:
    return bool(_TITLE_RE.fullmatch(tag)) and any(ch.isupper() for ch in tag)


def min_split_segmentation(text: str, corpus) -> tuple | None:
    """Fewest-word segmentation of ``text`` into corpus words, or None.

    Among segmentations with the same word count the one whose leading words
    are longest wins (compared left to right), which makes the result unique.
    """
    n = len(text)
    best: list = [None] * (n + 1)
    best[n] = ()
    for i in range(n - 1, -1, -1):
        chosen = None
        for j in range(min(n, i + MAX_WORD_LEN), i, -1):
            rest = best[j]
            if rest is None:
                continue
            word = text[i:j]
            if word in corpus and (chosen is None or len(rest) + 1 < len(chosen)):
                chosen = (word,) + rest
        best[i] = chosen
    return best[0]


def split_hashtag(tag: str, corpus) -> HashtagSplit:
    tag = tag.lstrip("#")
    if not tag:
        return HashtagSplit((), False)
    if is_title_format(tag):
        return HashtagSplit(tuple(_TITLE_PART_RE.findall(tag)), True)
    seg = min_split_segmentation(tag.lower(), corpus)
    if seg is None:
        return HashtagSplit((tag,), False)
    return HashtagSplit(seg, True)

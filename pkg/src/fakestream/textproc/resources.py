"""Word-list resources shared by the text primitives.

Every list is a plain-text file, one entry per line; files that attach a
value to a word are tab-separated.  The shipped defaults live in
``fakestream/data`` and any of them can be swapped through the run config.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources as _ir
from pathlib import Path

EMOTIONS = ("anger", "fear", "happiness", "sadness", "surprise")
_EMOTION_ALIASES = {"joy": "happiness", "happy": "happiness"}

DEFAULT_FILES = {
    "stopwords": "stopwords.txt",
    "lemmas": "lemmas.tsv",
    "corpus": "english_words.txt",
    "bad_words": "bad_words.txt",
    "easy_words": "easy_words.txt",
    "pos_tags": "pos_tags.tsv",
    "polarity": "polarity.tsv",
    "emotion": "emotion.tsv",
}


def data_path(name: str) -> Path:
    return Path(str(_ir.files("fakestream") / "data" / name))


def _lines(path):
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line and not line.startswith("#"):
                yield line


def load_word_set(path) -> frozenset:
    return frozenset(line.strip().lower() for line in _lines(path))


def load_word_map(path, cast=str) -> dict:
    out = {}
    for line in _lines(path):
        word, _, value = line.partition("\t")
        if not value:
            raise ValueError(f"{path}: expected word<TAB>value, got {line!r}")
        out[word.strip().lower()] = cast(value.strip())
    return out


def load_emotions(path) -> dict:
    """word -> frozenset of emotions; NRC-style joy is folded into happiness."""
    acc = {}
    for line in _lines(path):
        word, _, emo = line.partition("\t")
        emo = emo.strip().lower()
        emo = _EMOTION_ALIASES.get(emo, emo)
        if emo in EMOTIONS:
            acc.setdefault(word.strip().lower(), set()).add(emo)
    return {w: frozenset(e) for w, e in acc.items()}


@dataclass(frozen=True)
class TextResources:
    stopwords: frozenset = frozenset()
    lemmas: dict = field(default_factory=dict)
    corpus: frozenset = frozenset()
    bad_words: frozenset = frozenset()
    easy_words: frozenset = frozenset()
    pos_tags: dict = field(default_factory=dict)
    polarity: dict = field(default_factory=dict)
    emotion: dict = field(default_factory=dict)


@lru_cache(maxsize=8)
def _load(paths: tuple) -> TextResources:
    p = dict(paths)
    return TextResources(
        stopwords=load_word_set(p["stopwords"]),
        lemmas=load_word_map(p["lemmas"]),
        corpus=load_word_set(p["corpus"]),
        bad_words=load_word_set(p["bad_words"]),
        easy_words=load_word_set(p["easy_words"]),
        pos_tags={w: t.upper() for w, t in load_word_map(p["pos_tags"]).items()},
        polarity=load_word_map(p["polarity"], float),
        emotion=load_emotions(p["emotion"]),
    )


def load_resources(**overrides) -> TextResources:
    """Load all word lists; keyword arguments replace individual file paths."""
    unknown = set(overrides) - set(DEFAULT_FILES)
    if unknown:
        raise KeyError(f"unknown resource(s): {sorted(unknown)}")
    paths = {}
    for key, name in DEFAULT_FILES.items():
        value = overrides.get(key)
        paths[key] = str(value) if value else str(data_path(name))
    return _load(tuple(sorted(paths.items())))

from __future__ import annotations

from dataclasses import dataclass

from .resources import EMOTIONS


@dataclass(frozen=True)
class AffectScores:
    polarity: float = 0.0
    anger: float = 0.0
    fear: float = 0.0
    happiness: float = 0.0
    sadness: float = 0.0
    surprise: float = 0.0


def _lookup(table, token, lemma):
    hit = table.get(token)
    if hit is None and lemma != token:
        hit = table.get(lemma)
    return hit


def affect_scores(processed, polarity_lexicon, emotion_lexicon) -> AffectScores:
    """Lexicon polarity (mean over matched tokens) and per-emotion token fractions."""
    tokens = processed.tokens
    if not tokens:
        return AffectScores()
    values = []
    counts = dict.fromkeys(EMOTIONS, 0)
    for tok, lem in zip(tokens, processed.lemmas):
        v = _lookup(polarity_lexicon, tok, lem)
        if v is not None:
            values.append(v)
        for emo in _lookup(emotion_lexicon, tok, lem) or ():
            counts[emo] += 1
    polarity = sum(values) / len(values) if values else 0.0
    n = len(tokens)
    return AffectScores(
        polarity=min(max(polarity, -1.0), 1.0),
        **{e: min(max(counts[e] / n, 0.0), 1.0) for e in EMOTIONS},
    )

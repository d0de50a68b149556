from __future__ import annotations

from dataclasses import dataclass

from .basic import count_sentences, count_syllables, strip_urls, surface_words

# (lower bound, label), checked top-down on the score clamped to [0, 100]
FLESCH_BANDS = (
    (90.0, "Very Easy"),
    (80.0, "Easy"),
    (70.0, "Fairly Easy"),
    (60.0, "Standard"),
    (50.0, "Fairly Difficult"),
    (30.0, "Difficult"),
    (float("-inf"), "Very Confusing"),
)
MS_PER_CHAR = 14.69


@dataclass(frozen=True)
class ReadabilityScores:
    flesch_reading_ease: float = 0.0
    flesch_band: str = "Very Confusing"
    mcalpine_eflaw: float = 0.0
    reading_time_s: float = 0.0
    degenerate: bool = False


def flesch_band(score: float) -> str:
    clamped = min(max(score, 0.0), 100.0)
    for lower, label in FLESCH_BANDS:
        if clamped >= lower:
            return label
    return FLESCH_BANDS[-1][1]


def readability(text: str, ms_per_char: float = MS_PER_CHAR) -> ReadabilityScores:
    """Flesch reading ease, McAlpine EFLAW and estimated reading time.

    Reading time follows the textstat convention: ``ms_per_char``
    milliseconds per non-whitespace character.
    """
    words = surface_words(text or "")
    sentences = count_sentences(text or "")
    if not words or not sentences:
        return ReadabilityScores(degenerate=True)
    n_words = len(words)
    syllables = sum(count_syllables(w) for w in words)
    flesch = 206.835 - 1.015 * (n_words / sentences) - 84.6 * (syllables / n_words)
    mini = sum(1 for w in words if len(w) <= 3)
    eflaw = (n_words + mini) / sentences
    chars = sum(1 for ch in strip_urls(text) if not ch.isspace())
    return ReadabilityScores(
        flesch_reading_ease=flesch,
        flesch_band=flesch_band(flesch),
        mcalpine_eflaw=eflaw,
        reading_time_s=chars * ms_per_char / 1000.0,
    )

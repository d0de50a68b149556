"""Low-level text helpers shared by the textproc modules."""
import re

URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
HASHTAG_RE = re.compile(r"(?<![\w#])#(\w+)")
WORD_RE = re.compile(r"[A-Za-z0-9]+(?:['’][A-Za-z]+)*")
SENTENCE_SPLIT_RE = re.compile(r"[.!?]+")
_VOWEL_GROUPS = re.compile(r"[aeiouy]+")
_CONSONANT = set("bcdfghjklmnpqrstvwxz")


def strip_urls(text: str) -> str:
    return URL_RE.sub(" ", text)


def find_urls(text: str) -> list:
    return URL_RE.findall(text)


def surface_words(text: str) -> list:
    """Words as written (case kept), URLs excluded, '#'/'@' markers dropped."""
    return WORD_RE.findall(strip_urls(text))


def count_sentences(text: str) -> int:
    text = strip_urls(text)
    return sum(1 for chunk in SENTENCE_SPLIT_RE.split(text) if WORD_RE.search(chunk))


def count_syllables(word: str) -> int:
    """Vowel-group syllable heuristic with a silent trailing 'e' rule (min 1)."""
    w = "".join(ch for ch in word.lower() if ch.isalpha())
    if not w:
        return 1 if word else 0
    groups = _VOWEL_GROUPS.findall(w)
    n = len(groups)
    if n > 1 and w.endswith("e") and groups[-1] == "e":
        consonant_le = w.endswith("le") and len(w) > 2 and w[-3] in _CONSONANT
        if not consonant_le:
            n -= 1
    return max(n, 1)

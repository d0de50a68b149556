"""Pure text-analysis primitives over immutable word lists."""
from .affect import AffectScores, affect_scores
from .basic import count_syllables
from .hashtags import HashtagSplit, split_hashtag
from .normalize import ProcessedText, normalize_and_tokenize
from .readability import ReadabilityScores, flesch_band, readability
from .resources import EMOTIONS, TextResources, load_resources
from .style import StyleCounts, style_counts

__all__ = [
    "AffectScores", "affect_scores", "count_syllables", "HashtagSplit", "split_hashtag",
    "ProcessedText", "normalize_and_tokenize", "ReadabilityScores", "flesch_band",
    "readability", "EMOTIONS", "TextResources", "load_resources", "StyleCounts",
    "style_counts",
]

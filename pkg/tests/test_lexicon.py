from collections import Counter

from hypothesis import given, settings
from hypothesis import strategies as st

from fakestream.features import word_ngrams
from fakestream.ingest import FAKE, NON_FAKE
from fakestream.lexicon import FrequencyLexicon, lexicon_features


def test_counting():
    lex = FrequencyLexicon()
    lex.update(["breaking", "news"], FAKE)
    lex.update(["breaking", "news"], FAKE)
    assert lex.freq[FAKE]["breaking news"] == 2


def test_empty_tokens_only_count_sample():
    lex = FrequencyLexicon()
    lex.update([], NON_FAKE)
    assert lex.samples_seen == 1 and not lex.freq[FAKE] and not lex.freq[NON_FAKE]


def test_defaults():
    lex = FrequencyLexicon()
    assert (lex.ngram_range, lex.num_elements, lex.threshold) == ((2, 4), 700, 1)


def _ready_lexicon():
    lex = FrequencyLexicon(warm_up_count=0)
    for _ in range(5):
        lex.update(["a", "b"], FAKE)
    for _ in range(2):
        lex.update(["a", "b"], NON_FAKE)
    for _ in range(3):
        lex.update(["c", "d"], FAKE)
        lex.update(["c", "d"], NON_FAKE)
    return lex


def test_higher_frequency_wins_and_ties_drop():
    fake, non = _ready_lexicon().build()
    assert ("a b", 5) in fake and "a b" not in dict(non)
    assert "c d" not in dict(fake) and "c d" not in dict(non)


def test_warm_up_fraction():
    lex = FrequencyLexicon(expected_size=500)
    assert lex.warm_up_size == 25
    for i in range(24):
        lex.update(["x", "y"], FAKE)
    assert lex.build() == ((), ())
    lex.update(["x", "y"], FAKE)
    assert lex.build()[0] == (("x y", 25),)


def test_rebuild_cadence():
    lex = FrequencyLexicon(warm_up_count=2, rebuild_every=3)
    lex.update(["x", "y"], FAKE)
    assert lex.maybe_rebuild() is False
    lex.update(["x", "y"], FAKE)
    assert lex.maybe_rebuild() is True and lex.fake == (("x y", 2),)
    lex.update(["x", "y"], FAKE)
    assert lex.maybe_rebuild() is False and lex.fake == (("x y", 2),)
    assert lex.maybe_rebuild(force=True) and lex.fake == (("x y", 3),)


def test_hit_counts():
    fake = (("a b", 3), ("b c", 2))
    assert lexicon_features(["a b", "b c", "x y"], fake, ()) == (2, 0)
    assert lexicon_features(["a b"], (), ()) == (0, 0)
    assert lexicon_features(["q r"], fake, (("z z", 2),)) == (0, 0)


_DOC = st.lists(st.sampled_from("abcd"), max_size=6)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(_DOC, st.booleans()), max_size=60), st.integers(1, 5))
def test_lexica_invariants(stream, size):
    lex = FrequencyLexicon(num_elements=size, warm_up_count=0)
    brute = {FAKE: Counter(), NON_FAKE: Counter()}
    for tokens, fake in stream:
        label = FAKE if fake else NON_FAKE
        lex.update(tokens, label)
        brute[label].update(word_ngrams(tuple(tokens), (2, 4)))
    assert lex.freq == brute
    fake, non = lex.build()
    assert not {g for g, _ in fake} & {g for g, _ in non}
    for lexicon, own, other in ((fake, FAKE, NON_FAKE), (non, NON_FAKE, FAKE)):
        assert len(lexicon) <= size
        assert [f for _, f in lexicon] == sorted((f for _, f in lexicon), reverse=True)
        for g, f in lexicon:
            assert f == brute[own][g] > 1 and f > brute[other][g]

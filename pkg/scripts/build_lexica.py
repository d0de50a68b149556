"""Regenerate the shipped word lists under src/fakestream/data/.

The generated files come from openly licensed package data.  Download the
wheels once and point this script at the directory holding them::

    pip download --no-deps textblob english-words textstat spacy-lookups-data -d /tmp/wheels
    python scripts/build_lexica.py /tmp/wheels

stopwords.txt, bad_words.txt and emotion.tsv are maintained by hand and are
not touched here.
"""
import argparse
import gzip
import json
import pickle
import re
import xml.etree.ElementTree as ET
import zipfile
from collections import defaultdict
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "fakestream" / "data"

PENN_TO_POS = {
    "JJ": "ADJ", "JJR": "ADJ", "JJS": "ADJ",
    "NN": "NOUN", "NNS": "NOUN", "NNP": "NOUN", "NNPS": "NOUN",
    "PRP": "PRON", "PRP$": "PRON", "WP": "PRON", "WP$": "PRON",
    "DT": "DET", "PDT": "DET", "WDT": "DET",
    "MD": "AUX",
}
AUXILIARIES = (
    "am is are was were be been being have has had having do does did "
    "will would shall should can could may might must ought 's 're 've 'd 'll"
).split()

ALPHA = re.compile(r"^[a-z]+$")


def _wheel(wheels: Path, prefix: str) -> zipfile.ZipFile:
    matches = sorted(wheels.glob(prefix + "*.whl"))
    if not matches:
        raise SystemExit(f"no wheel matching {prefix}* in {wheels}")
    return zipfile.ZipFile(matches[-1])


def build_corpus(wheels):
    with _wheel(wheels, "english_words") as zf:
        words = pickle.loads(zf.read("english_words/data/web2_alpha_lower.pickle"))
    # single letters other than "a"/"i" make every string segmentable
    words = {w for w in words if len(w) > 1 or w in ("a", "i")}
    # the word list has headwords only; add inflected forms whose lemma it contains
    with _wheel(wheels, "spacy_lookups_data") as zf:
        table = json.loads(gzip.decompress(zf.read("spacy_lookups_data/data/en_lemma_lookup.json.gz")))
    for word, lemma in table.items():
        word, lemma = word.lower(), lemma.lower()
        if len(word) > 1 and ALPHA.match(word) and lemma in words:
            words.add(word)
    return sorted(words)


def build_lemmas(wheels):
    with _wheel(wheels, "spacy_lookups_data") as zf:
        table = json.loads(gzip.decompress(zf.read("spacy_lookups_data/data/en_lemma_lookup.json.gz")))
    rows = []
    for word, lemma in table.items():
        word, lemma = word.lower(), lemma.lower()
        if word != lemma and ALPHA.match(word) and ALPHA.match(lemma):
            rows.append((word, lemma))
    return sorted(set(rows))


def build_pos(wheels):
    with _wheel(wheels, "textblob") as zf:
        raw = zf.read("textblob/en/en-lexicon.txt").decode("utf-8")
    tags = {}
    for line in raw.splitlines():
        if not line or line.startswith(";;;"):
            continue
        parts = line.split()
        word, tag = parts[0], parts[1]
        if word != word.lower() or not ALPHA.match(word):
            continue
        pos = PENN_TO_POS.get(tag)
        if pos and word not in tags:
            tags[word] = pos
    for word in AUXILIARIES:
        if ALPHA.match(word):
            tags[word] = "AUX"
    return sorted(tags.items())


def build_polarity(wheels):
    with _wheel(wheels, "textblob") as zf:
        root = ET.fromstring(zf.read("textblob/en/en-sentiment.xml"))
    acc = defaultdict(list)
    for node in root.iter("word"):
        form = node.get("form", "").lower()
        if ALPHA.match(form):
            acc[form].append(float(node.get("polarity", "0")))
    rows = []
    for form, values in acc.items():
        value = sum(values) / len(values)
        if value != 0.0:
            rows.append((form, round(value, 4)))
    return sorted(rows)


def build_easy_words(wheels):
    with _wheel(wheels, "textstat") as zf:
        raw = zf.read("textstat/resources/en/easy_words.txt").decode("utf-8")
    return sorted({w.strip().lower() for w in raw.splitlines() if w.strip()})


def _write(name, rows):
    path = DATA / name
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            if isinstance(row, tuple):
                fh.write("\t".join(str(v) for v in row) + "\n")
            else:
                fh.write(row + "\n")
    print(f"{path.name}: {len(rows)} entries")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("wheels", type=Path)
    args = parser.parse_args()
    _write("english_words.txt", build_corpus(args.wheels))
    _write("lemmas.tsv", build_lemmas(args.wheels))
    _write("pos_tags.tsv", build_pos(args.wheels))
    _write("polarity.tsv", build_polarity(args.wheels))
    _write("easy_words.txt", build_easy_words(args.wheels))


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Regenerates the bundled resource files under core/resources/.

Inputs are the upstream distributions of the lexicons:
  --brill    textblob/en/en-lexicon.txt   (Brill tagger lexicon, MIT)
  --vader    vaderSentiment/vader_lexicon.txt (MIT)
  --afinn    afinn/data/AFINN-en-165.txt  (ODbL)
  --easy     textstat/resources/en/easy_words.txt (MIT)
"""
import argparse
import os
import re

PENN_TO_COARSE = {
    "NN": "NOUN", "NNS": "NOUN", "NNP": "NOUN", "NNPS": "NOUN",
    "VB": "VERB", "VBD": "VERB", "VBG": "VERB", "VBN": "VERB", "VBP": "VERB", "VBZ": "VERB",
    "MD": "AUX",
    "JJ": "ADJ", "JJR": "ADJ", "JJS": "ADJ",
    "RB": "ADV", "RBR": "ADV", "RBS": "ADV", "WRB": "ADV",
    "PRP": "PRON", "PRP$": "PRON", "WP": "PRON", "WP$": "PRON", "EX": "PRON",
    "DT": "DET", "PDT": "DET", "WDT": "DET",
    "IN": "ADP", "CC": "CONJ", "CD": "NUM",
    "RP": "PART", "TO": "PART", "POS": "PART",
}

WORD = re.compile(r"^[a-z]+(?:['-][a-z]+)*$")


def make_pos(brill, out):
    entries = {}
    for line in open(brill, encoding="utf-8"):
        if line.startswith(";;;"):
            continue
        parts = line.split()
        if len(parts) < 2:
            continue
        word, tag = parts[0], parts[1].split("|")[0]
        if not WORD.match(word) or tag not in PENN_TO_COARSE:
            continue
        entries.setdefault(word, PENN_TO_COARSE[tag])

    # Nouns whose inflected verb forms are attested also get a VERB reading.
    def verbal(stem):
        for form in (stem + "ed", stem + "d", stem + "ing", stem[:-1] + "ing" if stem.endswith("e") else None):
            if form and entries.get(form) == "VERB":
                return True
        return False

    lines = []
    for word in sorted(entries):
        tags = [entries[word]]
        if tags[0] == "NOUN":
            stem = word[:-1] if word.endswith("s") and not word.endswith("ss") else word
            if verbal(stem):
                tags.append("VERB")
        lines.append(word + "\t" + " ".join(tags))
    with open(out, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")


def make_vader(src, out):
    rows = []
    for line in open(src, encoding="utf-8"):
        parts = line.rstrip("\n").split("\t")
        if len(parts) < 2:
            continue
        token = parts[0].strip().lower()
        if not WORD.match(token):
            continue
        rows.append((token, float(parts[1])))
    seen = set()
    with open(out, "w", encoding="utf-8") as f:
        for token, v in sorted(rows):
            if token in seen:
                continue
            seen.add(token)
            f.write("%s\t%s\n" % (token, repr(v)))


def make_afinn(src, out):
    seen = set()
    rows = []
    for line in open(src, encoding="utf-8"):
        parts = line.rstrip("\n").split("\t")
        token = parts[0].strip().lower()
        if not WORD.match(token) or token in seen:
            continue
        seen.add(token)
        rows.append((token, int(parts[1]) / 5.0))
    with open(out, "w", encoding="utf-8") as f:
        for token, v in sorted(rows):
            f.write("%s\t%s\n" % (token, repr(v)))


def make_easy(src, out):
    words = sorted({w.strip().lower() for w in open(src, encoding="utf-8") if w.strip()})
    with open(out, "w", encoding="utf-8") as f:
        f.write("\n".join(words) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--brill", required=True)
    ap.add_argument("--vader", required=True)
    ap.add_argument("--afinn", required=True)
    ap.add_argument("--easy", required=True)
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "..", "core", "resources"))
    a = ap.parse_args()
    make_pos(a.brill, os.path.join(a.out, "pos_lexicon.tsv"))
    make_vader(a.vader, os.path.join(a.out, "vader_lexicon.tsv"))
    make_afinn(a.afinn, os.path.join(a.out, "syuzhet_lexicon.tsv"))
    make_easy(a.easy, os.path.join(a.out, "easy_words.txt"))


if __name__ == "__main__":
    main()

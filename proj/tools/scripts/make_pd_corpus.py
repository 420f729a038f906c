#!/usr/bin/env python3
"""Builds the small public-domain corpus used by the end-to-end tests.

  --plays   directory with the shakespeare *_gut.txt files (python package
            'shakespeare', Project Gutenberg texts)
  --alice   alice.txt from the wordcloud examples (Project Gutenberg #11)
  --out     tests/data/pd_corpus

Category and rating labels are made up: they only have to give every task
enough members on both sides.
"""
import argparse
import csv
import os
import re

LIMIT = 80_000

# id, title, year
PLAYS = [
    ("hamlet", "Hamlet", 1600),
    ("macbeth", "Macbeth", 1606),
    ("lear", "King Lear", 1606),
    ("othello", "Othello", 1604),
    ("tempest", "The Tempest", 1611),
    ("romeo_and_juliet", "Romeo and Juliet", 1595),
    ("julius_caesar", "Julius Caesar", 1599),
    ("twelfth_night", "Twelfth Night", 1601),
    ("midsummer_nights_dream", "A Midsummer Night's Dream", 1595),
    ("much_ado_about_nothing", "Much Ado About Nothing", 1598),
    ("as_you_like_it", "As You Like It", 1599),
    ("merchant_of_venice", "The Merchant of Venice", 1596),
    ("winters_tale", "The Winter's Tale", 1610),
    ("antony_and_cleopatra", "Antony and Cleopatra", 1606),
    ("coriolanus", "Coriolanus", 1608),
    ("richard_iii", "Richard III", 1592),
    ("richard_ii", "Richard II", 1595),
    ("henry_v", "Henry V", 1599),
    ("henry_iv_part_1", "Henry IV, Part 1", 1597),
    ("measure_for_measure", "Measure for Measure", 1603),
    ("taming_of_the_shrew", "The Taming of the Shrew", 1591),
    ("comedy_of_errors", "The Comedy of Errors", 1594),
    ("cymbeline", "Cymbeline", 1609),
    ("pericles", "Pericles", 1608),
    ("timon_of_athens", "Timon of Athens", 1605),
    ("troilus_and_cressida", "Troilus and Cressida", 1602),
    ("two_gentlemen_of_verona", "The Two Gentlemen of Verona", 1590),
    ("loves_labours_lost", "Love's Labour's Lost", 1597),
    ("merry_wives_of_windsor", "The Merry Wives of Windsor", 1600),
]

# index ranges over the 30 documents (29 plays, then alice)
CANON = set(range(0, 11))
NOBEL = set(range(6, 17))
PRIZE = set(range(12, 23))
BESTSELLER = set(range(18, 26)) | {0, 1, 2}
HIGH = {0, 1, 3, 4, 6, 8, 10, 13, 15, 17, 19, 21, 24, 26, 27}
UNRATED = {5}


def truncate(text):
    if len(text) <= LIMIT:
        return text
    cut = text.rfind("\n", 0, LIMIT)
    return text[:cut + 1]


def strip_gutenberg(text):
    start = re.search(r"^\*\*\* ?START OF.*$", text, re.M)
    end = re.search(r"^\*\*\* ?END OF.*$", text, re.M)
    if start:
        text = text[start.end():end.start() if end else len(text)]
    return text.lstrip("﻿").strip() + "\n"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--plays", required=True)
    ap.add_argument("--alice", required=True)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    docs = []
    for pid, title, year in PLAYS:
        with open(os.path.join(args.plays, pid + "_gut.txt"), encoding="utf-8-sig") as f:
            docs.append((pid, title, "William Shakespeare", year, f.read()))
    with open(args.alice, encoding="utf-8-sig") as f:
        docs.append(("alice", "Alice's Adventures in Wonderland", "Lewis Carroll", 1865, f.read()))

    rows = []
    for i, (pid, title, author, year, text) in enumerate(docs):
        text = truncate(strip_gutenberg(text.replace("\r\n", "\n")))
        with open(os.path.join(args.out, pid + ".txt"), "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        if i in UNRATED:
            rating = ""
        elif i in HIGH:
            rating = "%.2f" % (3.85 + 0.03 * (i % 10))
        else:
            rating = "%.2f" % (3.75 - 0.04 * (i % 10))
        rows.append([pid, title, author, year, int(i in CANON), int(i in NOBEL),
                     int(i in PRIZE), int(i in BESTSELLER), rating])

    with open(os.path.join(args.out, "metadata.csv"), "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["id", "title", "author", "year", "canon", "nobel", "prize", "bestseller", "avg_rating"])
        w.writerows(rows)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Regenerates data/lexicon.tsv from WordNet 3.x dictionary files.

Usage: build_lexicon.py <wordnet-dict-dir> <out.tsv> [--entries N]

Keeps the N most frequent (by tagged sense count) single-word lemmas that
have at least one single-word synonym among their two most common senses.
Output format: word TAB comma-separated synonyms, sorted by word.
"""
import argparse
import os
import re

WORD = re.compile(r"^[a-z][a-z-]{2,}$")
POS = {"noun": "n", "verb": "v", "adj": "a", "adv": "r"}
MAX_SYNONYMS = 8


def read_index(path):
    entries = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith(" ") or not line.strip():
                continue
            parts = line.split()
            lemma, synset_cnt, p_cnt = parts[0], int(parts[2]), int(parts[3])
            rest = parts[4 + p_cnt:]
            offsets = rest[2:2 + synset_cnt]
            entries.append((lemma, offsets))
    return entries


def read_synsets(path):
    # Keyed by offset field; byte offsets are unreliable with CRLF files.
    synsets = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith(" ") or not line.strip():
                continue
            parts = line.split()
            count = int(parts[3], 16)
            words = []
            for i in range(count):
                w = parts[4 + 2 * i].lower()
                words.append(re.sub(r"\(.*\)$", "", w))
            synsets[parts[0]] = words
    return synsets


def read_counts(path):
    counts = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            key, _, tagged = line.split()
            lemma = key.split("%")[0]
            counts[lemma] = counts.get(lemma, 0) + int(tagged)
    return counts


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("dict_dir")
    ap.add_argument("out")
    ap.add_argument("--entries", type=int, default=2000)
    args = ap.parse_args()

    freq = read_counts(os.path.join(args.dict_dir, "cntlist.rev"))
    synonyms = {}
    for pos in POS:
        index = os.path.join(args.dict_dir, "index." + pos)
        synsets = read_synsets(os.path.join(args.dict_dir, "data." + pos))
        for lemma, offsets in read_index(index):
            if not WORD.match(lemma):
                continue
            syns = synonyms.setdefault(lemma, [])
            for off in offsets[:2]:
                for w in synsets[off]:
                    if w != lemma and WORD.match(w) and w not in syns:
                        syns.append(w)

    ranked = sorted((w for w in synonyms if synonyms[w]), key=lambda w: (-freq.get(w, 0), w))
    chosen = sorted(ranked[: args.entries])
    with open(args.out, "w", encoding="utf-8") as out:
        for w in chosen:
            out.write(w + "\t" + ",".join(synonyms[w][:MAX_SYNONYMS]) + "\n")


if __name__ == "__main__":
    main()

"""Regenerate src/infodemic/assets/lexicon_en.tsv.

Inputs are the Brill lexicon and the word-frequency list distributed with the
Pattern toolkit (BSD licence, University of Antwerp); both live under
``pattern3/text/en/`` in the ``pattern3`` sdist:

    pip download pattern3 --no-deps --no-binary :all:
    tar xzf pattern3-*.tar.gz
    python tools/build_lexicon.py pattern3-3.0.0/pattern3/text/en

Each word keeps its first (most frequent) Brill tag. The most frequent
``--size`` word forms that carry a Penn word tag are written in frequency order.
"""

import argparse
from pathlib import Path

PENN_WORD_TAGS = set(
    "CC CD DT EX FW IN JJ JJR JJS LS MD NN NNS NNP NNPS PDT POS PRP PRP$ RB RBR RBS "
    "RP SYM TO UH VB VBD VBG VBN VBP VBZ WDT WP WP$ WRB".split()
)
VERSION = "brill-pattern-5000-v1"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("source_dir", type=Path)
    ap.add_argument("--size", type=int, default=5000)
    ap.add_argument("--out", type=Path, default=Path("src/infodemic/assets/lexicon_en.tsv"))
    args = ap.parse_args()

    brill = {}
    for line in (args.source_dir / "en-lexicon.txt").read_text("utf-8").splitlines():
        if line.startswith(";;;") or not line.strip():
            continue
        parts = line.split()
        if len(parts) >= 2:
            brill.setdefault(parts[0], parts[1])

    chosen = []
    seen = set()
    for line in (args.source_dir / "en-frequency.txt").read_text("utf-8").splitlines():
        parts = line.split()
        if not parts:
            continue
        word = parts[0]
        tag = brill.get(word)
        if tag not in PENN_WORD_TAGS or word in seen:
            continue
        if not any(ch.isalpha() for ch in word):
            continue
        seen.add(word)
        chosen.append((word, tag))
        if len(chosen) >= args.size:
            break

    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(f"# version: {VERSION}\n")
        fh.write("# source: Brill tagger lexicon via the Pattern toolkit (BSD licence)\n")
        for word, tag in chosen:
            fh.write(f"{word}\t{tag}\n")
    print(f"wrote {len(chosen)} entries to {args.out}")


if __name__ == "__main__":
    main()

"""Write the Porter stemmer reference vectors used by the test suite.

Runs NLTK's implementation in MARTIN_EXTENSIONS mode (the behaviour of
Martin Porter's own C/Python releases). NLTK is only needed here, not by
the package.

    python3 tools/make_porter_vectors.py > tests/data/porter_vectors.tsv
"""

import sys

from nltk.stem.porter import PorterStemmer

WORDS = """
caresses ponies ties caress cats feed agreed disabled matting mating meeting
milling messing meetings happy sky relational conditional rational valenci
hesitanci digitizer conformabli radicalli differentli vileli analogousli
vietnamization predication operator feudalism decisiveness hopefulness
callousness formaliti sensitiviti sensibiliti triplicate formative formalize
electriciti electrical hopeful goodness revival allowance inference airliner
gyroscopic adjustable defensible irritant replacement adjustment dependent
adoption homologou communism activate angulariti homologous effective bowdlerize
probate rate cease controll roll generalizations quarantine
quarantined lockdown vaccinated vaccines infections transmission ministries
hospitals recovered announcing authorities sanitizer distancing spreading
misinformation rumours outbreak clusters restrictions reopening economical
news fakes a sing skies dying lying bli logi
""".split()


def main() -> int:
    stemmer = PorterStemmer(mode=PorterStemmer.MARTIN_EXTENSIONS)
    if len(WORDS) != 100 or len(set(WORDS)) != 100:
        print(f"expected 100 distinct words, got {len(WORDS)}/{len(set(WORDS))}", file=sys.stderr)
        return 1
    print("# version: porter-vectors-v1")
    print("# word<TAB>stem, from nltk PorterStemmer(mode=MARTIN_EXTENSIONS)")
    for w in WORDS:
        print(f"{w}\t{stemmer.stem(w)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from infodemic.corpus import load_corpus
from infodemic.features import featurize_corpus
from infodemic.synthetic import generate_corpus

DATA = Path(__file__).parent / "data"

settings.register_profile("default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def read_tsv(path):
    """Non-comment, non-blank lines of a tab-separated fixture, split into fields."""
    rows = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line and not line.startswith("#"):
            rows.append(line.split("\t"))
    return rows


@pytest.fixture(scope="session")
def mini_corpus():
    return load_corpus(DATA / "mini_corpus.csv")


@pytest.fixture(scope="session")
def mini_oracle():
    return {row[0]: [float(Fraction(v)) for v in row[1:]] for row in read_tsv(DATA / "mini_corpus_oracle.tsv")}


@pytest.fixture(scope="session")
def small_synthetic():
    corpus = generate_corpus(60, "high", seed=11)
    return corpus, featurize_corpus(corpus)


# (criterion, passed, detail) tuples filled in by test_acceptance.py
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")

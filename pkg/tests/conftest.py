from pathlib import Path

import pytest

from crossdomain_sarcasm.corpus import Domain, Instance, Label, load_dataset, split_dataset
from crossdomain_sarcasm.lexicons import (
    LexiconSet,
    load_indicators,
    load_polarity,
    load_scored,
    load_subjectivity,
    load_wordlist,
)
from crossdomain_sarcasm.ngram_store import build_store
from crossdomain_sarcasm.pipeline import Resources

DATA = Path(__file__).resolve().parents[1] / "src" / "crossdomain_sarcasm" / "data"

S, N = Label.SARCASTIC, Label.NON_SARCASTIC


def inst(i, text, label=S, domain=Domain.TWITTER, star=None):
    return Instance(f"x{i}", text, Domain(domain), Label(label), star)


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def resources():
    lex = LexiconSet(
        load_polarity(DATA / "liu_positive.txt", DATA / "liu_negative.txt"),
        load_subjectivity(DATA / "subjectivity.tsv"),
        load_scored(DATA / "afinn.tsv"),
        load_indicators(DATA / "indicators"),
    )
    return Resources(lex, build_store(DATA / "ngram_corpus.txt", 3), load_wordlist(DATA / "stopwords.txt"))


@pytest.fixture(scope="session")
def twitter():
    return split_dataset(load_dataset(DATA / "twitter.jsonl"), 0.8, 0)


@pytest.fixture(scope="session")
def amazon():
    return split_dataset(load_dataset(DATA / "amazon.jsonl"), 0.8, 0)

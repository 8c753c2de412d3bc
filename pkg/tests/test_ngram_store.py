import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crossdomain_sarcasm.errors import NegativeCountError
from crossdomain_sarcasm.ngram_store import (
    NgramStore,
    PmiQuery,
    build_store,
    build_store_from_texts,
    load_counts,
    pmi,
    save_counts,
)

from oracles import brute_pmi, windows


def test_build_store_sliding_windows():
    s = build_store_from_texts(["a b a b"], 2)
    assert (s.count("a"), s.count("b"), s.count("a", "b"), s.count("b", "a"), s.total(2)) == (2, 2, 2, 1, 3)


def test_empty_and_single_token(tmp_path):
    (tmp_path / "c.txt").write_text("")
    s = build_store(tmp_path / "c.txt", 2)
    assert s.total(1) == 0 and s.total(2) == 0
    assert pmi(s, PmiQuery("a", ("b",))) is None
    assert build_store_from_texts(["solo"], 2).total(2) == 0


@pytest.mark.parametrize("max_n", [1, 6])
def test_build_store_max_n(max_n):
    with pytest.raises(ValueError):
        build_store_from_texts(["a b"], max_n)


def _independent_store():
    return NgramStore.from_counts({
        ("good", "movie"): 2, ("good", "film"): 2,
        ("bad", "movie"): 3, ("bad", "film"): 3,
    })


def test_pmi_independence_is_zero():
    s = _independent_store()
    assert s.prefix_totals[("good", 1)] == 4 and s.suffix_totals[("movie",)] == 5 and s.total(2) == 10
    assert pmi(s, PmiQuery("good", ("movie",))) == 0.0


def test_pmi_ln2():
    s = NgramStore.from_counts({("good", "movie"): 4, ("bad", "movie"): 1, ("bad", "film"): 5})
    assert pmi(s, PmiQuery("good", ("movie",))) == pytest.approx(math.log(2), abs=1e-15)


def test_pmi_zero_joint_is_missing():
    s = _independent_store()
    assert pmi(s, PmiQuery("good", ("show",))) is None
    assert pmi(s, PmiQuery("great", ("movie",))) is None


def test_pmi_wildcard_sums_matching_tails():
    texts = ["love @a so", "love @b so", "hate @c so", "love it so"]
    s = build_store_from_texts(texts, 3)
    tokens = [t.split() for t in texts]
    got = pmi(s, PmiQuery("love", ("@", "so"), {0}))
    assert got == pytest.approx(brute_pmi(tokens, "love", ("@", "so"), {0}), abs=1e-12)


def test_query_validation():
    with pytest.raises(ValueError):
        PmiQuery("a", ())
    with pytest.raises(ValueError):
        PmiQuery("a", ("b",) * 5)
    with pytest.raises(ValueError):
        PmiQuery("a", ("b",), {1})


def test_pmi_monotone_in_joint():
    base = {("w", "x"): 1, ("w", "y"): 5, ("v", "x"): 5, ("v", "y"): 1}
    prev = None
    for extra in range(0, 4):
        counts = dict(base)
        counts[("w", "x")] += extra
        counts[("w", "y")] -= extra
        counts[("v", "x")] -= extra
        counts[("v", "y")] += extra
        s = NgramStore.from_counts(counts)
        assert s.prefix_totals[("w", 1)] == 6 and s.suffix_totals[("x",)] == 6
        val = pmi(s, PmiQuery("w", ("x",)))
        assert prev is None or val > prev
        prev = val


def test_load_counts_sums_and_marginals(tmp_path):
    path = tmp_path / "c.tsv"
    path.write_text("good movie\t2\ngood film\t2\ngood movie\t1\n")
    s = load_counts(path)
    assert s.count("good", "movie") == 3
    assert s.prefix_totals[("good", 1)] == 5
    assert s.count("good") == 5


def test_load_counts_negative(tmp_path):
    path = tmp_path / "c.tsv"
    path.write_text("good movie\t-1\n")
    with pytest.raises(NegativeCountError):
        load_counts(path)


def test_save_load_round_trip(tmp_path):
    s = build_store_from_texts(["the cat sat on the mat", "the dog sat"], 3)
    save_counts(s, tmp_path / "c.tsv")
    back = load_counts(tmp_path / "c.tsv")
    assert back.counts == s.counts and back.totals == s.totals


corpora = st.lists(st.lists(st.sampled_from("abcd"), min_size=0, max_size=12), min_size=1, max_size=6)


@settings(max_examples=60, deadline=None)
@given(corpora)
def test_marginals_match_recount(token_lists):
    s = build_store_from_texts([" ".join(t) for t in token_lists], 3)
    for size in (1, 2, 3):
        assert s.total(size) == sum(1 for _ in windows(token_lists, size))
    for (w, n), c in s.prefix_totals.items():
        assert c == sum(1 for win in windows(token_lists, n + 1) if win[0] == w)
        assert c == sum(v for g, v in s.counts.items() if len(g) == n + 1 and g[0] == w)
    for tail, c in s.suffix_totals.items():
        assert c == sum(v for g, v in s.counts.items() if g[1:] == tail)


@settings(max_examples=60, deadline=None)
@given(corpora, st.sampled_from("abcd"), st.lists(st.sampled_from("abcd"), min_size=1, max_size=2))
def test_pmi_matches_oracle(token_lists, head, tail):
    s = build_store_from_texts([" ".join(t) for t in token_lists], 3)
    got = pmi(s, PmiQuery(head, tuple(tail)))
    want = brute_pmi(token_lists, head, tuple(tail))
    assert (got is None) == (want is None)
    if got is not None:
        assert got == pytest.approx(want, abs=1e-12)


def test_independence_construction_exactly_zero():
    rng = random.Random(0)
    for _ in range(20):
        heads = {h: rng.randint(1, 9) for h in "xyz"}
        tails = {t: rng.randint(1, 9) for t in "pq"}
        counts = {(h, t): a * b for h, a in heads.items() for t, b in tails.items()}
        s = NgramStore.from_counts(counts)
        for h in heads:
            for t in tails:
                assert pmi(s, PmiQuery(h, (t,))) == 0.0

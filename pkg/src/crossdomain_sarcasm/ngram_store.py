"""In-memory n-gram counts (n = 1..5) with PMI between a unigram and the n-gram after it.

For a head word ``w`` and a following n-gram ``W``::

    pmi(w, W) = log( p(w, W) / (p(w, *) * p(*, W)) )

where every probability is a count over the (n+1)-grams of the store divided
by N, the total count of (n+1)-grams. Counts are integers, so the ratio is
formed in exact integer arithmetic before the single float division.
"""
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from .errors import NegativeCountError, ParseError
from .text import ngram_token, tokenize

MAX_N = 5


@dataclass(frozen=True)
class PmiQuery:
    head: str
    tail: tuple
    wildcard_positions: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "tail", tuple(self.tail))
        object.__setattr__(self, "wildcard_positions", frozenset(self.wildcard_positions))
        if not 1 <= len(self.tail) <= MAX_N - 1:
            raise ValueError(f"tail length must be in 1..{MAX_N - 1}, got {len(self.tail)}")
        if any(not 0 <= p < len(self.tail) for p in self.wildcard_positions):
            raise ValueError("wildcard positions must index into the tail")

    def matches(self, tail):
        return all(
            i in self.wildcard_positions or tok == want for i, (tok, want) in enumerate(zip(tail, self.tail))
        )


@dataclass(frozen=True)
class NgramStore:
    counts: dict = field(default_factory=dict)
    totals: dict = field(default_factory=dict)
    prefix_totals: dict = field(default_factory=dict)
    suffix_totals: dict = field(default_factory=dict)
    max_n: int = 0

    @classmethod
    def from_counts(cls, counts):
        """Build a store from a mapping ``token tuple -> count``, materializing all marginals."""
        counts = {tuple(k): int(v) for k, v in counts.items() if v}
        totals, prefix, suffix = Counter(), Counter(), Counter()
        for gram, c in counts.items():
            if c < 0:
                raise NegativeCountError(f"negative count for {' '.join(gram)!r}")
            totals[len(gram)] += c
            if len(gram) >= 2:
                prefix[(gram[0], len(gram) - 1)] += c
                suffix[gram[1:]] += c
        max_n = max((len(g) for g in counts), default=0)
        return cls(counts, dict(totals), dict(prefix), dict(suffix), max_n)

    def count(self, *gram):
        return self.counts.get(tuple(gram), 0)

    def total(self, n):
        return self.totals.get(n, 0)

    def _suffixes_of_length(self, n):
        cache = self.__dict__.get("_suffix_index")
        if cache is None:
            cache = defaultdict(list)
            for tail in self.suffix_totals:
                cache[len(tail)].append(tail)
            object.__setattr__(self, "_suffix_index", cache)
        return cache.get(n, ())

    def pmi(self, query):
        return pmi(self, query)


def pmi(store, query):
    """Natural-log PMI for ``query``, or None when any of the counts involved is zero.

    Wildcard positions in the tail match any token; the joint count and the
    tail marginal are summed over all matching tails.
    """
    n = len(query.tail)
    big_n = store.total(n + 1)
    head_marginal = store.prefix_totals.get((query.head, n), 0)
    if not query.wildcard_positions:
        joint = store.counts.get((query.head,) + query.tail, 0)
        tail_marginal = store.suffix_totals.get(query.tail, 0)
    else:
        joint = tail_marginal = 0
        for tail in store._suffixes_of_length(n):
            if query.matches(tail):
                tail_marginal += store.suffix_totals[tail]
                joint += store.counts.get((query.head,) + tail, 0)
    if not (joint and head_marginal and tail_marginal and big_n):
        return None
    return math.log((joint * big_n) / (head_marginal * tail_marginal))


def count_ngrams(token_lists, max_n):
    counts = Counter()
    for tokens in token_lists:
        for n in range(1, max_n + 1):
            for i in range(len(tokens) - n + 1):
                counts[tuple(tokens[i : i + n])] += 1
    return counts


def corpus_tokens(line):
    return [ngram_token(t) for t in tokenize(line)]


def build_store_from_texts(texts, max_n=MAX_N):
    """Count sliding windows of every length up to ``max_n``; windows never cross texts."""
    if not 2 <= max_n <= MAX_N:
        raise ValueError(f"max_n must be in 2..{MAX_N}")
    return NgramStore.from_counts(count_ngrams((corpus_tokens(t) for t in texts), max_n))


def build_store(corpus_path, max_n=MAX_N):
    """Build a store from a plain-text corpus, one sentence or document per line."""
    if not 2 <= max_n <= MAX_N:
        raise ValueError(f"max_n must be in 2..{MAX_N}")
    with open(corpus_path, encoding="utf-8") as fh:
        return build_store_from_texts(fh, max_n)


def load_counts(path):
    """Read ``tok1 tok2 ...<TAB>count`` lines; duplicate n-grams are summed.

    Tokens are normalized the same way queries are. When the file lists no
    unigrams, unigram counts are taken from the bigram head marginals.
    """
    counts = Counter()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip():
                continue
            gram, sep, raw = line.rpartition("\t")
            if not sep:
                raise ParseError(lineno, "expected n-gram<TAB>count", str(path))
            toks = tuple(ngram_token(t) for t in gram.split())
            if not 1 <= len(toks) <= MAX_N:
                raise ParseError(lineno, f"n-gram length must be 1..{MAX_N}", str(path))
            try:
                c = int(raw.strip())
            except ValueError:
                raise ParseError(lineno, f"count {raw.strip()!r} is not an integer", str(path)) from None
            if c < 0:
                raise NegativeCountError(f"{path}:{lineno}: negative count {c}")
            counts[toks] += c
    if not any(len(g) == 1 for g in counts):
        for gram, c in list(counts.items()):
            if len(gram) == 2:
                counts[gram[:1]] += c
    return NgramStore.from_counts(counts)


def save_counts(store, path):
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for gram in sorted(store.counts, key=lambda g: (len(g), g)):
            fh.write(f"{' '.join(gram)}\t{store.counts[gram]}\n")

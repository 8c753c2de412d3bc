"""Feature extraction for sarcasm detection.

Features come in groups that can be switched on and off independently: two
domain-specific groups (Twitter, Amazon) and eight general groups built on
sentiment lexicons, n-gram PMI, surface syntax, and bag-of-words vocabularies
learned from the training data.
"""
import enum
import math
from collections import Counter
from dataclasses import dataclass, field

from .corpus import Domain, Label
from .errors import MissingGroupError, ResourceMissingError, SchemaMismatchError
from .lexicons import IndicatorLists, LexiconSet, Polarity, Strength
from .ngram_store import PmiQuery, pmi
from .text import (
    is_hashtag,
    is_mention,
    is_punct_char,
    is_punct_token,
    lexicon_key,
    ngram_token,
    tokenize,
)
from .vectors import FeatureKind, FeatureSpec, FeatureVector, Schema, check_schema

__all__ = [
    "AssociationModel",
    "CategoricalEncoder",
    "FeatureConfig",
    "FeatureExtractor",
    "FeatureGroup",
    "extract",
    "feature_schema",
    "fit_associations",
    "tokenize",
]

REAL, BINARY, CATEGORICAL = FeatureKind.REAL, FeatureKind.BINARY, FeatureKind.CATEGORICAL


class FeatureGroup(str, enum.Enum):
    TWITTER = "twitter"
    AMAZON = "amazon"
    MOST_POLAR_WORD = "most_polar_word"
    MOST_POLAR_SCORE = "most_polar_score"
    OTHER_POLARITY = "other_polarity"
    SUBJECTIVITY = "subjectivity"
    SYNTACTIC = "syntactic"
    PMI = "pmi"
    BOAW = "boaw"
    BOCW = "bocw"


GENERAL_GROUPS = tuple(FeatureGroup)[2:]

GROUP_TITLES = {
    FeatureGroup.TWITTER: "Twitter Features",
    FeatureGroup.AMAZON: "Amazon Features",
    FeatureGroup.MOST_POLAR_WORD: "Gen.: Most Polar Word",
    FeatureGroup.MOST_POLAR_SCORE: "Gen.: Most Polar Score",
    FeatureGroup.OTHER_POLARITY: "General: Other Polarity",
    FeatureGroup.SUBJECTIVITY: "General: Subjectivity",
    FeatureGroup.SYNTACTIC: "General: Syntactic",
    FeatureGroup.PMI: "General: PMI Features",
    FeatureGroup.BOAW: "General: BOAW",
    FeatureGroup.BOCW: "General: BOCW",
}

_ALIASES = {
    "general": GENERAL_GROUPS,
    "all": tuple(FeatureGroup),
}


@dataclass(frozen=True)
class FeatureConfig:
    enabled_groups: frozenset

    def __post_init__(self):
        groups = frozenset(FeatureGroup(g) for g in self.enabled_groups)
        if not groups:
            raise ValueError("a feature configuration needs at least one group")
        object.__setattr__(self, "enabled_groups", groups)

    @classmethod
    def parse(cls, spec):
        """Parse ``"syntactic,pmi"`` (or a list of names); ``general`` and ``all`` are shorthands."""
        if isinstance(spec, str):
            spec = [s for s in spec.replace("+", ",").split(",")]
        groups = set()
        for name in spec:
            name = name.strip().lower().replace("-", "_")
            if not name:
                continue
            if name in _ALIASES:
                groups.update(_ALIASES[name])
            else:
                try:
                    groups.add(FeatureGroup(name))
                except ValueError:
                    raise ValueError(f"unknown feature group {name!r}") from None
        return cls(frozenset(groups))

    @property
    def groups(self):
        return [g for g in FeatureGroup if g in self.enabled_groups]

    @property
    def name(self):
        if self.enabled_groups == frozenset(FeatureGroup):
            return "all"
        if self.enabled_groups == frozenset(GENERAL_GROUPS):
            return "general"
        return "+".join(g.value for g in self.groups)

    @property
    def title(self):
        if self.enabled_groups == frozenset(FeatureGroup):
            return "All Features"
        if self.enabled_groups == frozenset(GENERAL_GROUPS):
            return "All General Features"
        if len(self.groups) == 1:
            return GROUP_TITLES[self.groups[0]]
        return self.name

    def __contains__(self, group):
        return FeatureGroup(group) in self.enabled_groups


# ---------------------------------------------------------------------------
# Bag-of-associated-words and bag-of-common-words vocabularies

ASSOC_GROUPS = tuple((d, l) for d in (Domain.TWITTER, Domain.AMAZON) for l in (Label.SARCASTIC, Label.NON_SARCASTIC))


def _group_key(domain, label):
    return f"{label.value}/{domain.value}"


def instance_words(text):
    return [k for k in (lexicon_key(t) for t in tokenize(text)) if k]


def smoothed_label_pmi(n_docs, docs_with_word, docs_with_label, docs_with_both):
    """PMI(w, l) with plus-one smoothing on every cell of the 2x2 word/label table.

    Marginals are taken from the smoothed table, so ``p(w) = (c_w + 2) / (N + 4)``
    and ``p(l) = (c_l + 2) / (N + 4)``.
    """
    return math.log(
        (docs_with_both + 1) * (n_docs + 4) / ((docs_with_word + 2) * (docs_with_label + 2))
    )


@dataclass(frozen=True)
class AssociationModel:
    boaw_groups: dict
    bocw_groups: dict
    boaw_vocab: tuple
    bocw_vocab: tuple
    stopwords: frozenset = frozenset()
    per_group_k: int = 50

    def to_json(self):
        return {
            "per_group_k": self.per_group_k,
            "stopwords": sorted(self.stopwords),
            "boaw_groups": {k: list(v) for k, v in self.boaw_groups.items()},
            "bocw_groups": {k: list(v) for k, v in self.bocw_groups.items()},
            "boaw_vocab": list(self.boaw_vocab),
            "bocw_vocab": list(self.bocw_vocab),
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            boaw_groups={k: tuple(v) for k, v in obj["boaw_groups"].items()},
            bocw_groups={k: tuple(v) for k, v in obj["bocw_groups"].items()},
            boaw_vocab=tuple(obj["boaw_vocab"]),
            bocw_vocab=tuple(obj["bocw_vocab"]),
            stopwords=frozenset(obj.get("stopwords", ())),
            per_group_k=obj.get("per_group_k", 50),
        )


def fit_associations(train, stopwords=frozenset(), per_group_k=50):
    """Learn the BOAW and BOCW vocabularies from training instances.

    For each (domain, label) group, BOAW keeps the ``per_group_k`` non-stopword
    unigrams of that group with the highest smoothed PMI against the label,
    with document probabilities computed within the domain. BOCW keeps each
    group's most frequent unigrams and then drops every word that made more
    than one group's list. Ties are broken alphabetically.
    """
    stopwords = frozenset(w.lower() for w in stopwords)
    docs = {g: [] for g in ASSOC_GROUPS}
    for inst in train:
        docs[(inst.domain, inst.label)].append(instance_words(inst.text))
    empty = [_group_key(*g) for g, d in docs.items() if not d]
    if empty:
        raise MissingGroupError(f"no training instances for group(s): {', '.join(empty)}")

    boaw_groups, bocw_groups = {}, {}
    for domain in (Domain.TWITTER, Domain.AMAZON):
        domain_sets = {
            label: [set(words) - stopwords for words in docs[(domain, label)]]
            for label in (Label.SARCASTIC, Label.NON_SARCASTIC)
        }
        n_docs = sum(len(v) for v in domain_sets.values())
        df_all = Counter(w for sets in domain_sets.values() for s in sets for w in s)
        for label in (Label.SARCASTIC, Label.NON_SARCASTIC):
            df_label = Counter(w for s in domain_sets[label] for w in s)
            n_label = len(domain_sets[label])
            scored = [
                (-smoothed_label_pmi(n_docs, df_all[w], n_label, c), w) for w, c in df_label.items()
            ]
            boaw_groups[_group_key(domain, label)] = tuple(w for _, w in sorted(scored)[:per_group_k])

    for domain, label in ASSOC_GROUPS:
        freq = Counter(w for words in docs[(domain, label)] for w in words)
        ranked = sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))
        bocw_groups[_group_key(domain, label)] = tuple(w for w, _ in ranked[:per_group_k])

    boaw_vocab = []
    for words in boaw_groups.values():
        boaw_vocab.extend(w for w in words if w not in boaw_vocab)
    membership = Counter(w for words in bocw_groups.values() for w in set(words))
    bocw_vocab = [w for words in bocw_groups.values() for w in words if membership[w] == 1]
    return AssociationModel(
        boaw_groups, bocw_groups, tuple(boaw_vocab), tuple(bocw_vocab), stopwords, per_group_k
    )


# ---------------------------------------------------------------------------
# Schema

TWITTER_FLAGS = (
    "contains_sarcasm_hashtag",
    "contains_sarcastic_smiley",
    "contains_sarcasm_indicator",
    "contains_positive_predicate",
    "contains_positive_sentiment",
    "contains_negative_situation",
    "pos_precedes_neg_situation",
    "contains_laughter",
)
AMAZON_FEATURES = (
    ("star_rating", REAL),
    ("contains_wow", BINARY),
    ("contains_ugh", BINARY),
    ("contains_huh", BINARY),
    ("contains_ellipsis", BINARY),
)
LEXICON_NAMES = ("liu05", "mpqa", "afinn")
OTHER_POLARITY_FEATURES = (
    tuple(f"avg_polarity_{n}" for n in LEXICON_NAMES)
    + tuple(f"overall_polarity_{n}" for n in LEXICON_NAMES)
    + tuple(f"pct_{s}_{n}" for n in LEXICON_NAMES for s in ("positive", "negative"))
    + ("largest_score_gap",)
)
SUBJECTIVITY_FEATURES = ("pct_strong_pos", "pct_weak_pos", "pct_strong_neg", "pct_weak_neg")
SYNTACTIC_FEATURES = (
    ("all_caps_count", REAL),
    ("all_caps_ratio", REAL),
    ("max_consecutive_chars", REAL),
    ("max_consecutive_punct", REAL),
    ("has_exclamation", BINARY),
    ("has_question", BINARY),
)
PMI_FEATURES = ("pmi_1", "pmi_2", "pmi_3", "pmi_4")


def _group_specs(group, assoc, indicators):
    if group is FeatureGroup.TWITTER:
        specs = [(n, BINARY) for n in TWITTER_FLAGS]
        specs += [(f"hashtag_{t}", BINARY) for t in indicators.sarcasm_hashtags]
        specs += [(f"laughter_{t}", BINARY) for t in indicators.laughter_tokens]
        return specs
    if group is FeatureGroup.AMAZON:
        return list(AMAZON_FEATURES)
    if group is FeatureGroup.MOST_POLAR_WORD:
        return [("most_polar_unigram", CATEGORICAL)]
    if group is FeatureGroup.MOST_POLAR_SCORE:
        return [("most_polar_score", REAL)]
    if group is FeatureGroup.OTHER_POLARITY:
        return [(n, REAL) for n in OTHER_POLARITY_FEATURES]
    if group is FeatureGroup.SUBJECTIVITY:
        return [(n, REAL) for n in SUBJECTIVITY_FEATURES]
    if group is FeatureGroup.SYNTACTIC:
        return list(SYNTACTIC_FEATURES)
    if group is FeatureGroup.PMI:
        return [(n, REAL) for n in PMI_FEATURES]
    if group is FeatureGroup.BOAW:
        return [(f"boaw_{w}", BINARY) for w in assoc.boaw_vocab]
    if group is FeatureGroup.BOCW:
        return [(f"bocw_{w}", BINARY) for w in assoc.bocw_vocab]
    raise AssertionError(group)


def feature_schema(config, assoc=None, indicators=None):
    """Ordered feature names (with kinds) for ``config``; identical for train and test."""
    indicators = indicators or IndicatorLists()
    specs = []
    for group in config.groups:
        if group in (FeatureGroup.BOAW, FeatureGroup.BOCW) and assoc is None:
            raise ResourceMissingError(group.value, "fitted associations")
        specs.extend(_group_specs(group, assoc, indicators))
    return Schema(tuple(FeatureSpec(n, k) for n, k in specs))


# ---------------------------------------------------------------------------
# Extraction

def max_consecutive_chars(text):
    """Length of the longest run of one repeated non-space character ("Sooooo" -> 5)."""
    best = run = 0
    prev = None
    for ch in text:
        if ch.isspace():
            run, prev = 0, None
            continue
        run = run + 1 if ch == prev else 1
        prev = ch
        best = max(best, run)
    return best


def max_consecutive_punct(text):
    best = run = 0
    for ch in text:
        run = run + 1 if is_punct_char(ch) else 0
        best = max(best, run)
    return best


def is_all_caps(token):
    letters = [c for c in token if c.isalpha()]
    return len(token) >= 2 and bool(letters) and all(c.isupper() for c in letters)


def _find_phrases(tokens, phrases):
    """(start, end) spans where any phrase occurs as a contiguous token run."""
    spans = []
    for phrase in phrases:
        n = len(phrase)
        if not n:
            continue
        for i in range(len(tokens) - n + 1):
            if tuple(tokens[i : i + n]) == phrase:
                spans.append((i, i + n))
    return spans


def afinn_hits(keys, scored):
    """Greedy left-to-right matching, phrases before unigrams.

    Returns ``(start, length, score)`` triples over token positions; tokens
    whose key is None (punctuation, mentions) never match.
    """
    hits = []
    longest = scored.max_phrase_len
    i = 0
    while i < len(keys):
        if keys[i] is None:
            i += 1
            continue
        step = 1
        for n in range(min(longest, len(keys) - i), 1, -1):
            span = tuple(keys[i : i + n])
            if None not in span and span in scored.entries:
                hits.append((i, n, scored.entries[span]))
                step = n
                break
        else:
            score = scored.entries.get((keys[i],))
            if score is not None:
                hits.append((i, 1, score))
        i += step
    return hits


@dataclass
class _Parsed:
    text: str
    tokens: list
    keys: list
    lower: list = field(init=False)
    n_words: int = field(init=False)

    def __post_init__(self):
        self.lower = [t.lower() for t in self.tokens]
        self.n_words = sum(1 for t in self.tokens if not is_punct_token(t))


def _ratio(num, den):
    return num / den if den else 0.0


def _bin(flag):
    return 1 if flag else 0


class FeatureExtractor:
    """Turns instances into feature vectors over a schema fixed at construction.

    Resources a group needs must be supplied up front; a missing one raises
    ResourceMissingError naming the group.
    """

    def __init__(self, config, lexicons=None, store=None, assoc=None):
        self.config = config
        self.lexicons = lexicons or LexiconSet()
        self.store = store
        self.assoc = assoc
        self._check_resources()
        self.schema = feature_schema(config, assoc, self.lexicons.indicators)
        ind = self.lexicons.indicators
        self._phrases = {name: ind.phrase_tokens(name) for name in (
            "sarcastic_smileys",
            "sarcasm_indicator_phrases",
            "positive_predicates",
            "positive_sentiment_phrases",
            "negative_situation_phrases",
        )}

    def _check_resources(self):
        lex = self.lexicons
        needs = {
            FeatureGroup.MOST_POLAR_WORD: [("scored lexicon", lex.scored)],
            FeatureGroup.MOST_POLAR_SCORE: [("scored lexicon", lex.scored)],
            FeatureGroup.OTHER_POLARITY: [
                ("polarity lexicon", lex.polarity),
                ("subjectivity lexicon", lex.subjectivity),
                ("scored lexicon", lex.scored),
            ],
            FeatureGroup.SUBJECTIVITY: [("subjectivity lexicon", lex.subjectivity)],
            FeatureGroup.PMI: [("scored lexicon", lex.scored), ("n-gram store", self.store)],
            FeatureGroup.BOAW: [("fitted associations", self.assoc)],
            FeatureGroup.BOCW: [("fitted associations", self.assoc)],
        }
        for group in self.config.groups:
            for what, resource in needs.get(group, ()):
                if resource is None:
                    raise ResourceMissingError(group.value, what)

    def extract(self, instance):
        tokens = tokenize(instance.text)
        parsed = _Parsed(instance.text, tokens, [lexicon_key(t) for t in tokens])
        values = []
        for group in self.config.groups:
            values.extend(getattr(self, f"_{group.value}")(parsed, instance))
        return FeatureVector(self.schema, tuple(values))

    def extract_all(self, instances):
        return [self.extract(i) for i in instances]

    # -- domain-specific ---------------------------------------------------

    def _twitter(self, p, instance):
        ind = self.lexicons.indicators
        tags = {t[1:] for t in p.lower if is_hashtag(t)}
        keys = set(k for k in p.keys if k)
        spans = {name: _find_phrases(p.lower, phr) for name, phr in self._phrases.items()}
        positive = spans["positive_predicates"] + spans["positive_sentiment_phrases"]
        negative = spans["negative_situation_phrases"]
        precedes = any(0 <= ns - pe <= 5 for _, pe in positive for ns, _ in negative)
        laughter = [t in keys for t in ind.laughter_tokens]
        flags = [
            any(t in tags for t in ind.sarcasm_hashtags),
            bool(spans["sarcastic_smileys"]),
            bool(spans["sarcasm_indicator_phrases"]),
            bool(spans["positive_predicates"]),
            bool(spans["positive_sentiment_phrases"]),
            bool(negative),
            precedes,
            any(laughter),
        ]
        flags += [t in tags for t in ind.sarcasm_hashtags]
        flags += laughter
        return [_bin(f) for f in flags]

    def _amazon(self, p, instance):
        keys = set(k for k in p.keys if k)
        star = None if instance.star_rating is None else float(instance.star_rating)
        ellipsis = "..." in p.text or "…" in p.text
        return [star, _bin("wow" in keys), _bin("ugh" in keys), _bin("huh" in keys), _bin(ellipsis)]

    # -- general -------------------------------------------------------------

    def _most_polar(self, p):
        unigram_hits = [(i, s) for i, n, s in afinn_hits(p.keys, self.lexicons.scored) if n == 1]
        if not unigram_hits:
            return None
        # Largest magnitude; negative wins a magnitude tie; then earliest.
        return max(unigram_hits, key=lambda h: (abs(h[1]), h[1] < 0, -h[0]))

    def _most_polar_word(self, p, instance):
        hit = self._most_polar(p)
        return [None if hit is None else p.keys[hit[0]]]

    def _most_polar_score(self, p, instance):
        hit = self._most_polar(p)
        return [None if hit is None else float(hit[1])]

    def _other_polarity(self, p, instance):
        lex = self.lexicons
        liu = [s for s in (lex.polarity.score(k) for k in p.keys if k) if s is not None]
        mpqa = [_mpqa_score(e) for e in (lex.subjectivity.get(k) for k in p.keys if k) if e is not None]
        afinn = [s for _, _, s in afinn_hits(p.keys, lex.scored)]
        values = []
        for scores in (liu, mpqa, afinn):
            values.append(sum(scores) / len(scores) if scores else None)
        for scores in (liu, mpqa, afinn):
            values.append(float(sum(scores)))
        for scores in (liu, mpqa, afinn):
            values.append(_ratio(sum(1 for s in scores if s > 0), p.n_words))
            values.append(_ratio(sum(1 for s in scores if s < 0), p.n_words))
        values.append(float(max(afinn) - min(afinn)) if afinn else None)
        return values

    def _subjectivity(self, p, instance):
        entries = [e for e in (self.lexicons.subjectivity.get(k) for k in p.keys if k) if e is not None]
        if not entries:
            return [None] * 4
        counts = Counter(entries)
        total = len(entries)
        return [
            counts[(Strength.STRONG, Polarity.POS)] / total,
            counts[(Strength.WEAK, Polarity.POS)] / total,
            counts[(Strength.STRONG, Polarity.NEG)] / total,
            counts[(Strength.WEAK, Polarity.NEG)] / total,
        ]

    def _syntactic(self, p, instance):
        caps = sum(1 for t in p.tokens if not is_punct_token(t) and is_all_caps(t))
        return [
            float(caps),
            _ratio(caps, p.n_words),
            float(max_consecutive_chars(p.text)),
            float(max_consecutive_punct(p.text)),
            _bin("!" in p.text),
            _bin("?" in p.text),
        ]

    def _pmi(self, p, instance):
        hit = self._most_polar(p)
        if hit is None:
            return [None] * 4
        pos = hit[0]
        head = p.keys[pos]
        following = p.tokens[pos + 1 :]
        values = []
        for n in range(1, 5):
            if len(following) < n:
                values.append(None)
                continue
            window = following[:n]
            tail = tuple("@" if is_mention(t) else ngram_token(t) for t in window)
            wild = frozenset(i for i, t in enumerate(window) if is_mention(t))
            values.append(pmi(self.store, PmiQuery(head, tail, wild)))
        return values

    def _boaw(self, p, instance):
        keys = set(k for k in p.keys if k)
        return [_bin(w in keys) for w in self.assoc.boaw_vocab]

    def _bocw(self, p, instance):
        keys = set(k for k in p.keys if k)
        return [_bin(w in keys) for w in self.assoc.bocw_vocab]


def _mpqa_score(entry):
    strength, polarity = entry
    magnitude = 2 if strength is Strength.STRONG else 1
    return magnitude if polarity is Polarity.POS else -magnitude


def extract(instance, lexicons, store, assoc, config):
    """One-off extraction; build a FeatureExtractor to process many instances."""
    return FeatureExtractor(config, lexicons, store, assoc).extract(instance)


# ---------------------------------------------------------------------------
# Categorical expansion

OOV = "<oov>"


@dataclass(frozen=True)
class CategoricalEncoder:
    """One-hot expansion of categorical features with an out-of-vocabulary bucket.

    The vocabulary comes from training vectors only. A missing categorical
    value becomes missing in every one of its one-hot columns.
    """

    input_schema: Schema
    vocab: dict

    @classmethod
    def fit(cls, vectors, schema=None):
        schema = check_schema(vectors, schema) or Schema()
        vocab = {}
        for j, spec in enumerate(schema):
            if spec.kind is CATEGORICAL:
                seen = {v.values[j] for v in vectors if v.values[j] is not None}
                vocab[spec.name] = tuple(sorted(seen))
        return cls(schema, vocab)

    @property
    def output_schema(self):
        cached = self.__dict__.get("_output_schema")
        if cached is not None:
            return cached
        specs = []
        for spec in self.input_schema:
            if spec.kind is CATEGORICAL:
                specs += [FeatureSpec(f"{spec.name}={v}", BINARY) for v in self.vocab[spec.name]]
                specs.append(FeatureSpec(f"{spec.name}={OOV}", BINARY))
            else:
                specs.append(spec)
        schema = Schema(tuple(specs))
        object.__setattr__(self, "_output_schema", schema)
        return schema

    def transform(self, vector):
        if vector.schema != self.input_schema:
            raise SchemaMismatchError("vector schema differs from the encoder's training schema")
        out = []
        for spec, value in zip(self.input_schema, vector.values):
            if spec.kind is not CATEGORICAL:
                out.append(value)
                continue
            vocab = self.vocab[spec.name]
            if value is None:
                out.extend([None] * (len(vocab) + 1))
            else:
                out.extend(_bin(value == v) for v in vocab)
                out.append(_bin(value not in vocab))
        return FeatureVector(self.output_schema, tuple(out))

    def transform_all(self, vectors):
        return [self.transform(v) for v in vectors]

    def to_json(self):
        return {"input_schema": self.input_schema.to_json(), "vocab": {k: list(v) for k, v in self.vocab.items()}}

    @classmethod
    def from_json(cls, obj):
        return cls(Schema.from_json(obj["input_schema"]), {k: tuple(v) for k, v in obj["vocab"].items()})

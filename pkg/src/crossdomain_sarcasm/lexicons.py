"""Sentiment lexicons and indicator word lists.

Three lexicon styles are supported: an opinion lexicon split into positive and
negative word files, a subjectivity lexicon (strong/weak x pos/neg), and a
scored lexicon with integer scores in [-5, 5]. All lookups are lowercase.
"""
import enum
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConflictError, ParseError, RangeError
from .text import tokenize

logger = logging.getLogger(__name__)

LAUGHTER_TOKENS = ("hahaha", "haha", "hehehe", "hehe", "jajaja", "jaja", "lol", "lmao", "rofl")

INDICATOR_FILES = {
    "sarcasm_hashtags": "sarcasm_hashtags.txt",
    "sarcastic_smileys": "sarcastic_smileys.txt",
    "sarcasm_indicator_phrases": "sarcasm_indicators.txt",
    "positive_predicates": "positive_predicates.txt",
    "positive_sentiment_phrases": "positive_sentiments.txt",
    "negative_situation_phrases": "negative_situations.txt",
}


class Strength(str, enum.Enum):
    STRONG = "strong"
    WEAK = "weak"


class Polarity(str, enum.Enum):
    POS = "pos"
    NEG = "neg"


def is_comment(line):
    # ';)' and '#hashtag' are data, so a comment marker must be followed by
    # whitespace, end of line, or another marker.
    if not line or line[0] not in "#;":
        return False
    return len(line) == 1 or line[1].isspace() or line[1] in "#;"


def _data_lines(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\r\n")
            if not line.strip() or is_comment(line.lstrip()):
                continue
            yield lineno, line


@dataclass(frozen=True)
class PolarityLexicon:
    positive: frozenset = frozenset()
    negative: frozenset = frozenset()
    warnings: tuple = ()

    def score(self, word):
        word = word.lower()
        if word in self.positive:
            return 1
        if word in self.negative:
            return -1
        return None


def load_polarity(pos_path, neg_path, strict=False):
    """Load an opinion lexicon from one-word-per-line positive and negative files.

    Words listed in both files are dropped from both (with a warning), or
    raise ConflictError when ``strict`` is set.
    """
    pos = {line.strip().lower() for _, line in _data_lines(pos_path)}
    neg = {line.strip().lower() for _, line in _data_lines(neg_path)}
    conflicts = pos & neg
    warnings = ()
    if conflicts:
        if strict:
            raise ConflictError(f"words in both polarity files: {sorted(conflicts)}")
        warnings = tuple(f"dropped conflicting word {w!r}" for w in sorted(conflicts))
        for msg in warnings:
            logger.warning(msg)
    return PolarityLexicon(frozenset(pos - conflicts), frozenset(neg - conflicts), warnings)


@dataclass(frozen=True)
class SubjectivityLexicon:
    entries: dict = field(default_factory=dict)
    warnings: tuple = ()

    def get(self, word):
        return self.entries.get(word.lower())

    def __len__(self):
        return len(self.entries)


def _rank(entry):
    strength, polarity = entry
    return (strength is Strength.STRONG, polarity is Polarity.NEG)


_MPQA_STRENGTH = {"strongsubj": Strength.STRONG, "weaksubj": Strength.WEAK}
_MPQA_POLARITY = {"positive": Polarity.POS, "negative": Polarity.NEG}


def _parse_mpqa_clff(line):
    """Parse a line in the original ``type=strongsubj ... priorpolarity=negative`` format."""
    attrs = dict(part.split("=", 1) for part in line.split() if "=" in part)
    word = attrs.get("word1")
    strength = _MPQA_STRENGTH.get(attrs.get("type", ""))
    polarity = _MPQA_POLARITY.get(attrs.get("priorpolarity", ""))
    if word is None or strength is None:
        return None, "malformed"
    if polarity is None:
        return None, "neutral"
    return (word, strength, polarity), None


def load_subjectivity(path):
    """Load a subjectivity lexicon.

    Lines are ``word<TAB>strength<TAB>polarity`` with strength in {strong, weak}
    and polarity in {pos, neg}. Lines in the original ``key=value`` format are
    also accepted (neutral/both entries are skipped). When a word appears more
    than once the strongest entry wins, and negative beats positive at equal
    strength. Multi-word entries are skipped.
    """
    entries, warnings = {}, []
    for lineno, line in _data_lines(path):
        if "\t" not in line and "word1=" in line:
            parsed, problem = _parse_mpqa_clff(line)
            if problem == "malformed":
                raise ParseError(lineno, "malformed key=value subjectivity entry", str(path))
            if parsed is None:
                continue
            word, strength, polarity = parsed
        else:
            cols = [c.strip() for c in line.split("\t")]
            if len(cols) != 3:
                raise ParseError(lineno, "expected word<TAB>strength<TAB>polarity", str(path))
            word = cols[0]
            try:
                strength = Strength(cols[1].lower())
            except ValueError:
                raise ParseError(lineno, f"unknown strength {cols[1]!r}", str(path)) from None
            try:
                polarity = Polarity(cols[2].lower())
            except ValueError:
                raise ParseError(lineno, f"unknown polarity {cols[2]!r}", str(path)) from None
        word = word.lower()
        if len(word.split()) != 1:
            warnings.append(f"line {lineno}: skipped multi-word entry {word!r}")
            continue
        entry = (strength, polarity)
        if word not in entries or _rank(entry) > _rank(entries[word]):
            entries[word] = entry
    return SubjectivityLexicon(entries, tuple(warnings))


@dataclass(frozen=True)
class ScoredLexicon:
    """Word/phrase scores; phrase keys are tuples of lowercase tokens."""

    entries: dict = field(default_factory=dict)

    @property
    def max_phrase_len(self):
        return max((len(k) for k in self.entries), default=0)

    def get(self, key):
        if isinstance(key, str):
            key = (key,)
        return self.entries.get(tuple(k.lower() for k in key))

    def __len__(self):
        return len(self.entries)


def load_scored(path):
    entries = {}
    for lineno, line in _data_lines(path):
        cols = line.split("\t")
        if len(cols) != 2:
            raise ParseError(lineno, "expected term<TAB>score", str(path))
        term, raw_score = cols[0].strip().lower(), cols[1].strip()
        try:
            score = int(raw_score)
        except ValueError:
            raise ParseError(lineno, f"score {raw_score!r} is not an integer", str(path)) from None
        if score == 0 or not -5 <= score <= 5:
            raise RangeError(f"{path}:{lineno}: score {score} outside [-5, 5] \\ {{0}}")
        key = tuple(term.split())
        if not key:
            raise ParseError(lineno, "empty term", str(path))
        entries[key] = score
    return ScoredLexicon(entries)


@dataclass(frozen=True)
class IndicatorLists:
    sarcasm_hashtags: tuple = ()
    sarcastic_smileys: tuple = ()
    sarcasm_indicator_phrases: tuple = ()
    positive_predicates: tuple = ()
    positive_sentiment_phrases: tuple = ()
    negative_situation_phrases: tuple = ()
    laughter_tokens: tuple = LAUGHTER_TOKENS

    def __post_init__(self):
        if len(self.laughter_tokens) != 9:
            raise ValueError("laughter_tokens must hold exactly 9 entries")
        tags = []
        for tag in self.sarcasm_hashtags:
            tag = tag.lower().lstrip("#")
            if tag and tag != "sarcasm" and tag not in tags:
                tags.append(tag)
        object.__setattr__(self, "sarcasm_hashtags", tuple(tags))
        for name in INDICATOR_FILES:
            if name != "sarcasm_hashtags":
                object.__setattr__(self, name, _unique_lower(getattr(self, name)))

    def phrase_tokens(self, name):
        """The list ``name`` with every entry tokenized and lowercased."""
        return tuple(tuple(t.lower() for t in tokenize(p)) for p in getattr(self, name))


def _unique_lower(items):
    out = []
    for item in items:
        item = item.strip().lower()
        if item and item not in out:
            out.append(item)
    return tuple(out)


def load_indicators(dir_path=None):
    """Read the learned indicator lists from a directory, one file per list.

    Missing files (or no directory at all) give empty lists; the laughter
    tokens are built in.
    """
    lists = {}
    if dir_path is not None:
        base = Path(dir_path)
        for name, filename in INDICATOR_FILES.items():
            path = base / filename
            if not path.exists():
                continue
            lists[name] = tuple(line.strip() for _, line in _data_lines(path))
    return IndicatorLists(**lists)


def load_wordlist(path):
    """One word per line, lowercased; used for stopwords."""
    return frozenset(line.strip().lower() for _, line in _data_lines(path))


@dataclass(frozen=True)
class LexiconSet:
    polarity: PolarityLexicon | None = None
    subjectivity: SubjectivityLexicon | None = None
    scored: ScoredLexicon | None = None
    indicators: IndicatorLists = field(default_factory=IndicatorLists)

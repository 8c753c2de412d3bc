"""Datasets of short labeled texts: loading, tweet filtering, splitting, saving."""
import enum
import json
import re
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import DuplicateIdError, EmptyDatasetError, ParseError, TooFewInstancesError


class Domain(str, enum.Enum):
    TWITTER = "twitter"
    AMAZON = "amazon"


class Label(str, enum.Enum):
    NON_SARCASTIC = "non_sarcastic"
    SARCASTIC = "sarcastic"


class Split(str, enum.Enum):
    TRAIN = "train"
    TEST = "test"


LABEL_HASHTAGS = (
    "#sarcasm",
    "#happiness",
    "#sadness",
    "#anger",
    "#surprise",
    "#fear",
    "#disgust",
)


@dataclass(frozen=True)
class Instance:
    id: str
    text: str
    domain: Domain
    label: Label
    star_rating: int | None = None
    source_hashtag: str | None = None

    def __post_init__(self):
        if self.star_rating is not None:
            if self.domain is not Domain.AMAZON:
                raise ValueError(f"instance {self.id}: star_rating is only valid for Amazon instances")
            if isinstance(self.star_rating, bool) or not 1 <= self.star_rating <= 5:
                raise ValueError(f"instance {self.id}: star_rating must be an integer in 1..5")


@dataclass(frozen=True)
class Dataset:
    instances: tuple
    split: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "instances", tuple(self.instances))
        seen = set()
        for inst in self.instances:
            if inst.id in seen:
                raise DuplicateIdError(f"duplicate instance id {inst.id!r}")
            seen.add(inst.id)
        if self.split is not None:
            object.__setattr__(self, "split", tuple(Split(s) for s in self.split))
            if len(self.split) != len(self.instances):
                raise ValueError("split must assign every instance exactly once")

    def __len__(self):
        return len(self.instances)

    def __iter__(self):
        return iter(self.instances)

    def __getitem__(self, idx):
        return self.instances[idx]

    @property
    def labels(self):
        return [inst.label for inst in self.instances]

    def _part(self, side):
        if self.split is None:
            raise ValueError("dataset has no train/test split")
        return Dataset(tuple(i for i, s in zip(self.instances, self.split) if s is side))

    @property
    def train(self):
        return self._part(Split.TRAIN)

    @property
    def test(self):
        return self._part(Split.TEST)

    def with_labels(self, labels):
        """Copy with labels replaced (split kept); used to probe for label leakage."""
        labels = list(labels)
        if len(labels) != len(self.instances):
            raise ValueError("need one label per instance")
        insts = tuple(replace(i, label=Label(l)) for i, l in zip(self.instances, labels))
        return Dataset(insts, self.split)

    def __add__(self, other):
        return Dataset(self.instances + other.instances)


# ---------------------------------------------------------------------------
# Loading and saving

_REQUIRED_KEYS = ("id", "text", "domain", "label")


def _instance_from_fields(fields, lineno, path):
    for key in _REQUIRED_KEYS:
        if key not in fields or fields[key] is None:
            raise ParseError(lineno, f"missing field {key!r}", path)
    if not isinstance(fields["id"], str) or not isinstance(fields["text"], str):
        raise ParseError(lineno, "id and text must be strings", path)
    try:
        domain = Domain(fields["domain"])
    except ValueError:
        raise ParseError(lineno, f"unknown domain {fields['domain']!r}", path) from None
    try:
        label = Label(fields["label"])
    except ValueError:
        raise ParseError(lineno, f"unknown label {fields['label']!r}", path) from None
    star = fields.get("star_rating")
    if star is not None and (isinstance(star, bool) or not isinstance(star, int)):
        raise ParseError(lineno, "star_rating must be an integer", path)
    try:
        return Instance(fields["id"], fields["text"], domain, label, star, fields.get("source_hashtag"))
    except ValueError as exc:
        raise ParseError(lineno, str(exc), path) from None


def _read_jsonl(path):
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(lineno, f"invalid JSON ({exc.msg})", path) from None
            if not isinstance(obj, dict):
                raise ParseError(lineno, "expected a JSON object", path)
            rows.append((lineno, obj))
    return rows


TSV_COLUMNS = ("id", "domain", "label", "star_rating", "text")


def _unescape_tsv(text):
    return re.sub(r"\\([\\tn])", lambda m: {"\\": "\\", "t": "\t", "n": "\n"}[m.group(1)], text)


def _escape_tsv(text):
    return text.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def _read_tsv(path):
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if lineno == 1 and tuple(c.strip() for c in cols[:5]) == TSV_COLUMNS:
                continue
            if len(cols) not in (5, 6):
                raise ParseError(lineno, f"expected 5 tab-separated columns, got {len(cols)}", path)
            fields = dict(zip(TSV_COLUMNS, cols))
            fields["text"] = _unescape_tsv(fields["text"])
            star = fields.pop("star_rating").strip()
            if star:
                try:
                    fields["star_rating"] = int(star)
                except ValueError:
                    raise ParseError(lineno, f"bad star_rating {star!r}", path) from None
            if len(cols) == 6 and cols[5].strip():
                fields["split"] = cols[5].strip()
            rows.append((lineno, fields))
    return rows


def load_dataset(path, format=None):
    """Read a JSONL or TSV dataset, keeping file order.

    The format is inferred from the suffix when not given. Rows may carry an
    optional ``split`` value (``train``/``test``); if any row does, all must.
    """
    path = Path(path)
    if format is None:
        format = "tsv" if path.suffix.lower() in (".tsv", ".tab") else "jsonl"
    if format == "jsonl":
        rows = _read_jsonl(path)
    elif format == "tsv":
        rows = _read_tsv(path)
    else:
        raise ValueError(f"unknown dataset format {format!r}")

    instances, splits, seen = [], [], set()
    for lineno, fields in rows:
        inst = _instance_from_fields(fields, lineno, str(path))
        if inst.id in seen:
            raise DuplicateIdError(f"{path}:{lineno}: duplicate instance id {inst.id!r}")
        seen.add(inst.id)
        instances.append(inst)
        split = fields.get("split")
        if split is not None:
            try:
                split = Split(split)
            except ValueError:
                raise ParseError(lineno, f"unknown split {split!r}", str(path)) from None
        splits.append(split)
    has_split = [s is not None for s in splits]
    if any(has_split) and not all(has_split):
        lineno = rows[has_split.index(False)][0]
        raise ParseError(lineno, "split given for some rows but not this one", str(path))
    return Dataset(tuple(instances), tuple(splits) if instances and all(has_split) else None)


def instance_to_json(inst, split=None):
    obj = {"id": inst.id, "text": inst.text, "domain": inst.domain.value, "label": inst.label.value}
    if inst.star_rating is not None:
        obj["star_rating"] = inst.star_rating
    if inst.source_hashtag is not None:
        obj["source_hashtag"] = inst.source_hashtag
    if split is not None:
        obj["split"] = Split(split).value
    return obj


def save_dataset(dataset, path, format=None):
    path = Path(path)
    if format is None:
        format = "tsv" if path.suffix.lower() in (".tsv", ".tab") else "jsonl"
    splits = dataset.split or (None,) * len(dataset)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if format == "jsonl":
            for inst, split in zip(dataset, splits):
                fh.write(json.dumps(instance_to_json(inst, split), ensure_ascii=False) + "\n")
        elif format == "tsv":
            header = list(TSV_COLUMNS) + (["split"] if dataset.split else [])
            fh.write("\t".join(header) + "\n")
            for inst, split in zip(dataset, splits):
                cols = [inst.id, inst.domain.value, inst.label.value,
                        "" if inst.star_rating is None else str(inst.star_rating),
                        _escape_tsv(inst.text)]
                if split is not None:
                    cols.append(split.value)
                fh.write("\t".join(cols) + "\n")
        else:
            raise ValueError(f"unknown dataset format {format!r}")


# ---------------------------------------------------------------------------
# Tweet filtering

class RejectReason(str, enum.Enum):
    EMPTY = "empty"
    RETWEET = "retweet"
    REPLY = "reply"
    CONTAINS_LINK = "contains_link"
    NO_LABEL_HASHTAG = "no_label_hashtag"
    MULTIPLE_LABEL_HASHTAGS = "multiple_label_hashtags"
    LABEL_NOT_TRAILING = "label_not_trailing"
    EMPTY_AFTER_STRIP = "empty_after_strip"


@dataclass(frozen=True)
class Accepted:
    label: Label
    text: str
    hashtag: str


@dataclass(frozen=True)
class Rejected:
    reason: RejectReason


_LINK_PREFIXES = ("http://", "https://", "www.")


def _is_filter_hashtag(token):
    return len(token) > 1 and token[0] == "#" and token[1].isalnum()


def _label_tag(token):
    tag = token.lower().rstrip(".,!?;:'\"")
    return tag if tag in LABEL_HASHTAGS else None


def _trailing_run_start(spans):
    start = len(spans)
    while start > 0 and _is_filter_hashtag(spans[start - 1].group()):
        start -= 1
    return start


def strip_trailing_hashtags(text):
    """Remove the maximal run of hashtag tokens at the end of ``text``."""
    spans = list(re.finditer(r"\S+", text))
    start = _trailing_run_start(spans)
    if start == len(spans):
        return text.strip()
    return text[: spans[start].start()].strip() if start else ""


def filter_tweet(raw):
    """Decide whether a raw tweet is usable, returning Accepted or Rejected.

    A tweet is kept when it is not a retweet, not an @reply, has no link, and
    carries exactly one of the seven label hashtags inside its trailing
    hashtag run. The whole trailing run is stripped from the kept text.
    """
    text = raw.strip()
    if not text:
        return Rejected(RejectReason.EMPTY)
    if text.startswith("RT "):
        return Rejected(RejectReason.RETWEET)
    if text.startswith("@"):
        return Rejected(RejectReason.REPLY)
    spans = list(re.finditer(r"\S+", text))
    tokens = [m.group() for m in spans]
    if any(tok.lower().startswith(_LINK_PREFIXES) for tok in tokens):
        return Rejected(RejectReason.CONTAINS_LINK)

    hits = [(i, tag) for i, tok in enumerate(tokens) if (tag := _label_tag(tok))]
    if not hits:
        return Rejected(RejectReason.NO_LABEL_HASHTAG)
    if len({tag for _, tag in hits}) > 1:
        return Rejected(RejectReason.MULTIPLE_LABEL_HASHTAGS)
    run_start = _trailing_run_start(spans)
    if any(i < run_start for i, _ in hits):
        return Rejected(RejectReason.LABEL_NOT_TRAILING)

    stripped = text[: spans[run_start].start()].strip() if run_start else ""
    if not stripped:
        return Rejected(RejectReason.EMPTY_AFTER_STRIP)
    tag = hits[0][1]
    label = Label.SARCASTIC if tag == "#sarcasm" else Label.NON_SARCASTIC
    return Accepted(label, stripped, tag)


# ---------------------------------------------------------------------------
# Splitting

def split_dataset(dataset, train_fraction=0.8, seed=0):
    """Stratified random train/test split, deterministic for a given seed.

    Each label's train count is ``round(train_fraction * n_label)``; instance
    order is preserved and only the split assignment is added.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must lie in (0, 1), got {train_fraction}")
    if len(dataset) == 0:
        raise EmptyDatasetError("cannot split an empty dataset")
    rng = np.random.default_rng(seed)
    assignment = [Split.TEST] * len(dataset)
    for label in Label:
        idx = [i for i, inst in enumerate(dataset) if inst.label is label]
        if not idx:
            continue
        n_train = int(round(train_fraction * len(idx)))
        for i in rng.permutation(idx)[:n_train]:
            assignment[int(i)] = Split.TRAIN
    return Dataset(dataset.instances, tuple(assignment))


def stratified_folds(labels, k, seed=0):
    """Assign each position a fold in ``0..k-1``, stratified by label.

    Labels are shuffled within their class and dealt round-robin, so fold
    sizes differ by at most one overall and per class.
    """
    labels = [Label(l) for l in labels]
    if k < 2:
        raise TooFewInstancesError("need at least 2 folds")
    present = [l for l in Label if l in labels]
    smallest = min((labels.count(l) for l in present), default=0)
    if k > smallest:
        raise TooFewInstancesError(f"{k} folds requested but the smallest class has {smallest} instances")
    rng = np.random.default_rng(seed)
    order = []
    for label in (Label.SARCASTIC, Label.NON_SARCASTIC):
        idx = [i for i, l in enumerate(labels) if l is label]
        order.extend(int(i) for i in rng.permutation(idx))
    folds = [0] * len(labels)
    for j, i in enumerate(order):
        folds[i] = j % k
    return folds

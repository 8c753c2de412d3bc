"""Feature schemas and vectors. A missing value is represented by ``None``."""
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import SchemaMismatchError

MISSING = None


class FeatureKind(str, enum.Enum):
    REAL = "real"
    BINARY = "binary"
    CATEGORICAL = "categorical"


@dataclass(frozen=True)
class FeatureSpec:
    name: str
    kind: FeatureKind


@dataclass(frozen=True)
class Schema:
    features: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(self.features))
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate feature names: {dupes}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @classmethod
    def of(cls, *pairs):
        return cls(tuple(FeatureSpec(n, FeatureKind(k)) for n, k in pairs))

    @property
    def names(self):
        return [f.name for f in self.features]

    @property
    def kinds(self):
        return [f.kind for f in self.features]

    def index(self, name):
        return self._index[name]

    def __len__(self):
        return len(self.features)

    def __iter__(self):
        return iter(self.features)

    def __add__(self, other):
        return Schema(self.features + other.features)

    def prefixed(self, prefix):
        return Schema(tuple(FeatureSpec(prefix + f.name, f.kind) for f in self.features))

    def to_json(self):
        return [[f.name, f.kind.value] for f in self.features]

    @classmethod
    def from_json(cls, obj):
        return cls.of(*obj)


@dataclass(frozen=True)
class FeatureVector:
    schema: Schema
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != len(self.schema):
            raise SchemaMismatchError(
                f"vector has {len(self.values)} values but schema has {len(self.schema)} features"
            )

    def __getitem__(self, name):
        return self.values[self.schema.index(name)]

    def __len__(self):
        return len(self.values)

    def as_dict(self):
        return dict(zip(self.schema.names, self.values))


def check_schema(vectors, schema=None):
    """Return the single schema shared by ``vectors`` (or ``schema`` if given)."""
    for v in vectors:
        if schema is None:
            schema = v.schema
        elif v.schema != schema:
            raise SchemaMismatchError("vectors do not share one schema")
    return schema


def to_matrix(vectors, schema=None):
    """Stack vectors into a float matrix with NaN for missing values."""
    schema = check_schema(vectors, schema)
    if schema is None:
        return np.zeros((0, 0))
    if any(k is FeatureKind.CATEGORICAL for k in schema.kinds):
        raise TypeError("categorical features must be one-hot encoded before building a matrix")
    out = np.empty((len(vectors), len(schema)))
    for i, v in enumerate(vectors):
        out[i] = [np.nan if x is None else float(x) for x in v.values]
    return out


def format_value(value, kind):
    if value is None:
        return ""
    if kind is FeatureKind.CATEGORICAL:
        return str(value)
    if kind is FeatureKind.BINARY:
        return str(int(value))
    value = float(value)
    if value.is_integer() and math.isfinite(value):
        return str(int(value))
    return repr(value)


def write_matrix_tsv(path, vectors, schema=None, ids=None, labels=None):
    """Write a feature matrix as TSV: header is the schema, missing cells are empty.

    Optional leading ``id`` and ``label`` columns are written when given.
    """
    schema = check_schema(vectors, schema)
    if schema is None:
        schema = Schema()
    lead = (["id"] if ids is not None else []) + (["label"] if labels is not None else [])
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\t".join(lead + schema.names) + "\n")
        for i, v in enumerate(vectors):
            cells = []
            if ids is not None:
                cells.append(str(ids[i]))
            if labels is not None:
                cells.append(getattr(labels[i], "value", str(labels[i])))
            cells += [format_value(x, k) for x, k in zip(v.values, schema.kinds)]
            fh.write("\t".join(cells) + "\n")

"""EasyAdapt feature augmentation.

Each vector ``x`` over F features is mapped into 3F dimensions:
source data to ``<x, x, 0>`` and target data to ``<x, 0, x>``. The first block
is shared by both domains; the other two are active only for their domain.
"""
import enum
from dataclasses import dataclass

from .errors import SchemaMismatchError
from .vectors import FeatureKind, FeatureSpec, FeatureVector, Schema

BLOCK_PREFIXES = ("g:", "s:", "t:")


class Origin(str, enum.Enum):
    SOURCE = "source"
    TARGET = "target"


def augmented_schema(schema):
    return schema.prefixed("g:") + schema.prefixed("s:") + schema.prefixed("t:")


def _zero_block(schema):
    out = []
    for spec in schema:
        if spec.kind is FeatureKind.CATEGORICAL:
            raise TypeError(f"categorical feature {spec.name!r} must be one-hot encoded before augmentation")
        out.append(0.0 if spec.kind is FeatureKind.REAL else 0)
    return tuple(out)


@dataclass(frozen=True)
class AugmentedVector:
    general: FeatureVector
    source_copy: FeatureVector
    target_copy: FeatureVector

    @property
    def schema(self):
        return augmented_schema(self.general.schema)

    def flat(self):
        """The 3F-dimensional vector with ``g:``/``s:``/``t:`` prefixed feature names."""
        return FeatureVector(
            self.schema, self.general.values + self.source_copy.values + self.target_copy.values
        )

    def __len__(self):
        return 3 * len(self.general)


def augment(vector, origin):
    """Map one vector into the augmented space.

    Missing values are copied as missing into the active block; the inactive
    block is always literal zeros.
    """
    origin = Origin(origin)
    zero = FeatureVector(vector.schema, _zero_block(vector.schema))
    if origin is Origin.SOURCE:
        return AugmentedVector(vector, vector, zero)
    return AugmentedVector(vector, zero, vector)


def augment_dataset(pairs):
    """Augment ``(vector, origin)`` pairs in order; all vectors must share one schema."""
    pairs = list(pairs)
    if not pairs:
        return []
    schema = pairs[0][0].schema
    out = []
    for vector, origin in pairs:
        if vector.schema != schema:
            raise SchemaMismatchError("all vectors passed to augment_dataset must share one schema")
        out.append(augment(vector, origin))
    return out


def split_blocks(flat_vector):
    """Inverse of ``AugmentedVector.flat``: the three F-sized blocks of a 3F vector."""
    values = flat_vector.values
    if len(values) % 3:
        raise SchemaMismatchError("augmented vector length must be divisible by 3")
    f = len(values) // 3
    base = Schema(tuple(
        FeatureSpec(spec.name[2:], spec.kind) for spec in flat_vector.schema.features[:f]
    ))
    return tuple(FeatureVector(base, values[i * f : (i + 1) * f]) for i in range(3))

"""Fit and apply the full extract -> encode -> (augment) -> classify chain.

Everything fitted here (associations, categorical vocabularies, imputation
and scaling constants, model parameters) is computed from the training
instances handed to ``fit_pipeline`` and nothing else.
"""
import enum
import json
from dataclasses import dataclass, field

import numpy as np

from .adapt import Origin, augment_dataset
from .classify import (
    model_from_json,
    model_to_json,
    predict,
    train_lr,
    train_nb,
)
from .corpus import Domain, stratified_folds
from .features import (
    AssociationModel,
    CategoricalEncoder,
    FeatureConfig,
    FeatureExtractor,
    FeatureGroup,
    fit_associations,
)
from .lexicons import LexiconSet
from .metrics import score

PIPELINE_FORMAT = "crossdomain-sarcasm-pipeline"
PIPELINE_VERSION = 1


class Classifier(str, enum.Enum):
    NB = "nb"
    LR = "lr"


@dataclass(frozen=True)
class Resources:
    lexicons: LexiconSet = field(default_factory=LexiconSet)
    store: object = None
    stopwords: frozenset = frozenset()


def needs_associations(config):
    return FeatureGroup.BOAW in config.enabled_groups or FeatureGroup.BOCW in config.enabled_groups


def _origins(instances, source_domain):
    return [Origin.SOURCE if i.domain is Domain(source_domain) else Origin.TARGET for i in instances]


@dataclass
class FittedPipeline:
    config: FeatureConfig
    classifier: Classifier
    assoc: AssociationModel | None
    encoder: CategoricalEncoder
    model: object
    easyadapt: bool = False
    source_domain: Domain = Domain.TWITTER

    def extractor(self, resources):
        return FeatureExtractor(self.config, resources.lexicons, resources.store, self.assoc)

    def vectors(self, instances, resources, extractor=None):
        """Feature vectors in the model's input space for ``instances``."""
        extractor = extractor or self.extractor(resources)
        vecs = self.encoder.transform_all(extractor.extract_all(instances))
        if self.easyadapt:
            pairs = zip(vecs, _origins(instances, self.source_domain))
            vecs = [a.flat() for a in augment_dataset(pairs)]
        return vecs

    def predict(self, instances, resources):
        instances = list(instances)
        return predict(self.model, self.vectors(instances, resources))

    @property
    def base_features(self):
        return len(self.encoder.output_schema)

    @property
    def n_features(self):
        return len(self.model.schema)

    def artifacts(self):
        """Every fitted quantity as plain JSON, for leakage and determinism checks."""
        return {
            "assoc": None if self.assoc is None else self.assoc.to_json(),
            "encoder": self.encoder.to_json(),
            "model": model_to_json(self.model),
        }

    def to_json(self):
        return {
            "format": PIPELINE_FORMAT,
            "version": PIPELINE_VERSION,
            "groups": [g.value for g in self.config.groups],
            "classifier": self.classifier.value,
            "easyadapt": self.easyadapt,
            "source_domain": Domain(self.source_domain).value,
            **self.artifacts(),
        }

    @classmethod
    def from_json(cls, doc):
        if doc.get("format") != PIPELINE_FORMAT or doc.get("version") != PIPELINE_VERSION:
            raise ValueError("not a serialized pipeline document")
        return cls(
            config=FeatureConfig.parse(doc["groups"]),
            classifier=Classifier(doc["classifier"]),
            assoc=None if doc["assoc"] is None else AssociationModel.from_json(doc["assoc"]),
            encoder=CategoricalEncoder.from_json(doc["encoder"]),
            model=model_from_json(doc["model"]),
            easyadapt=doc["easyadapt"],
            source_domain=Domain(doc["source_domain"]),
        )

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=1, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def _train_model(classifier, vectors, labels, l2):
    if classifier is Classifier.NB:
        return train_nb(vectors, labels)
    return train_lr(vectors, labels, l2=l2)


def tune_l2(vectors, labels, grid, k=5, seed=0):
    """Pick the L2 strength from ``grid`` with the best mean F1 over stratified folds.

    Ties go to the stronger penalty (earlier in descending order).
    """
    labels = list(labels)
    folds = stratified_folds(labels, k, seed)
    best = None
    for l2 in sorted(grid, reverse=True):
        f1s = []
        for fold in range(k):
            tr = [i for i, f in enumerate(folds) if f != fold]
            te = [i for i, f in enumerate(folds) if f == fold]
            model = train_lr([vectors[i] for i in tr], [labels[i] for i in tr], l2=l2)
            preds = predict(model, [vectors[i] for i in te])
            f1s.append(score(preds, [labels[i] for i in te]).f1)
        mean = float(np.mean(f1s))
        if best is None or mean > best[0]:
            best = (mean, l2)
    return best[1]


def fit_pipeline(
    train,
    resources,
    config,
    classifier=Classifier.NB,
    *,
    assoc_data=None,
    easyadapt=False,
    source_domain=Domain.TWITTER,
    per_group_k=50,
    l2=1e-2,
    l2_grid=None,
    seed=0,
):
    """Fit every stage on ``train``.

    ``assoc_data`` (default: ``train``) is the labeled training pool the BOAW
    and BOCW vocabularies are learned from; it must never contain test data.
    With ``easyadapt`` set, instances from ``source_domain`` are mapped to the
    source block and all others to the target block.
    """
    train = list(train)
    classifier = Classifier(classifier)
    assoc = None
    if needs_associations(config):
        pool = train if assoc_data is None else list(assoc_data)
        assoc = fit_associations(pool, resources.stopwords, per_group_k)
    extractor = FeatureExtractor(config, resources.lexicons, resources.store, assoc)
    raw = extractor.extract_all(train)
    encoder = CategoricalEncoder.fit(raw, extractor.schema)
    vecs = encoder.transform_all(raw)
    if easyadapt:
        vecs = [a.flat() for a in augment_dataset(zip(vecs, _origins(train, source_domain)))]
    labels = [i.label for i in train]
    if classifier is Classifier.LR and l2_grid:
        l2 = tune_l2(vecs, labels, l2_grid, seed=seed)
    model = _train_model(classifier, vecs, labels, l2)
    return FittedPipeline(config, classifier, assoc, encoder, model, easyadapt, Domain(source_domain))


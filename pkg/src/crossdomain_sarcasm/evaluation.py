"""Baselines, cross-validation and the train/test scenario matrix."""
import enum
import json
from dataclasses import dataclass, field

import numpy as np

from .corpus import Domain, Label, stratified_folds
from .errors import ConfigError
from .metrics import EvalReport, prf, score
from .pipeline import Classifier, fit_pipeline

ALL_SARCASM_ROW = "Baseline: All Sarcasm"
RANDOM_ROW = "Baseline: Random"


class TrainSource(str, enum.Enum):
    TWITTER = "twitter"
    AMAZON = "amazon"
    BOTH = "both"
    EASYADAPT = "easyadapt"


TRAIN_TITLES = {
    TrainSource.TWITTER: "Train on Twitter",
    TrainSource.BOTH: "Train on Both",
    TrainSource.AMAZON: "Train on Amazon",
    TrainSource.EASYADAPT: "EasyAdapt",
}


@dataclass(frozen=True)
class Scenario:
    train_source: TrainSource
    test_domain: Domain
    classifier: Classifier = Classifier.NB
    config: object = None

    def __post_init__(self):
        object.__setattr__(self, "train_source", TrainSource(self.train_source))
        object.__setattr__(self, "test_domain", Domain(self.test_domain))
        object.__setattr__(self, "classifier", Classifier(self.classifier))

    @property
    def column(self):
        return f"{self.train_source.value}->{self.test_domain.value}"

    @property
    def needs_both(self):
        return self.train_source in (TrainSource.BOTH, TrainSource.EASYADAPT)


# Column layout: four ways to train for the Amazon test set, then Twitter on Twitter.
MATRIX_COLUMNS = (
    (TrainSource.TWITTER, Domain.AMAZON),
    (TrainSource.BOTH, Domain.AMAZON),
    (TrainSource.AMAZON, Domain.AMAZON),
    (TrainSource.EASYADAPT, Domain.AMAZON),
    (TrainSource.TWITTER, Domain.TWITTER),
)


# ---------------------------------------------------------------------------
# Baselines

def baseline_all_sarcasm(test, **meta):
    """Score the constant 'every instance is sarcastic' predictor."""
    meta.setdefault("row", ALL_SARCASM_ROW)
    return score([Label.SARCASTIC] * len(test), [i.label for i in test], **meta)


def random_predictions(n, positive_rate, seed):
    if not 0.0 <= positive_rate <= 1.0:
        raise ValueError("positive_rate must lie in [0, 1]")
    draws = np.random.default_rng(seed).random(n)
    return [Label.SARCASTIC if d < positive_rate else Label.NON_SARCASTIC for d in draws]


def baseline_random(test, positive_rate=0.5, seed=0, **meta):
    """Predict sarcastic independently per instance with probability ``positive_rate``."""
    meta.setdefault("row", RANDOM_ROW)
    meta.setdefault("seed", seed)
    preds = random_predictions(len(test), positive_rate, seed)
    return score(preds, [i.label for i in test], **meta)


def positive_rate_of(instances):
    labels = [i.label for i in instances]
    return labels.count(Label.SARCASTIC) / len(labels) if labels else 0.0


# ---------------------------------------------------------------------------
# Single scenario

def _require(dataset, name, scenario):
    if dataset is None:
        raise ConfigError(f"scenario {scenario.column} needs the {name} dataset")
    if dataset.split is None:
        raise ConfigError(f"the {name} dataset has no train/test split")
    return dataset


def scenario_data(scenario, twitter=None, amazon=None):
    """(train instances, test instances, association pool) for a scenario."""
    src = scenario.train_source
    if src in (TrainSource.TWITTER, TrainSource.BOTH, TrainSource.EASYADAPT):
        _require(twitter, "twitter", scenario)
    if src in (TrainSource.AMAZON, TrainSource.BOTH, TrainSource.EASYADAPT):
        _require(amazon, "amazon", scenario)
    test_set = _require(twitter if scenario.test_domain is Domain.TWITTER else amazon,
                        scenario.test_domain.value, scenario)
    if src is TrainSource.TWITTER:
        train = list(twitter.train)
    elif src is TrainSource.AMAZON:
        train = list(amazon.train)
    else:
        train = list(twitter.train) + list(amazon.train)
    pool = [i for d in (twitter, amazon) if d is not None and d.split is not None for i in d.train]
    return train, list(test_set.test), pool


def run_scenario(scenario, resources, twitter=None, amazon=None, seed=0, per_group_k=50, l2=1e-2,
                 l2_grid=None):
    """Fit on the scenario's training data and score on its test split.

    Returns ``(report, fitted_pipeline)``.
    """
    train, test, pool = scenario_data(scenario, twitter, amazon)
    fitted = fit_pipeline(
        train, resources, scenario.config, scenario.classifier,
        assoc_data=pool,
        easyadapt=scenario.train_source is TrainSource.EASYADAPT,
        source_domain=Domain.TWITTER,
        per_group_k=per_group_k, l2=l2, l2_grid=l2_grid, seed=seed,
    )
    preds = fitted.predict(test, resources)
    report = score(
        preds, [i.label for i in test],
        scenario=scenario.column, row=scenario.config.title, config=scenario.config.name,
        seed=seed, n_features=fitted.n_features, base_features=fitted.base_features,
    )
    return report, fitted


# ---------------------------------------------------------------------------
# Cross-validation

@dataclass
class CVResult:
    pooled: EvalReport
    folds: list
    fitted: list = field(default_factory=list, repr=False)

    @property
    def mean_precision(self):
        return float(np.mean([r.precision for r in self.folds]))

    @property
    def mean_recall(self):
        return float(np.mean([r.recall for r in self.folds]))

    @property
    def mean_f1(self):
        return float(np.mean([r.f1 for r in self.folds]))


def cross_validate(train, k, resources, config, classifier=Classifier.NB, seed=0, *, aux=None,
                   assoc_aux=None, easyadapt=False, folds=None, per_group_k=50, l2=1e-2,
                   l2_grid=None):
    """Stratified k-fold cross-validation over ``train``.

    Every fold refits associations, encoders, imputation statistics and the
    model on its training folds (plus ``aux``, extra out-of-fold training data
    such as the other domain). ``assoc_aux`` is further labeled data that only
    joins the association pool. ``folds`` overrides the fold assignment.
    The pooled report sums confusion counts over all folds.
    """
    train = list(train)
    aux = list(aux or [])
    assoc_aux = list(assoc_aux or [])
    if folds is None:
        folds = stratified_folds([i.label for i in train], k, seed)
    reports, fitted_all = [], []
    tp = fp = fn = tn = 0
    for fold in range(k):
        fit_part = [inst for inst, f in zip(train, folds) if f != fold] + aux
        held = [inst for inst, f in zip(train, folds) if f == fold]
        fitted = fit_pipeline(fit_part, resources, config, classifier, easyadapt=easyadapt,
                              assoc_data=fit_part + assoc_aux,
                              per_group_k=per_group_k, l2=l2, l2_grid=l2_grid, seed=seed)
        rep = score(fitted.predict(held, resources), [i.label for i in held],
                    scenario=f"cv{k}:fold{fold}", row=config.title, config=config.name, seed=seed,
                    n_features=fitted.n_features, base_features=fitted.base_features)
        reports.append(rep)
        fitted_all.append(fitted)
        tp, fp, fn, tn = tp + rep.tp, fp + rep.fp, fn + rep.fn, tn + rep.tn
    pooled = EvalReport(tp, fp, fn, tn, *prf(tp, fp, fn), scenario=f"cv{k}", row=config.title,
                        config=config.name, seed=seed)
    return CVResult(pooled, reports, fitted_all)


# ---------------------------------------------------------------------------
# Scenario matrix

def _short(x, digits):
    s = f"{x:.{digits}f}"
    return s[1:] if s.startswith("0") else s


@dataclass
class MatrixResult:
    columns: list
    reports: list
    classifier: str = "nb"
    seed: int = 0

    def rows(self):
        seen = []
        for r in self.reports:
            if r.row not in seen:
                seen.append(r.row)
        return seen

    def cell(self, row, column):
        for r in self.reports:
            if r.row == row and r.scenario == column:
                return r
        return None

    def to_json(self):
        doc = {
            "classifier": self.classifier,
            "seed": self.seed,
            "columns": list(self.columns),
            "reports": [r.to_json() for r in self.reports],
        }
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"

    def to_tsv(self):
        cols = ["row", "config", "scenario", "classifier", "tp", "fp", "fn", "tn",
                "precision", "recall", "f1", "n_features", "base_features", "seed"]
        lines = ["\t".join(cols)]
        for r in self.reports:
            d = r.to_json()
            d["classifier"] = self.classifier
            lines.append("\t".join("" if d[c] is None else
                                   (f"{d[c]:.6f}" if isinstance(d[c], float) else str(d[c])) for c in cols))
        return "\n".join(lines) + "\n"

    def to_text(self):
        def cell_text(r):
            if r is None:
                return "-"
            return f"{_short(r.precision, 2)} / {_short(r.recall, 2)} / {_short(r.f1, 3)}"

        headers = []
        for col in self.columns:
            src, test = col.split("->")
            headers.append(f"{TRAIN_TITLES[TrainSource(src)]} (test {test})")
        rows = self.rows()
        first = max([len(r) for r in rows] + [8])
        widths = [max(len(h), 20) for h in headers]
        out = [" " * first + " | " + " | ".join(h.ljust(w) for h, w in zip(headers, widths))]
        out.append("-" * len(out[0]))
        for row in rows:
            cells = [cell_text(self.cell(row, c)).ljust(w) for c, w in zip(self.columns, widths)]
            out.append(row.ljust(first) + " | " + " | ".join(cells))
        return "\n".join(out) + "\n"


def run_matrix(twitter, amazon, configs, resources, classifier=Classifier.NB, seed=0,
               baselines=("all", "random"), columns=MATRIX_COLUMNS, include_models=True,
               per_group_k=50, l2=1e-2, l2_grid=None, random_rate=None):
    """Evaluate every feature configuration under every train/test column.

    The random baseline for a column predicts sarcastic at the training prior
    of the column's test domain, or at ``random_rate`` when given (0.5 for a
    uniform coin). Baseline rows come first.
    """
    classifier = Classifier(classifier)
    columns = [(TrainSource(s), Domain(t)) for s, t in columns]
    scenarios = [Scenario(s, t, classifier, None) for s, t in columns]
    for sc in scenarios:
        scenario_data(sc, twitter, amazon)

    reports = []
    for sc in scenarios:
        test_ds = twitter if sc.test_domain is Domain.TWITTER else amazon
        test = list(test_ds.test)
        if "all" in baselines:
            reports.append(baseline_all_sarcasm(test, scenario=sc.column, seed=seed))
    for sc in scenarios:
        test_ds = twitter if sc.test_domain is Domain.TWITTER else amazon
        if "random" in baselines:
            rate = positive_rate_of(test_ds.train) if random_rate is None else random_rate
            reports.append(baseline_random(list(test_ds.test), rate, seed, scenario=sc.column))
    if include_models:
        for config in configs:
            for s, t in columns:
                sc = Scenario(s, t, classifier, config)
                rep, _ = run_scenario(sc, resources, twitter, amazon, seed, per_group_k, l2, l2_grid)
                reports.append(rep)
    return MatrixResult([sc.column for sc in scenarios], reports, classifier.value, seed)


"""Command-line entry point (``cds``).

Settings come from an optional JSON config file; command-line flags override
it. Relative paths resolve against ``$CDS_DATA_DIR`` when set, otherwise
against the directory of the config file (or the working directory for paths
given on the command line). ``--config demo`` selects the bundled demo data.
"""
import argparse
import json
import os
import sys
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Domain, RejectReason, Rejected, filter_tweet, load_dataset, split_dataset
from .errors import CdsError, ConfigError
from .evaluation import (
    MATRIX_COLUMNS,
    MatrixResult,
    Scenario,
    TrainSource,
    baseline_all_sarcasm,
    baseline_random,
    cross_validate,
    positive_rate_of,
    run_matrix,
    scenario_data,
)
from .features import AssociationModel, FeatureConfig, FeatureExtractor, fit_associations
from .lexicons import LexiconSet, load_indicators, load_polarity, load_scored, load_subjectivity, \
    load_wordlist
from .metrics import score
from .ngram_store import build_store, load_counts, save_counts
from .pipeline import Classifier, FittedPipeline, Resources, fit_pipeline, needs_associations
from .vectors import write_matrix_tsv

DEMO_DIR = Path(__file__).resolve().parent / "data"
PATH_KEYS = (
    "twitter", "amazon", "polarity_positive", "polarity_negative", "subjectivity", "scored",
    "indicators", "ngram_counts", "ngram_corpus", "stopwords",
)
DEFAULTS = {
    "groups": "all",
    "rows": None,
    "classifier": "nb",
    "scenario": None,
    "test_domain": None,
    "train_fraction": 0.8,
    "per_group_k": 50,
    "l2": 1e-2,
    "l2_grid": None,
    "ngram_max_n": 3,
    "seed": 0,
    "strict_lexicons": False,
    "uniform_random": False,
    "out": None,
}


@dataclass
class RunConfig:
    paths: dict = field(default_factory=dict)
    settings: dict = field(default_factory=lambda: dict(DEFAULTS))

    def __getattr__(self, name):
        settings = self.__dict__.get("settings", {})
        if name in settings:
            return settings[name]
        raise AttributeError(name)

    def path(self, key, required=False):
        value = self.paths.get(key)
        if value is None:
            if required:
                raise ConfigError(f"no path configured for {key!r}")
            return None
        if not Path(value).exists():
            raise ConfigError(f"{key} path does not exist: {value}")
        return Path(value)


def _resolve(value, base):
    env = os.environ.get("CDS_DATA_DIR")
    p = Path(value)
    if p.is_absolute():
        return str(p)
    if env:
        return str(Path(env) / p)
    return str(Path(base) / p) if base is not None else str(p)


def build_config(args):
    """Merge the config file and flags into a RunConfig (flags win)."""
    cfg = RunConfig()
    if args.config:
        cfg_path = DEMO_DIR / "demo_config.json" if args.config == "demo" else Path(args.config)
        try:
            with open(cfg_path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {cfg_path}: {exc}") from None
        if not isinstance(doc, dict):
            raise ConfigError("config file must hold a JSON object")
        base = cfg_path.parent
        for key, value in doc.items():
            if key in PATH_KEYS:
                cfg.paths[key] = _resolve(value, base)
            elif key in DEFAULTS:
                cfg.settings[key] = value
            else:
                raise ConfigError(f"unknown config key {key!r}")
    for key in PATH_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            cfg.paths[key] = _resolve(value, None)
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None and value is not False:
            cfg.settings[key] = value
    if getattr(args, "groups", None):
        cfg.settings["rows"] = None
    return cfg


# ---------------------------------------------------------------------------
# Resource loading

def _warn(msg):
    print(f"warning: {msg}", file=sys.stderr)


def load_resources(cfg):
    pos, neg = cfg.path("polarity_positive"), cfg.path("polarity_negative")
    polarity = None
    if pos is not None or neg is not None:
        if pos is None or neg is None:
            raise ConfigError("polarity_positive and polarity_negative must be given together")
        polarity = load_polarity(pos, neg, strict=cfg.strict_lexicons)
        for w in polarity.warnings:
            _warn(w)
    subjectivity = None
    if cfg.path("subjectivity") is not None:
        subjectivity = load_subjectivity(cfg.path("subjectivity"))
        for w in subjectivity.warnings:
            _warn(w)
    scored = load_scored(cfg.path("scored")) if cfg.path("scored") is not None else None
    indicators = load_indicators(cfg.path("indicators"))
    store = None
    if cfg.path("ngram_counts") is not None:
        store = load_counts(cfg.path("ngram_counts"))
    elif cfg.path("ngram_corpus") is not None:
        store = build_store(cfg.path("ngram_corpus"), int(cfg.ngram_max_n))
    stopwords = load_wordlist(cfg.path("stopwords")) if cfg.path("stopwords") is not None else frozenset()
    return Resources(LexiconSet(polarity, subjectivity, scored, indicators), store, stopwords)


def load_split(cfg, key):
    """Load a configured dataset, splitting it when the file carries no split."""
    path = cfg.path(key)
    if path is None:
        return None
    ds = load_dataset(path)
    if ds.split is None:
        ds = split_dataset(ds, float(cfg.train_fraction), int(cfg.seed))
    return ds


def _configs(cfg):
    rows = cfg.rows if cfg.rows else [cfg.groups]
    return [FeatureConfig.parse(r) for r in rows]


def _columns(cfg):
    cols = list(MATRIX_COLUMNS)
    if cfg.scenario:
        cols = [c for c in cols if c[0] is TrainSource(cfg.scenario)]
    if cfg.test_domain:
        cols = [c for c in cols if c[1] is Domain(cfg.test_domain)]
    if not cols:
        raise ConfigError("no scenario matches the --scenario/--test-domain selection")
    return cols


def _require_datasets(cfg, columns):
    needed = set()
    for src, test in columns:
        needed.add(test.value)
        if src in (TrainSource.BOTH, TrainSource.EASYADAPT):
            needed.update(("twitter", "amazon"))
        elif src in (TrainSource.TWITTER, TrainSource.AMAZON):
            needed.add(src.value)
    for key in sorted(needed):
        cfg.path(key, required=True)


def _out_dir(cfg):
    if cfg.out is None:
        return None
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _emit_json(obj, out, filename):
    text = json.dumps(obj, indent=1, sort_keys=True) + "\n"
    if out is not None:
        _write(out / filename, text)
    sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Commands

def cmd_filter_tweets(args):
    tally = Counter({"accepted": 0, **{r.value: 0 for r in RejectReason}})
    rows = []
    with open(args.input, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            result = filter_tweet(raw.rstrip("\n"))
            if isinstance(result, Rejected):
                tally[result.reason.value] += 1
                continue
            tally["accepted"] += 1
            rows.append({"id": f"tweet-{lineno:06d}", "text": result.text, "domain": "twitter",
                         "label": result.label.value, "source_hashtag": result.hashtag})
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")
    sys.stdout.write(json.dumps(dict(tally), indent=1, sort_keys=True) + "\n")
    return 0


def cmd_count_ngrams(args):
    store = build_store(args.corpus, args.max_n)
    save_counts(store, args.output)
    print(f"wrote {sum(store.totals.values())} n-gram occurrences to {args.output}", file=sys.stderr)
    return 0


def _train_pool(cfg):
    pool = []
    for key in ("twitter", "amazon"):
        ds = load_split(cfg, key)
        if ds is not None:
            pool.extend(ds.train)
    if not pool:
        raise ConfigError("fit-assoc needs at least one dataset")
    return pool


def cmd_fit_assoc(args, cfg):
    pool = _train_pool(cfg)
    resources = load_resources(cfg)
    assoc = fit_associations(pool, resources.stopwords, int(cfg.per_group_k))
    out = _out_dir(cfg)
    doc = assoc.to_json()
    if out is None:
        _emit_json(doc, None, "assoc.json")
        return 0
    _write(out / "assoc.json", json.dumps(doc, indent=1, sort_keys=True) + "\n")
    print(f"fitted {len(doc['boaw_vocab'])} BOAW and {len(doc['bocw_vocab'])} BOCW words "
          f"on {len(pool)} instances; wrote {out / 'assoc.json'}")
    return 0


def cmd_extract(args, cfg):
    config = FeatureConfig.parse(cfg.groups)
    assoc = None
    if args.assoc:
        with open(args.assoc, encoding="utf-8") as fh:
            assoc = AssociationModel.from_json(json.load(fh))
    if needs_associations(config) and assoc is None:
        group = "boaw" if "boaw" in config else "bocw"
        raise ConfigError(f"feature group {group} (BOAW/BOCW) needs fitted associations; pass --assoc")
    if args.input:
        instances = list(load_dataset(args.input))
    else:
        instances = []
        for key in ("twitter", "amazon"):
            if cfg.path(key) is not None:
                instances.extend(load_dataset(cfg.path(key)))
        if not instances:
            raise ConfigError("extract needs --input or a configured dataset")
    resources = load_resources(cfg)
    extractor = FeatureExtractor(config, resources.lexicons, resources.store, assoc)
    vectors = extractor.extract_all(instances)
    out = _out_dir(cfg) or Path(".")
    write_matrix_tsv(out / "features.tsv", vectors, extractor.schema,
                     ids=[i.id for i in instances], labels=[i.label.value for i in instances])
    _write(out / "schema.json", json.dumps(extractor.schema.to_json(), indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(vectors)} x {len(extractor.schema)} matrix to {out / 'features.tsv'}",
          file=sys.stderr)
    return 0


def _single_scenario(cfg, config=None):
    source = TrainSource(cfg.scenario or "twitter")
    test = Domain(cfg.test_domain or "amazon")
    _require_datasets(cfg, [(source, test)])
    return Scenario(source, test, Classifier(cfg.classifier), config)


def cmd_train(args, cfg):
    config = FeatureConfig.parse(cfg.groups)
    sc = _single_scenario(cfg, config)
    twitter, amazon = load_split(cfg, "twitter"), load_split(cfg, "amazon")
    train, _, pool = scenario_data(sc, twitter, amazon)
    resources = load_resources(cfg)
    fitted = fit_pipeline(train, resources, config, sc.classifier, assoc_data=pool,
                          easyadapt=sc.train_source is TrainSource.EASYADAPT,
                          per_group_k=int(cfg.per_group_k), l2=float(cfg.l2), l2_grid=cfg.l2_grid,
                          seed=int(cfg.seed))
    out = _out_dir(cfg) or Path(".")
    fitted.save(out / "model.json")
    print(f"trained {sc.classifier.value} on {len(train)} instances ({sc.column}); "
          f"wrote {out / 'model.json'}", file=sys.stderr)
    return 0


def cmd_evaluate(args, cfg):
    out = _out_dir(cfg)
    if args.folds:
        config = FeatureConfig.parse(cfg.groups)
        sc = _single_scenario(cfg, config)
        twitter, amazon = load_split(cfg, "twitter"), load_split(cfg, "amazon")
        train_ds = twitter if sc.test_domain is Domain.TWITTER else amazon
        other = amazon if train_ds is twitter else twitter
        other_train = [] if other is None else list(other.train)
        aux = other_train if sc.train_source in (TrainSource.BOTH, TrainSource.EASYADAPT) else []
        resources = load_resources(cfg)
        result = cross_validate(
            train_ds.train, args.folds, resources, config, sc.classifier, int(cfg.seed), aux=aux,
            assoc_aux=[] if aux else other_train,
            easyadapt=sc.train_source is TrainSource.EASYADAPT, per_group_k=int(cfg.per_group_k),
            l2=float(cfg.l2), l2_grid=cfg.l2_grid,
        )
        doc = {"pooled": result.pooled.to_json(), "folds": [r.to_json() for r in result.folds],
               "mean_precision": result.mean_precision, "mean_recall": result.mean_recall,
               "mean_f1": result.mean_f1}
        _emit_json(doc, out, "cv_report.json")
        return 0
    if not args.model:
        raise ConfigError("evaluate needs --model (or --folds K for cross-validation)")
    fitted = FittedPipeline.load(args.model)
    test_domain = Domain(cfg.test_domain or "amazon")
    ds = load_split(cfg, test_domain.value)
    if ds is None:
        raise ConfigError(f"no {test_domain.value} dataset configured")
    resources = load_resources(cfg)
    test = list(ds.test)
    report = score(fitted.predict(test, resources), [i.label for i in test],
                   scenario=f"model->{test_domain.value}", row=fitted.config.title,
                   config=fitted.config.name, seed=int(cfg.seed), n_features=fitted.n_features,
                   base_features=fitted.base_features)
    _emit_json(report.to_json(), out, "report.json")
    return 0


def _write_matrix(result, out):
    if out is not None:
        _write(out / "report.tsv", result.to_tsv())
        _write(out / "report.json", result.to_json())
        _write(out / "report.txt", result.to_text())
    sys.stdout.write(result.to_text())


def cmd_experiment(args, cfg):
    columns = _columns(cfg)
    _require_datasets(cfg, columns)
    configs = _configs(cfg)
    if cfg.l2_grid is not None and not isinstance(cfg.l2_grid, list):
        raise ConfigError("l2_grid must be a list of numbers")
    baseline = args.baseline
    baselines = {"all": ("all",), "random": ("random",), "only": ("all", "random"), None: ("all", "random")}
    twitter, amazon = load_split(cfg, "twitter"), load_split(cfg, "amazon")
    include_models = baseline != "only"
    resources = load_resources(cfg) if include_models else Resources()
    result = run_matrix(twitter, amazon, configs, resources, Classifier(cfg.classifier), int(cfg.seed),
                        baselines=baselines[baseline], columns=columns, include_models=include_models,
                        per_group_k=int(cfg.per_group_k), l2=float(cfg.l2), l2_grid=cfg.l2_grid,
                        random_rate=0.5 if cfg.uniform_random else None)
    _write_matrix(result, _out_dir(cfg))
    return 0


def cmd_baseline(args, cfg):
    domains = [Domain(cfg.test_domain)] if cfg.test_domain else [Domain.AMAZON, Domain.TWITTER]
    for d in domains:
        cfg.path(d.value, required=True)
    kinds = {"all": ("all",), "random": ("random",)}.get(args.baseline, ("all", "random"))
    reports = []
    for d in domains:
        ds = load_split(cfg, d.value)
        test = list(ds.test)
        column = f"{d.value}->{d.value}"
        if "all" in kinds:
            reports.append(baseline_all_sarcasm(test, scenario=column, seed=int(cfg.seed)))
        if "random" in kinds:
            rate = 0.5 if cfg.uniform_random else positive_rate_of(ds.train)
            reports.append(baseline_random(test, rate, int(cfg.seed), scenario=column))
    columns = [f"{d.value}->{d.value}" for d in domains]
    _write_matrix(MatrixResult(columns, reports, "none", int(cfg.seed)), _out_dir(cfg))
    return 0


# ---------------------------------------------------------------------------
# Argument parsing

def _common(p):
    p.add_argument("--config", help="JSON run configuration ('demo' for the bundled data)")
    p.add_argument("--seed", type=int)
    p.add_argument("--groups", help="comma-separated feature groups, or 'general' / 'all'")
    p.add_argument("--classifier", choices=[c.value for c in Classifier])
    p.add_argument("--scenario", choices=[s.value for s in TrainSource])
    p.add_argument("--test-domain", dest="test_domain", choices=[d.value for d in Domain])
    p.add_argument("--out", help="output directory")
    p.add_argument("--strict-lexicons", dest="strict_lexicons", action="store_true",
                   help="fail on words listed as both positive and negative")
    p.add_argument("--twitter", help="Twitter dataset (JSONL or TSV)")
    p.add_argument("--amazon", help="Amazon dataset (JSONL or TSV)")
    p.add_argument("--ngram-counts", dest="ngram_counts")
    p.add_argument("--ngram-corpus", dest="ngram_corpus")
    p.add_argument("--stopwords")


def make_parser():
    parser = argparse.ArgumentParser(prog="cds", description="Cross-domain sarcasm detection experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("filter-tweets", help="filter raw tweets and label them by hashtag")
    p.add_argument("input")
    p.add_argument("output")

    p = sub.add_parser("count-ngrams", help="build an n-gram count file from a text corpus")
    p.add_argument("corpus")
    p.add_argument("output")
    p.add_argument("--max-n", dest="max_n", type=int, default=3)

    p = sub.add_parser("fit-assoc", help="fit BOAW/BOCW vocabularies on the training splits")
    _common(p)

    p = sub.add_parser("extract", help="write a feature matrix and schema")
    _common(p)
    p.add_argument("--input", help="dataset to featurize (default: configured datasets)")
    p.add_argument("--assoc", help="association model from fit-assoc")

    p = sub.add_parser("train", help="fit a pipeline for one scenario and save it")
    _common(p)

    p = sub.add_parser("evaluate", help="score a saved model, or cross-validate")
    _common(p)
    p.add_argument("--model")
    p.add_argument("--folds", type=int)

    for name, text in (("experiment", "run the scenario matrix"), ("baseline", "score the baselines")):
        p = sub.add_parser(name, help=text)
        _common(p)
        p.add_argument("--baseline", choices=["all", "random", "only"])
        p.add_argument("--uniform-random", dest="uniform_random", action="store_true",
                       help="random baseline flips a fair coin instead of using the training prior")
    return parser


COMMANDS = {
    "fit-assoc": cmd_fit_assoc,
    "extract": cmd_extract,
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "experiment": cmd_experiment,
    "baseline": cmd_baseline,
}


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        if args.command == "filter-tweets":
            return cmd_filter_tweets(args)
        if args.command == "count-ngrams":
            return cmd_count_ngrams(args)
        cfg = build_config(args)
        return COMMANDS[args.command](args, cfg)
    except (CdsError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Cross-domain sarcasm detection with EasyAdapt feature augmentation."""
from .adapt import Origin, augment, augment_dataset
from .classify import predict, predict_lr, predict_nb, train_lr, train_nb
from .corpus import Dataset, Domain, Instance, Label, filter_tweet, load_dataset, split_dataset
from .evaluation import Scenario, TrainSource, baseline_all_sarcasm, baseline_random, run_matrix, run_scenario
from .features import FeatureConfig, FeatureExtractor, FeatureGroup, extract, feature_schema, fit_associations
from .lexicons import LexiconSet
from .metrics import EvalReport, score
from .ngram_store import NgramStore, PmiQuery, build_store, pmi
from .pipeline import Classifier, Resources, fit_pipeline

__version__ = "0.1.0"

__all__ = [
    "augment",
    "augment_dataset",
    "baseline_all_sarcasm",
    "baseline_random",
    "build_store",
    "Classifier",
    "Dataset",
    "Domain",
    "EvalReport",
    "extract",
    "feature_schema",
    "FeatureConfig",
    "FeatureExtractor",
    "FeatureGroup",
    "filter_tweet",
    "fit_associations",
    "fit_pipeline",
    "Instance",
    "Label",
    "LexiconSet",
    "load_dataset",
    "NgramStore",
    "Origin",
    "pmi",
    "PmiQuery",
    "predict",
    "predict_lr",
    "predict_nb",
    "Resources",
    "run_matrix",
    "run_scenario",
    "Scenario",
    "score",
    "split_dataset",
    "train_lr",
    "train_nb",
    "TrainSource",
]

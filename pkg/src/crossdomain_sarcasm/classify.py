"""Naive Bayes and L2-regularized logistic regression over feature vectors.

Naive Bayes models real-valued features with per-class Gaussians and binary
features with plus-one smoothed Bernoullis; missing values are skipped both
when fitting and when predicting. Logistic regression imputes missing values
with the training mean, standardizes, and is fit by fixed-step gradient
descent.
"""
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .corpus import Label
from .errors import (
    EmptyTrainingError,
    NonConvergenceError,
    SchemaMismatchError,
    SingleClassError,
)
from .vectors import FeatureKind, Schema, check_schema, to_matrix

VAR_FLOOR = 1e-9
MODEL_FORMAT = "crossdomain-sarcasm-model"
MODEL_VERSION = 1

# Class order doubles as the tie-break: index 0 wins exact posterior ties.
CLASS_ORDER = (Label.NON_SARCASTIC, Label.SARCASTIC)


def _prepare(vectors, labels):
    if not vectors:
        raise EmptyTrainingError("no training instances")
    if len(vectors) != len(labels):
        raise ValueError("need one label per vector")
    schema = check_schema(vectors)
    X = to_matrix(vectors, schema)
    y = [Label(l) for l in labels]
    classes = tuple(c for c in CLASS_ORDER if c in set(y))
    if len(classes) < 2:
        raise SingleClassError(f"training labels contain a single class ({classes[0].value})")
    return schema, X, np.array([classes.index(l) for l in y])


def _row(model_schema, vector):
    if vector.schema != model_schema:
        raise SchemaMismatchError("vector schema differs from the model's training schema")
    return to_matrix([vector], model_schema)


# ---------------------------------------------------------------------------
# Naive Bayes

@dataclass
class NaiveBayesModel:
    schema: Schema
    classes: tuple
    priors: np.ndarray
    means: np.ndarray
    variances: np.ndarray
    bernoulli: np.ndarray
    var_floor: float = VAR_FLOOR

    @property
    def real_mask(self):
        return np.array([k is FeatureKind.REAL for k in self.schema.kinds], dtype=bool)

    def log_joint(self, X):
        """Unnormalized log posteriors, shape (n, n_classes)."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        n, f = X.shape
        out = np.tile(np.log(self.priors), (n, 1))
        if f == 0:
            return out
        real = self.real_mask
        has_params = np.where(
            real, ~np.isnan(self.means).any(axis=0), ~np.isnan(self.bernoulli).any(axis=0)
        )
        for c in range(len(self.classes)):
            ll = np.zeros((n, f))
            if real.any():
                m, v = self.means[c, real], self.variances[c, real]
                x = X[:, real]
                ll[:, real] = -0.5 * np.log(2 * math.pi * v) - (x - m) ** 2 / (2 * v)
            if (~real).any():
                p = self.bernoulli[c, ~real]
                x = X[:, ~real]
                with np.errstate(invalid="ignore"):
                    ll[:, ~real] = np.where(x > 0.5, np.log(p), np.log1p(-p))
            valid = ~np.isnan(X) & has_params
            out[:, c] += np.where(valid, ll, 0.0).sum(axis=1)
        return out

    def predict_proba(self, X):
        lj = self.log_joint(X)
        top = lj.max(axis=1, keepdims=True)
        e = np.exp(lj - top)
        return e / e.sum(axis=1, keepdims=True)

    def predict_matrix(self, X):
        lj = self.log_joint(X)
        return [self.classes[i] for i in lj.argmax(axis=1)]


def _masked_stats(X):
    mask = ~np.isnan(X)
    count = mask.sum(axis=0)
    filled = np.where(mask, X, 0.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        mean = np.where(count > 0, filled.sum(axis=0) / np.maximum(count, 1), np.nan)
        sq = np.where(mask, (X - mean) ** 2, 0.0).sum(axis=0)
        var = np.where(count > 0, sq / np.maximum(count, 1), np.nan)
    return count, mean, var


def train_nb(vectors, labels, var_floor=VAR_FLOOR):
    """Maximum-likelihood Naive Bayes over the non-missing values of each feature."""
    schema, X, y = _prepare(vectors, labels)
    classes = CLASS_ORDER
    n_classes, f = len(classes), X.shape[1]
    real = np.array([k is FeatureKind.REAL for k in schema.kinds], dtype=bool)
    priors = np.bincount(y, minlength=n_classes) / len(y)
    means = np.full((n_classes, f), np.nan)
    variances = np.full((n_classes, f), np.nan)
    bernoulli = np.full((n_classes, f), np.nan)
    for c in range(n_classes):
        rows = X[y == c]
        count, mean, var = _masked_stats(rows)
        means[c, real] = mean[real]
        variances[c, real] = np.maximum(var[real], var_floor)
        ones = np.where(np.isnan(rows), 0.0, rows > 0.5).sum(axis=0)
        with np.errstate(invalid="ignore"):
            p = np.where(count > 0, (ones + 1.0) / (count + 2.0), np.nan)
        bernoulli[c, ~real] = p[~real]
    return NaiveBayesModel(schema, classes, priors, means, variances, bernoulli, var_floor)


def predict_nb(model, vector):
    """Return ``(label, {label: posterior})`` for one vector."""
    lj = model.log_joint(_row(model.schema, vector))[0]
    proba = np.exp(lj - lj.max())
    proba /= proba.sum()
    return model.classes[int(np.argmax(lj))], dict(zip(model.classes, proba.tolist()))


# ---------------------------------------------------------------------------
# Logistic regression

def lr_objective(params, Z, y, l2):
    """Mean log-loss plus ``l2/2 * |w|^2`` (bias unpenalized) and its gradient.

    ``Z`` carries a trailing column of ones for the bias; ``params`` is
    ``[w..., bias]``.
    """
    z = Z @ params
    n = len(y)
    w = params[:-1]
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * w @ w)
    resid = _sigmoid(z) - y
    grad = Z.T @ resid / n
    grad[:-1] += l2 * w
    return loss, grad


def _sigmoid(z):
    return np.exp(-np.logaddexp(0.0, -z))


@dataclass
class LogisticModel:
    schema: Schema
    weights: np.ndarray
    bias: float
    l2: float
    impute: np.ndarray
    center: np.ndarray
    scale: np.ndarray
    n_iter: int = 0
    grad_norm: float = 0.0
    loss_history: list = field(default_factory=list, repr=False)
    classes: tuple = CLASS_ORDER

    def design(self, X):
        """Impute and standardize raw rows the way the training data was."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        X = np.where(np.isnan(X), self.impute, X)
        return (X - self.center) / self.scale

    def predict_proba(self, X):
        """Probability of the positive (sarcastic) class for each row."""
        return _sigmoid(self.design(X) @ self.weights + self.bias)

    def predict_matrix(self, X):
        return [Label.SARCASTIC if p >= 0.5 else Label.NON_SARCASTIC for p in self.predict_proba(X)]


def train_lr(vectors, labels, l2=1e-2, tol=1e-6, max_iter=200_000, standardize=True, track_loss=False):
    """Fit L2-regularized logistic regression by gradient descent with step 1/L.

    L bounds the Lipschitz constant of the gradient, so the loss never
    increases between steps. Stops once the gradient norm is at most ``tol``.
    """
    if l2 <= 0:
        raise ValueError("l2 must be positive")
    schema, X, y_idx = _prepare(vectors, labels)
    y = (y_idx == CLASS_ORDER.index(Label.SARCASTIC)).astype(float)
    _, impute, _ = _masked_stats(X)
    impute = np.nan_to_num(impute, nan=0.0)
    X = np.where(np.isnan(X), impute, X)
    if standardize:
        center = X.mean(axis=0)
        scale = X.std(axis=0)
        scale[scale == 0] = 1.0
    else:
        center = np.zeros(X.shape[1])
        scale = np.ones(X.shape[1])
    Z = np.hstack([(X - center) / scale, np.ones((len(y), 1))])
    n = len(y)
    lipschitz = np.linalg.norm(Z, 2) ** 2 / (4 * n) + l2
    step = 1.0 / lipschitz

    params = np.zeros(Z.shape[1])
    history = []
    for it in range(max_iter + 1):
        loss, grad = lr_objective(params, Z, y, l2)
        if track_loss:
            history.append(loss)
        gnorm = float(np.linalg.norm(grad))
        if gnorm <= tol:
            break
        if it == max_iter:
            raise NonConvergenceError(gnorm, max_iter)
        params = params - step * grad
    return LogisticModel(
        schema, params[:-1].copy(), float(params[-1]), l2, impute, center, scale, it, gnorm, history
    )


def predict_lr(model, vector):
    """Return ``(label, probability of sarcastic)``; sarcastic iff probability >= 0.5."""
    p = float(model.predict_proba(_row(model.schema, vector))[0])
    return (Label.SARCASTIC if p >= 0.5 else Label.NON_SARCASTIC), p


def predict(model, vectors):
    """Labels for a batch of vectors, for either model type."""
    if not vectors:
        return []
    schema = check_schema(vectors)
    if schema != model.schema:
        raise SchemaMismatchError("vector schema differs from the model's training schema")
    return model.predict_matrix(to_matrix(vectors, schema))


# ---------------------------------------------------------------------------
# Serialization

def _floats(arr):
    return [None if math.isnan(x) else float(x) for x in np.ravel(arr)]


def _array(values, shape=None):
    arr = np.array([np.nan if x is None else x for x in values], dtype=float)
    return arr.reshape(shape) if shape is not None else arr


def model_to_json(model):
    doc = {"format": MODEL_FORMAT, "version": MODEL_VERSION, "schema": model.schema.to_json(),
           "classes": [c.value for c in model.classes]}
    if isinstance(model, NaiveBayesModel):
        doc.update(
            type="nb",
            priors=_floats(model.priors),
            means=_floats(model.means),
            variances=_floats(model.variances),
            bernoulli=_floats(model.bernoulli),
            var_floor=model.var_floor,
        )
    elif isinstance(model, LogisticModel):
        doc.update(
            type="lr",
            weights=_floats(model.weights),
            bias=model.bias,
            l2=model.l2,
            impute=_floats(model.impute),
            center=_floats(model.center),
            scale=_floats(model.scale),
            n_iter=model.n_iter,
            grad_norm=model.grad_norm,
        )
    else:
        raise TypeError(f"cannot serialize {type(model).__name__}")
    return doc


def model_from_json(doc):
    if doc.get("format") != MODEL_FORMAT:
        raise ValueError("not a serialized model document")
    if doc.get("version") != MODEL_VERSION:
        raise ValueError(f"unsupported model version {doc.get('version')}")
    schema = Schema.from_json(doc["schema"])
    classes = tuple(Label(c) for c in doc["classes"])
    f = len(schema)
    if doc["type"] == "nb":
        shape = (len(classes), f)
        return NaiveBayesModel(
            schema, classes, _array(doc["priors"]), _array(doc["means"], shape),
            _array(doc["variances"], shape), _array(doc["bernoulli"], shape), doc["var_floor"],
        )
    if doc["type"] == "lr":
        return LogisticModel(
            schema, _array(doc["weights"]), doc["bias"], doc["l2"], _array(doc["impute"]),
            _array(doc["center"]), _array(doc["scale"]), doc["n_iter"], doc["grad_norm"], [], classes,
        )
    raise ValueError(f"unknown model type {doc['type']!r}")


def save_model(model, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_json(model), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        return model_from_json(json.load(fh))

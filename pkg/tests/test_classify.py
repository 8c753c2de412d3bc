import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crossdomain_sarcasm.classify import (
    CLASS_ORDER,
    VAR_FLOOR,
    LogisticModel,
    load_model,
    lr_objective,
    predict,
    predict_lr,
    predict_nb,
    save_model,
    train_lr,
    train_nb,
)
from crossdomain_sarcasm.errors import (
    EmptyTrainingError,
    NonConvergenceError,
    SchemaMismatchError,
    SingleClassError,
)
from crossdomain_sarcasm.vectors import FeatureKind, FeatureVector, Schema

from conftest import N, S
from oracles import all_binary_inputs, bernoulli_nb_posterior, finite_diff

R, B = FeatureKind.REAL, FeatureKind.BINARY


def real_vecs(rows, names=None):
    names = names or [f"f{i}" for i in range(len(rows[0]))]
    schema = Schema.of(*[(n, R) for n in names])
    return [FeatureVector(schema, tuple(r)) for r in rows]


def bin_vecs(rows):
    schema = Schema.of(*[(f"b{i}", B) for i in range(len(rows[0]))])
    return [FeatureVector(schema, tuple(int(x) for x in r)) for r in rows]


# -- Naive Bayes ----------------------------------------------------------------

def test_nb_mle_hand_fixture():
    vecs = real_vecs([[1.0], [3.0], [2.0], [6.0]])
    m = train_nb(vecs, [S, S, N, N])
    s, n = CLASS_ORDER.index(S), CLASS_ORDER.index(N)
    assert m.means[s, 0] == 2.0 and m.variances[s, 0] == 1.0
    assert m.means[n, 0] == 4.0 and m.variances[n, 0] == 4.0
    assert m.priors.tolist() == [0.5, 0.5]


def test_nb_posterior_matches_bayes_by_hand():
    vecs = real_vecs([[1.0], [3.0], [2.0], [6.0]])
    m = train_nb(vecs, [S, S, N, N])
    x = 2.5

    def gauss(x, mu, var):
        return math.exp(-(x - mu) ** 2 / (2 * var)) / math.sqrt(2 * math.pi * var)

    ps, pn = 0.5 * gauss(x, 2.0, 1.0), 0.5 * gauss(x, 4.0, 4.0)
    label, post = predict_nb(m, real_vecs([[x]])[0])
    assert post[S] == pytest.approx(ps / (ps + pn), abs=1e-12)
    assert label is S


def test_nb_symmetric_tie():
    vecs = real_vecs([[1.0], [3.0], [1.0], [3.0]])
    m = train_nb(vecs, [S, S, N, N])
    label, post = predict_nb(m, real_vecs([[7.0]])[0])
    assert post[S] == pytest.approx(0.5) and post[N] == pytest.approx(0.5)
    assert label is N


def test_nb_all_missing_gives_priors():
    vecs = real_vecs([[1.0, 0.0], [3.0, 1.0], [2.0, 5.0]])
    m = train_nb(vecs, [S, N, N])
    _, post = predict_nb(m, real_vecs([[None, None]])[0])
    assert post[S] == pytest.approx(1 / 3) and post[N] == pytest.approx(2 / 3)


def test_nb_skips_missing_in_training():
    vecs = real_vecs([[1.0], [None], [3.0], [2.0], [6.0]])
    m = train_nb(vecs, [S, S, S, N, N])
    assert m.means[CLASS_ORDER.index(S), 0] == 2.0


def test_nb_var_floor():
    m = train_nb(real_vecs([[1.0], [1.0], [2.0], [3.0]]), [S, S, N, N])
    assert m.variances.min() >= VAR_FLOOR


def test_nb_errors():
    with pytest.raises(SingleClassError):
        train_nb(real_vecs([[1.0], [2.0]]), [S, S])
    with pytest.raises(EmptyTrainingError):
        train_nb([], [])
    m = train_nb(real_vecs([[1.0], [2.0]]), [S, N])
    with pytest.raises(SchemaMismatchError):
        predict_nb(m, real_vecs([[1.0]], names=["other"])[0])


@pytest.mark.parametrize("f", range(1, 7))
def test_nb_bernoulli_matches_brute_force(f):
    rng = np.random.default_rng(f)
    X = rng.integers(0, 2, size=(15, f))
    y = [S if v else N for v in rng.integers(0, 2, size=15)]
    y[0], y[1] = S, N
    m = train_nb(bin_vecs(X), y)
    yi = [1 if lab is S else 0 for lab in y]
    for x in all_binary_inputs(f):
        _, post = predict_nb(m, bin_vecs([x])[0])
        assert post[S] == pytest.approx(bernoulli_nb_posterior(X.tolist(), yi, x), abs=1e-9)
        assert post[S] + post[N] == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_nb_affine_invariance(seed):
    rng = np.random.default_rng(seed)
    n, f = 20, 3
    X = rng.normal(size=(n, f)) * rng.uniform(0.5, 3, size=f)
    y = [S] * 10 + [N] * 10
    Xt = rng.normal(size=(10, f))
    a = rng.uniform(0.2, 5, size=f) * rng.choice([-1, 1], size=f)
    b = rng.uniform(-10, 10, size=f)
    m1 = train_nb(real_vecs(X.tolist()), y)
    m2 = train_nb(real_vecs((X * a + b).tolist()), y)
    assert predict(m1, real_vecs(Xt.tolist())) == predict(m2, real_vecs((Xt * a + b).tolist()))


# -- Logistic regression ----------------------------------------------------------

FIVE = [[0.5, 1.0], [1.5, -0.5], [-1.0, 0.3], [2.0, 2.0], [-0.7, -1.2]]
FIVE_Y = [S, N, N, S, N]


def test_lr_gradient_finite_difference():
    m = train_lr(real_vecs(FIVE), FIVE_Y, l2=0.1)
    Z = np.hstack([m.design(np.array(FIVE)), np.ones((5, 1))])
    y = np.array([1.0 if lab is S else 0.0 for lab in FIVE_Y])
    params = np.append(m.weights, m.bias)
    _, grad = lr_objective(params, Z, y, 0.1)
    numeric = finite_diff(lambda p: lr_objective(np.array(p), Z, y, 0.1)[0], params.tolist())
    assert np.max(np.abs(grad - np.array(numeric))) < 1e-6
    assert np.linalg.norm(grad) <= 1e-6


@settings(max_examples=20, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=3, max_size=3), st.floats(0.01, 2))
def test_lr_objective_gradient_anywhere(params, l2):
    Z = np.hstack([np.array(FIVE), np.ones((5, 1))])
    y = np.array([1.0, 0, 0, 1, 0])
    _, grad = lr_objective(np.array(params), Z, y, l2)
    numeric = finite_diff(lambda p: lr_objective(np.array(p), Z, y, l2)[0], params)
    assert np.max(np.abs(grad - np.array(numeric))) < 1e-6


def test_lr_separable():
    m = train_lr(real_vecs([[-1.0], [1.0]]), [N, S], l2=1e-3)
    assert predict(m, real_vecs([[-1.0], [1.0]])) == [N, S]


def test_lr_constant_features():
    m = train_lr(real_vecs([[2.0], [2.0], [2.0]]), [S, N, N], l2=0.1)
    assert abs(m.weights[0]) < 1e-9
    assert predict(m, real_vecs([[2.0]])) == [N]


def test_lr_loss_non_increasing():
    m = train_lr(real_vecs(FIVE), FIVE_Y, l2=0.05, track_loss=True)
    h = np.array(m.loss_history)
    assert np.all(np.diff(h) <= 1e-15)


def test_lr_nonconvergence():
    with pytest.raises(NonConvergenceError) as exc:
        train_lr(real_vecs(FIVE), FIVE_Y, l2=0.05, max_iter=3)
    assert exc.value.grad_norm > 0


def test_lr_missing_imputed_with_mean():
    m = train_lr(real_vecs([[1.0], [None], [3.0], [0.0]]), [S, S, N, N], l2=0.1)
    assert m.impute[0] == pytest.approx(4 / 3)


def test_predict_lr_direct_evaluation():
    schema = Schema.of(("a", R), ("b", R))
    m = LogisticModel(schema, np.array([1.0, -1.0]), 0.0, 1.0, np.zeros(2), np.zeros(2), np.ones(2))
    label, p = predict_lr(m, FeatureVector(schema, (2.0, 1.0)))
    assert p == pytest.approx(1 / (1 + math.exp(-1)), abs=1e-12)
    assert round(p, 4) == 0.7311 and label is S
    zero = LogisticModel(schema, np.zeros(2), 0.0, 1.0, np.zeros(2), np.zeros(2), np.ones(2))
    assert predict_lr(zero, FeatureVector(schema, (5.0, -3.0))) == (S, 0.5)
    big = LogisticModel(schema, np.zeros(2), 50.0, 1.0, np.zeros(2), np.zeros(2), np.ones(2))
    assert predict_lr(big, FeatureVector(schema, (0.0, 0.0)))[1] > 1 - 1e-12


def test_model_round_trip(tmp_path):
    vecs = real_vecs([[1.0, None], [3.0, 1.0], [2.0, 0.0], [6.0, 1.0]])
    y = [S, S, N, N]
    for model in (train_nb(vecs, y), train_lr(vecs, y, l2=0.1)):
        save_model(model, tmp_path / "m.json")
        back = load_model(tmp_path / "m.json")
        assert predict(back, vecs) == predict(model, vecs)

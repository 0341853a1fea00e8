"""The two classifiers, built from scratch.

Multilayer perceptron: one sigmoid hidden layer, softmax output over the
four traffic classes, trained with plain seeded mini-batch gradient
descent on cross-entropy.  Random forest: bootstrap-sampled CART trees
with per-split random feature subsets and Gini split selection, grown by
the kernel backend.

Everything is deterministic given (rows, config): per-tree seeds are
derived from the config seed so serial and parallel training produce
identical forests.  Ties always break toward the lowest class index.
"""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ._kernels import build_tree
from .features import CLASS_COUNT, FeatureRow, TrafficClass, rows_to_matrix


class DegenerateDataset(Exception):
    """Training data that cannot support the requested model."""


class NonFiniteLoss(Exception):
    """Training loss left the finite range (learning rate too high)."""


class DimensionMismatch(Exception):
    """A feature vector whose length does not match the model."""


@dataclass
class TrainConfig:
    rf_trees: int = 100
    rf_features_per_split: Optional[int] = None  # default: floor(sqrt(dim))
    mlp_hidden: int = 100
    mlp_learning_rate: float = 0.01
    mlp_batch: int = 200
    mlp_max_epochs: int = 200
    mlp_plateau_tol: float = 1e-4
    mlp_plateau_patience: int = 10
    seed: int = 0

    def __post_init__(self):
        for name in ("rf_trees", "mlp_hidden", "mlp_batch", "mlp_max_epochs", "mlp_plateau_patience"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.mlp_learning_rate <= 0 or self.mlp_plateau_tol <= 0:
            raise ValueError("mlp_learning_rate and mlp_plateau_tol must be positive")
        if self.rf_features_per_split is not None and self.rf_features_per_split < 1:
            raise ValueError("rf_features_per_split must be positive")


@dataclass
class MlpModel:
    layer_weights: List[np.ndarray]  # [(dim+1, hidden), (hidden+1, classes)]
    feature_dim: int
    class_count: int = CLASS_COUNT
    config: Optional[TrainConfig] = None
    epochs_run: int = 0


@dataclass
class DecisionTree:
    feature: np.ndarray  # int32, -1 at leaves
    threshold: np.ndarray  # float64
    left: np.ndarray  # int32
    right: np.ndarray  # int32
    leaf_class: np.ndarray  # int32, -1 at internal nodes

    def predict_batch(self, X: np.ndarray) -> np.ndarray:
        node = np.zeros(X.shape[0], dtype=np.int32)
        while True:
            internal = self.leaf_class[node] < 0
            if not internal.any():
                return self.leaf_class[node]
            idx = np.nonzero(internal)[0]
            cur = node[idx]
            go_left = X[idx, self.feature[cur]] <= self.threshold[cur]
            node[idx] = np.where(go_left, self.left[cur], self.right[cur])


@dataclass
class RandomForestModel:
    trees: List[DecisionTree]
    feature_dim: int
    class_count: int = CLASS_COUNT
    config: Optional[TrainConfig] = None


def _seeded(key: tuple) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(key)))


# --- multilayer perceptron ---------------------------------------------


def _with_bias(X: np.ndarray) -> np.ndarray:
    return np.hstack([X, np.ones((X.shape[0], 1))])


def _sigmoid(z: np.ndarray) -> np.ndarray:
    # logistic function in its tanh form: branch-free, exact at saturation,
    # and free of the under/overflow hazards of 1/(1+exp(-z))
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    ez = np.exp(shifted)
    return ez / ez.sum(axis=1, keepdims=True)


def mlp_batch_gradients(weights: Sequence[np.ndarray], X: np.ndarray, y_onehot: np.ndarray):
    """Cross-entropy loss and its gradients for one mini-batch.

    This is the function the finite-difference gradient check probes.
    """
    w1, w2 = weights
    xb = _with_bias(X)
    hidden = _sigmoid(xb @ w1)
    hb = _with_bias(hidden)
    logits = hb @ w2
    # log-sum-exp form: exact cross-entropy, finite even for saturated probs
    shifted = logits - logits.max(axis=1, keepdims=True)
    ez = np.exp(shifted)
    sez = ez.sum(axis=1, keepdims=True)
    probs = ez / sez
    n = X.shape[0]
    loss = float((np.sum(np.log(sez)) - np.sum(y_onehot * shifted)) / n)

    dlogits = (probs - y_onehot) / n
    dw2 = hb.T @ dlogits
    dhidden = dlogits @ w2[:-1].T
    dz = dhidden * hidden * (1.0 - hidden)
    dw1 = xb.T @ dz
    return loss, [dw1, dw2]


class _Workspace:
    """Reused buffers for one batch shape.

    Large temporaries allocated per step would each round-trip through
    mmap on common allocators; reusing buffers keeps the hot loop on
    already-faulted pages.
    """

    def __init__(self, batch: int, dim: int, hidden: int, classes: int):
        self.hb = np.ones((batch, hidden + 1))
        self.z1 = np.empty((batch, hidden))
        self.tmp = np.empty((batch, hidden))
        self.dh = np.empty((batch, hidden))
        self.logits = np.empty((batch, classes))
        self.dw1 = np.empty((dim + 1, hidden))
        self.dw2 = np.empty((hidden + 1, classes))


def _train_step(weights, xb, y_onehot, ws: _Workspace, lr: float) -> float:
    """One in-place gradient step; same arithmetic as mlp_batch_gradients."""
    w1, w2 = weights
    hidden_n = w1.shape[1]
    np.matmul(xb, w1, out=ws.z1)
    ws.z1 *= 0.5
    np.tanh(ws.z1, out=ws.z1)
    ws.z1 += 1.0
    ws.z1 *= 0.5
    h = ws.z1
    ws.hb[:, :hidden_n] = h
    np.matmul(ws.hb, w2, out=ws.logits)
    logits = ws.logits
    shifted = logits - logits.max(axis=1, keepdims=True)
    ez = np.exp(shifted)
    sez = ez.sum(axis=1, keepdims=True)
    probs = ez / sez
    n = xb.shape[0]
    loss = float((np.sum(np.log(sez)) - np.sum(y_onehot * shifted)) / n)

    dlogits = (probs - y_onehot) / n
    np.matmul(ws.hb.T, dlogits, out=ws.dw2)
    np.matmul(dlogits, w2[:-1].T, out=ws.dh)
    np.subtract(1.0, h, out=ws.tmp)
    ws.tmp *= h
    ws.dh *= ws.tmp
    np.matmul(xb.T, ws.dh, out=ws.dw1)
    ws.dw1 *= lr
    ws.dw2 *= lr
    w1 -= ws.dw1
    w2 -= ws.dw2
    return loss


def init_mlp_weights(feature_dim: int, hidden: int, class_count: int, rng: np.random.Generator):
    b1 = 1.0 / np.sqrt(feature_dim + 1)
    b2 = 1.0 / np.sqrt(hidden + 1)
    w1 = rng.uniform(-b1, b1, size=(feature_dim + 1, hidden))
    w2 = rng.uniform(-b2, b2, size=(hidden + 1, class_count))
    return [w1, w2]


def train_mlp(rows: Sequence[FeatureRow], config: TrainConfig) -> MlpModel:
    """Seeded mini-batch gradient descent with a plateau stopping rule."""
    X, y = rows_to_matrix(rows)
    if len(np.unique(y)) < 2:
        raise DegenerateDataset("training data carries a single class")
    n, dim = X.shape
    y_onehot = np.zeros((n, CLASS_COUNT))
    y_onehot[np.arange(n), y] = 1.0

    rng = _seeded((config.seed, 1))
    weights = init_mlp_weights(dim, config.mlp_hidden, CLASS_COUNT, rng)

    xb_all = _with_bias(X)
    workspaces = {}
    prev_loss = None
    streak = 0
    epochs_run = 0
    for epoch in range(config.mlp_max_epochs):
        order = rng.permutation(n)
        total = 0.0
        for start in range(0, n, config.mlp_batch):
            batch = order[start : start + config.mlp_batch]
            ws = workspaces.get(len(batch))
            if ws is None:
                ws = workspaces[len(batch)] = _Workspace(len(batch), dim, config.mlp_hidden, CLASS_COUNT)
            loss = _train_step(weights, xb_all[batch], y_onehot[batch], ws, config.mlp_learning_rate)
            if not np.isfinite(loss):
                raise NonFiniteLoss(f"loss {loss} at epoch {epoch}")
            total += loss * len(batch)
        epoch_loss = total / n
        epochs_run = epoch + 1
        if prev_loss is not None and prev_loss - epoch_loss < config.mlp_plateau_tol:
            streak += 1
            if streak >= config.mlp_plateau_patience:
                break
        else:
            streak = 0
        prev_loss = epoch_loss

    return MlpModel(
        layer_weights=weights,
        feature_dim=dim,
        class_count=CLASS_COUNT,
        config=config,
        epochs_run=epochs_run,
    )


def mlp_predict(model: MlpModel, features: Sequence[float]) -> Tuple[TrafficClass, np.ndarray]:
    """Class and softmax probabilities for one feature vector."""
    probs = mlp_predict_batch(model, np.asarray(features, dtype=np.float64).reshape(1, -1))[1][0]
    return TrafficClass(int(np.argmax(probs))), probs


def mlp_predict_batch(model: MlpModel, X: np.ndarray):
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.feature_dim:
        raise DimensionMismatch(f"expected {model.feature_dim} features, got {X.shape}")
    w1, w2 = model.layer_weights
    probs = _softmax(_with_bias(_sigmoid(_with_bias(X) @ w1)) @ w2)
    return np.argmax(probs, axis=1), probs


# --- random forest ------------------------------------------------------


def features_per_split(config: TrainConfig, dim: int) -> int:
    if config.rf_features_per_split is not None:
        return min(config.rf_features_per_split, dim)
    return max(1, int(np.sqrt(dim)))


def tree_bootstrap(seed: int, tree_index: int, n: int):
    """The bootstrap sample and kernel seed for one tree.

    Exposed so tests can reconstruct exactly what each tree trained on.
    """
    rng = _seeded((seed, 0, tree_index))
    boot = rng.integers(0, n, size=n)
    kernel_seed = int(rng.integers(0, 1 << 64, dtype=np.uint64))
    return boot, kernel_seed


def _grow_tree(X: np.ndarray, y: np.ndarray, mf: int, seed: int, index: int) -> DecisionTree:
    boot, kernel_seed = tree_bootstrap(seed, index, X.shape[0])
    arrays = build_tree(X[boot], y[boot], CLASS_COUNT, mf, kernel_seed)
    return DecisionTree(*arrays)


def train_random_forest(
    rows: Sequence[FeatureRow],
    config: TrainConfig,
    threads: int = 1,
) -> RandomForestModel:
    """Grow `rf_trees` bootstrap trees; parallel and serial runs match."""
    if not rows:
        raise DegenerateDataset("no training rows")
    X, y = rows_to_matrix(rows)
    dim = X.shape[1]
    mf = features_per_split(config, dim)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            trees = list(
                pool.map(lambda i: _grow_tree(X, y, mf, config.seed, i), range(config.rf_trees))
            )
    else:
        trees = [_grow_tree(X, y, mf, config.seed, i) for i in range(config.rf_trees)]
    return RandomForestModel(trees=trees, feature_dim=dim, class_count=CLASS_COUNT, config=config)


def rf_votes(model: RandomForestModel, X: np.ndarray) -> np.ndarray:
    """Per-class vote counts, shape (rows, classes)."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.feature_dim:
        raise DimensionMismatch(f"expected {model.feature_dim} features, got {X.shape}")
    votes = np.zeros((X.shape[0], model.class_count), dtype=np.int64)
    rows = np.arange(X.shape[0])
    for tree in model.trees:
        votes[rows, tree.predict_batch(X)] += 1
    return votes


def rf_predict(model: RandomForestModel, features: Sequence[float]) -> Tuple[TrafficClass, np.ndarray]:
    """Plurality vote over the trees; fractions by class index."""
    votes = rf_votes(model, np.asarray(features, dtype=np.float64).reshape(1, -1))[0]
    return TrafficClass(int(np.argmax(votes))), votes / len(model.trees)


def rf_predict_batch(model: RandomForestModel, X: np.ndarray) -> np.ndarray:
    return np.argmax(rf_votes(model, X), axis=1)


# --- serialization -------------------------------------------------------
#
# Self-describing JSON; floats travel as 17-significant-digit decimal
# strings so they round-trip exactly.


def _f2s(value: float) -> str:
    return format(float(value), ".17g")


def _floats_out(arr: np.ndarray) -> list:
    return [[_f2s(v) for v in row] for row in arr]


def _floats_in(data: list) -> np.ndarray:
    return np.array([[float(v) for v in row] for row in data], dtype=np.float64)


def model_to_dict(model) -> dict:
    config = asdict(model.config) if model.config is not None else None
    if isinstance(model, MlpModel):
        return {
            "schema_version": 1,
            "kind": "mlp",
            "feature_dim": model.feature_dim,
            "class_count": model.class_count,
            "config": config,
            "epochs_run": model.epochs_run,
            "layers": [_floats_out(w) for w in model.layer_weights],
        }
    if isinstance(model, RandomForestModel):
        return {
            "schema_version": 1,
            "kind": "random_forest",
            "feature_dim": model.feature_dim,
            "class_count": model.class_count,
            "config": config,
            "trees": [
                {
                    "feature": tree.feature.tolist(),
                    "threshold": [_f2s(v) for v in tree.threshold],
                    "left": tree.left.tolist(),
                    "right": tree.right.tolist(),
                    "leaf_class": tree.leaf_class.tolist(),
                }
                for tree in model.trees
            ],
        }
    raise TypeError(f"not a model: {type(model)!r}")


def model_from_dict(data: dict):
    config = TrainConfig(**data["config"]) if data.get("config") else None
    if data["kind"] == "mlp":
        return MlpModel(
            layer_weights=[_floats_in(layer) for layer in data["layers"]],
            feature_dim=data["feature_dim"],
            class_count=data["class_count"],
            config=config,
            epochs_run=data.get("epochs_run", 0),
        )
    if data["kind"] == "random_forest":
        trees = [
            DecisionTree(
                feature=np.array(t["feature"], dtype=np.int32),
                threshold=np.array([float(v) for v in t["threshold"]], dtype=np.float64),
                left=np.array(t["left"], dtype=np.int32),
                right=np.array(t["right"], dtype=np.int32),
                leaf_class=np.array(t["leaf_class"], dtype=np.int32),
            )
            for t in data["trees"]
        ]
        return RandomForestModel(
            trees=trees,
            feature_dim=data["feature_dim"],
            class_count=data["class_count"],
            config=config,
        )
    raise ValueError(f"unknown model kind {data['kind']!r}")


def save_model(model, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        json.dump(model_to_dict(model), fh, indent=1)
        fh.write("\n")


def load_model(path):
    with open(path, "r", encoding="ascii") as fh:
        return model_from_dict(json.load(fh))

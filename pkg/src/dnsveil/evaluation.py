"""Stratified k-fold cross-validation and classification metrics.

Six algorithms are compared: each of the two models trained on each of
the three feature-set shapes.  Folds are stratified so no class empties
out at desk scale, assigned per feature-set kind from one seed, and every
row is tested exactly once; the per-fold accuracies feed the significance
procedure in `stats`.
"""

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np

from . import models
from .features import CLASS_COUNT, FeatureRow, FeatureSetKind, TrafficClass, rows_to_matrix

ALGORITHMS = (
    "mlp-query",
    "mlp-full",
    "mlp-response",
    "rf-query",
    "rf-full",
    "rf-response",
)

_ALGO_PARTS = {
    "mlp-query": ("mlp", FeatureSetKind.QUERY),
    "mlp-full": ("mlp", FeatureSetKind.FULL),
    "mlp-response": ("mlp", FeatureSetKind.RESPONSE),
    "rf-query": ("rf", FeatureSetKind.QUERY),
    "rf-full": ("rf", FeatureSetKind.FULL),
    "rf-response": ("rf", FeatureSetKind.RESPONSE),
}


class TooFewRows(Exception):
    """Fewer rows than folds."""


class LengthMismatch(Exception):
    pass


class EmptyMatrix(Exception):
    pass


def stratified_kfold(labels: Sequence[TrafficClass], k: int, seed: int) -> List[int]:
    """Assign each row a fold in [0, k).

    Each class is shuffled (seeded) and dealt round-robin, the deal
    continuing across classes so overall fold sizes differ by at most one
    and per-class counts per fold differ by at most one.
    """
    n = len(labels)
    if k < 2:
        raise ValueError("k must be >= 2")
    if n < k:
        raise TooFewRows(f"{n} rows cannot fill {k} folds")
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, 4))))
    fold_of_row = [0] * n
    start = 0
    for cls in TrafficClass:
        members = [i for i, lab in enumerate(labels) if lab is cls]
        if not members:
            continue
        if len(members) < k:
            warnings.warn(
                f"class {cls.label!r} has {len(members)} rows for {k} folds; "
                "some folds will not see it",
                stacklevel=2,
            )
        members = [members[j] for j in rng.permutation(len(members))]
        for j, row in enumerate(members):
            fold_of_row[row] = (start + j) % k
        start = (start + len(members)) % k
    return fold_of_row


def confusion_matrix(true_labels: Sequence[int], predicted_labels: Sequence[int]) -> np.ndarray:
    """Counts[true][predicted] over CLASS_COUNT classes."""
    if len(true_labels) != len(predicted_labels):
        raise LengthMismatch(f"{len(true_labels)} truths vs {len(predicted_labels)} predictions")
    cm = np.zeros((CLASS_COUNT, CLASS_COUNT), dtype=np.int64)
    for t, p in zip(true_labels, predicted_labels):
        cm[int(t), int(p)] += 1
    return cm


def metrics(cm: np.ndarray) -> dict:
    """Accuracy plus per-class precision/recall.

    A class absent from a denominator reports 0 with its `*_defined` flag
    cleared rather than dividing by zero.
    """
    total = int(cm.sum())
    if total == 0:
        raise EmptyMatrix("confusion matrix holds no rows")
    per_class = []
    for c in range(cm.shape[0]):
        col = int(cm[:, c].sum())
        row = int(cm[c, :].sum())
        diag = int(cm[c, c])
        per_class.append(
            {
                "precision": diag / col if col else 0.0,
                "precision_defined": bool(col),
                "recall": diag / row if row else 0.0,
                "recall_defined": bool(row),
            }
        )
    return {"accuracy": float(np.trace(cm)) / total, "per_class": per_class}


@dataclass
class CvResult:
    algorithms: Sequence[str]
    folds: int
    accuracy_table: np.ndarray  # (folds, algorithms)
    aggregate_confusion: Dict[str, np.ndarray]
    fold_seed: int


def _predict_fold(kind_model: str, trained, X: np.ndarray) -> np.ndarray:
    if kind_model == "mlp":
        return models.mlp_predict_batch(trained, X)[0]
    return models.rf_predict_batch(trained, X)


def run_cross_validation(
    rows_by_kind: Mapping[FeatureSetKind, Sequence[FeatureRow]],
    config: models.TrainConfig,
    k: int,
    threads: int = 1,
) -> CvResult:
    """Train/test all six algorithms across k folds.

    Fold assignment is computed once per feature-set kind from the config
    seed; the two models inside a kind share folds so the per-fold
    accuracies are comparable blocks for the Friedman test.
    """
    for kind in (FeatureSetKind.QUERY, FeatureSetKind.FULL, FeatureSetKind.RESPONSE):
        if kind not in rows_by_kind or not rows_by_kind[kind]:
            raise models.DegenerateDataset(f"missing rows for the {kind.value} feature set")

    folds_by_kind = {}
    data_by_kind = {}
    for kind, rows in rows_by_kind.items():
        X, y = rows_to_matrix(rows)
        if len(np.unique(y)) < 2:
            raise models.DegenerateDataset(f"{kind.value} rows carry a single class")
        folds_by_kind[kind] = np.array(
            stratified_kfold([row.label for row in rows], k, config.seed), dtype=np.int64
        )
        data_by_kind[kind] = (X, y)

    accuracy = np.zeros((k, len(ALGORITHMS)))
    aggregate = {name: np.zeros((CLASS_COUNT, CLASS_COUNT), dtype=np.int64) for name in ALGORITHMS}

    def one_fold(task):
        kind, fold = task
        X, y = data_by_kind[kind]
        rows = rows_by_kind[kind]
        test_mask = folds_by_kind[kind] == fold
        train_rows = [row for row, m in zip(rows, test_mask) if not m]
        out = {}
        for model_kind in ("mlp", "rf"):
            if model_kind == "mlp":
                trained = models.train_mlp(train_rows, config)
            else:
                trained = models.train_random_forest(train_rows, config)
            predicted = _predict_fold(model_kind, trained, X[test_mask])
            out[model_kind] = confusion_matrix(y[test_mask], predicted)
        return out

    kinds = (FeatureSetKind.QUERY, FeatureSetKind.FULL, FeatureSetKind.RESPONSE)
    tasks = [(kind, fold) for kind in kinds for fold in range(k)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            fold_results = list(pool.map(one_fold, tasks))
    else:
        fold_results = [one_fold(task) for task in tasks]

    # reduce in fixed task order so threaded and serial runs agree
    for (kind, fold), out in zip(tasks, fold_results):
        for model_kind, cm in out.items():
            name = f"{model_kind}-{kind.value}"
            aggregate[name] += cm
            accuracy[fold, ALGORITHMS.index(name)] = metrics(cm)["accuracy"]

    return CvResult(
        algorithms=ALGORITHMS,
        folds=k,
        accuracy_table=accuracy,
        aggregate_confusion=aggregate,
        fold_seed=config.seed,
    )


def result_report(result: CvResult) -> dict:
    """The evaluation report body: per-algorithm metrics and fold accuracies."""
    by_algorithm = {}
    for a, name in enumerate(result.algorithms):
        cm = result.aggregate_confusion[name]
        m = metrics(cm)
        by_algorithm[name] = {
            "accuracy": m["accuracy"],
            "per_class": {
                cls.label: m["per_class"][cls.value] for cls in TrafficClass
            },
            "confusion": cm.tolist(),
            "fold_accuracies": [float(v) for v in result.accuracy_table[:, a]],
        }
    return {
        "folds": result.folds,
        "algorithms": list(result.algorithms),
        "class_labels": [cls.label for cls in TrafficClass],
        "by_algorithm": by_algorithm,
    }

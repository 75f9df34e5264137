"""Train and evaluate the binary classifier on a manifest-described dataset."""

from __future__ import annotations

import os
from pathlib import Path

os.environ.setdefault("TF_CPP_MIN_LOG_LEVEL", "2")

import numpy as np
from tensorflow import keras

from .data import SplitData, load_manifest, load_split, require_trainable
from .models import HeadConfig, build_model
from .reports import ConfusionMatrix, EvalReport, plot_confusion

__all__ = ["train", "evaluate", "evaluate_split", "NONDETERMINISM_NOTES", "THRESHOLD"]

# Sources of wiggle that remain after seeding; recorded in every report.
NONDETERMINISM_NOTES = [
    "float reductions may reorder across op-level thread pools",
    "library versions change initializer and optimizer kernels",
]

THRESHOLD = 0.5


def evaluate_split(model: keras.Model, data: SplitData, batch_size: int = 16) -> ConfusionMatrix:
    """Predict one split and tabulate the 2x2 confusion matrix."""
    probs = model.predict(data.images, batch_size=batch_size, verbose=0)
    preds = (np.asarray(probs).reshape(-1) >= THRESHOLD).astype(np.float32)
    return ConfusionMatrix.from_predictions(data.labels, preds)


def evaluate(model: keras.Model, manifest_path, split: str = "test") -> EvalReport:
    """Evaluate a trained model on one split of a manifest.

    Deterministic for a fixed model and split: no randomness is involved.

    Raises:
        EmptySplit: the split has no entries.
        ImageShapeMismatch: an image does not match the model input.
    """
    manifest = load_manifest(manifest_path)
    data = load_split(manifest, split)
    report = EvalReport(nondeterminism=list(NONDETERMINISM_NOTES))
    report.add_split(split, evaluate_split(model, data))
    return report


def train(
    manifest_path,
    config: HeadConfig | None = None,
    *,
    epochs: int = 10,
    seed: int = 0,
    out_dir=None,
) -> tuple[keras.Model, EvalReport]:
    """Fine-tune a backbone on the manifest's train split, report both splits.

    All layers stay trainable. Seeding covers Python, numpy and the ML
    stack; the remaining nondeterminism sources are listed in the report.
    When ``out_dir`` is given the trained model, the JSON report and one
    confusion plot per split are written there.

    Raises:
        ManifestIncomplete: entries are unsplit or a split lacks a label.
        EmptySplit, ImageShapeMismatch: propagated from loading.
    """
    config = config or HeadConfig()
    manifest = load_manifest(manifest_path)
    require_trainable(manifest)
    train_data = load_split(manifest, "train")
    test_data = load_split(manifest, "test")

    keras.utils.set_random_seed(seed)
    model, build_info = build_model(config)
    model.compile(
        optimizer=keras.optimizers.Adam(learning_rate=config.learning_rate),
        loss="binary_crossentropy",
        metrics=["accuracy"],
    )
    history = model.fit(
        train_data.images,
        train_data.labels,
        batch_size=config.batch_size,
        epochs=epochs,
        shuffle=True,
        verbose=0,
    )

    report = EvalReport(
        config={
            **config.describe(),
            **build_info,
            "epochs": epochs,
            "seed": seed,
            "objective": "binary_crossentropy",
            "threshold": THRESHOLD,
        },
        history={k: [float(v) for v in vals] for k, vals in history.history.items()},
        nondeterminism=list(NONDETERMINISM_NOTES),
    )
    matrices = {
        "train": evaluate_split(model, train_data, config.batch_size),
        "test": evaluate_split(model, test_data, config.batch_size),
    }
    for name, matrix in matrices.items():
        report.add_split(name, matrix)

    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        model_path = out_dir / "model.keras"
        model.save(model_path)
        report.model_size_bytes = model_path.stat().st_size
        for name, matrix in matrices.items():
            plot_confusion(matrix, out_dir / f"confusion_{name}.png", title=name)
        report.save(out_dir / "report.json")
    return model, report

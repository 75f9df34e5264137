"""Evaluation bookkeeping: confusion matrices, reports, plots."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.stats import binomtest

__all__ = [
    "ConfusionMatrix",
    "EvalReport",
    "plot_confusion",
]


@dataclass(frozen=True)
class ConfusionMatrix:
    """2x2 table, rows true label (mutated=0 then real=1), columns predicted."""

    tn: int
    fp: int
    fn: int
    tp: int

    @classmethod
    def from_predictions(cls, y_true: np.ndarray, y_pred: np.ndarray) -> "ConfusionMatrix":
        y_true = np.asarray(y_true).astype(bool)
        y_pred = np.asarray(y_pred).astype(bool)
        if y_true.shape != y_pred.shape:
            raise ValueError(f"shape mismatch: {y_true.shape} vs {y_pred.shape}")
        return cls(
            tn=int((~y_true & ~y_pred).sum()),
            fp=int((~y_true & y_pred).sum()),
            fn=int((y_true & ~y_pred).sum()),
            tp=int((y_true & y_pred).sum()),
        )

    @property
    def n(self) -> int:
        return self.tn + self.fp + self.fn + self.tp

    @property
    def accuracy(self) -> float:
        return (self.tn + self.tp) / self.n if self.n else 0.0

    @property
    def correct(self) -> int:
        return self.tn + self.tp

    def to_rows(self) -> list[list[int]]:
        return [[self.tn, self.fp], [self.fn, self.tp]]

    def p_value_vs_chance(self) -> float:
        """One-sided binomial: probability of >= this many correct by coin flip."""
        if self.n == 0:
            return 1.0
        return float(binomtest(self.correct, self.n, 0.5, alternative="greater").pvalue)


@dataclass
class EvalReport:
    """Accuracy and confusion per split, plus the config that produced them."""

    splits: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    model_size_bytes: int | None = None
    history: dict = field(default_factory=dict)
    nondeterminism: list = field(default_factory=list)

    def add_split(self, name: str, matrix: ConfusionMatrix) -> None:
        # Accuracy is derived from the matrix, never stored independently,
        # so the two can't disagree.
        self.splits[name] = {
            "n": matrix.n,
            "accuracy": matrix.accuracy,
            "confusion": matrix.to_rows(),
            "p_value_vs_chance": matrix.p_value_vs_chance(),
        }

    def matrix(self, split: str) -> ConfusionMatrix:
        rows = self.splits[split]["confusion"]
        return ConfusionMatrix(
            tn=rows[0][0], fp=rows[0][1], fn=rows[1][0], tp=rows[1][1]
        )

    def to_json_dict(self) -> dict:
        return {
            "splits": self.splits,
            "config": self.config,
            "model_size_bytes": self.model_size_bytes,
            "history": self.history,
            "nondeterminism": self.nondeterminism,
        }

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "EvalReport":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        return cls(
            splits=raw.get("splits", {}),
            config=raw.get("config", {}),
            model_size_bytes=raw.get("model_size_bytes"),
            history=raw.get("history", {}),
            nondeterminism=raw.get("nondeterminism", []),
        )


def plot_confusion(matrix: ConfusionMatrix, path, title: str = "") -> Path:
    """Render the 2x2 matrix as a PNG heatmap with counts."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = np.asarray(matrix.to_rows())
    fig, ax = plt.subplots(figsize=(4, 3.5))
    im = ax.imshow(rows, cmap="Blues")
    ax.set_xticks([0, 1], ["mutated", "real"])
    ax.set_yticks([0, 1], ["mutated", "real"])
    ax.set_xlabel("predicted")
    ax.set_ylabel("true")
    if title:
        ax.set_title(title)
    for i in range(2):
        for j in range(2):
            color = "white" if rows[i, j] > rows.max() / 2 else "black"
            ax.text(j, i, str(rows[i, j]), ha="center", va="center", color=color)
    fig.colorbar(im, ax=ax)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path

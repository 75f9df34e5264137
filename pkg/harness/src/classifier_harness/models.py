"""Backbone plus dense-head construction.

The classifier is a pretrained convolutional backbone with its
classification top removed, followed by flatten, two 64-unit dense layers
and a single sigmoid unit. Parameter counts of the head are fixed by the
backbone's 8 x 8 output grid and are verified at construction time:

    InceptionV3        flatten 131072 -> 8,388,672 / 4,160 / 65
    InceptionResNetV2  flatten  98304 -> 6,291,520 / 4,160 / 65
"""

from __future__ import annotations

import os
from dataclasses import dataclass

os.environ.setdefault("TF_CPP_MIN_LOG_LEVEL", "2")

import numpy as np
from tensorflow import keras

from .data import IMAGE_SIZE

__all__ = [
    "BACKBONES",
    "HIDDEN_UNITS",
    "HeadConfig",
    "UnknownBackbone",
    "expected_head_params",
    "build_model",
]


class UnknownBackbone(ValueError):
    """The requested backbone name is not supported."""


BACKBONES = {
    "InceptionV3": keras.applications.InceptionV3,
    "InceptionResNetV2": keras.applications.InceptionResNetV2,
}

# Channels of the 8x8 feature grid each backbone emits for 299x299 input.
_FEATURE_CHANNELS = {"InceptionV3": 2048, "InceptionResNetV2": 1536}

HIDDEN_UNITS = (64, 64)


@dataclass(frozen=True)
class HeadConfig:
    """Everything about the model and its training that is configurable.

    The head shape itself (flatten, dense 64, dense 64, dense 1 sigmoid) is
    fixed; these fields cover the choices the architecture leaves open.
    """

    backbone: str = "InceptionV3"
    weights: str = "imagenet"  # "imagenet" or "random"
    hidden_activation: str = "relu"
    learning_rate: float = 1e-4
    batch_size: int = 16

    def __post_init__(self) -> None:
        if self.backbone not in BACKBONES:
            raise UnknownBackbone(
                f"backbone must be one of {sorted(BACKBONES)}, got {self.backbone!r}"
            )
        if self.weights not in ("imagenet", "random"):
            raise ValueError(f"weights must be 'imagenet' or 'random', got {self.weights!r}")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")

    def describe(self) -> dict:
        return {
            "backbone": self.backbone,
            "weights": self.weights,
            "head": "flatten -> dense(64) -> dense(64) -> dense(1, sigmoid)",
            "hidden_activation": self.hidden_activation,
            "learning_rate": self.learning_rate,
            "batch_size": self.batch_size,
            "input_size": [IMAGE_SIZE, IMAGE_SIZE, 3],
            "preprocessing": "pixel / 127.5 - 1",
            "label_values": {"real": 1, "mutated": 0},
        }


def expected_head_params(backbone: str) -> tuple[int, int, int]:
    """Head layer parameter counts implied by the backbone's output grid."""
    if backbone not in _FEATURE_CHANNELS:
        raise UnknownBackbone(backbone)
    flat = 8 * 8 * _FEATURE_CHANNELS[backbone]
    return (flat * 64 + 64, 64 * 64 + 64, 64 + 1)


def build_model(config: HeadConfig) -> tuple[keras.Model, dict]:
    """Construct the full model; returns (model, build_info).

    build_info records which weights were actually used: when pretrained
    weights are requested but cannot be fetched (offline environments),
    construction falls back to random initialization and says so rather
    than failing.

    The backbone's normalization layers are frozen so fitting and
    prediction run them identically. Batch statistics during fit versus
    stored averages during predict give a deep untrained network features
    that are uncorrelated between the two modes, so the head trains on
    features prediction never reproduces and held-out accuracy collapses
    to a constant class. With pretrained weights the stored averages are
    the ones the kernels were trained with, the standard fine-tune
    recipe. With random weights frozen normalization is an identity, and
    the default initializer then shrinks activations by a constant factor
    per convolution until the features vanish; kernels are therefore
    redrawn variance-preserving for relu so signal survives the depth.
    Parameter counts are unaffected by any of this.
    """
    weights = "imagenet" if config.weights == "imagenet" else None
    note = None
    try:
        base = BACKBONES[config.backbone](
            include_top=False,
            weights=weights,
            input_shape=(IMAGE_SIZE, IMAGE_SIZE, 3),
        )
    except Exception as exc:
        if weights is None:
            raise
        note = f"pretrained weights unavailable ({type(exc).__name__}); random init"
        base = BACKBONES[config.backbone](
            include_top=False,
            weights=None,
            input_shape=(IMAGE_SIZE, IMAGE_SIZE, 3),
        )
        weights = None

    frozen = 0
    for layer in base.layers:
        if isinstance(layer, keras.layers.BatchNormalization):
            layer.trainable = False
            frozen += 1
    if weights is None:
        initializer = keras.initializers.HeNormal()
        for layer in base.layers:
            if isinstance(layer, keras.layers.Conv2D):
                layer.kernel.assign(initializer(layer.kernel.shape, layer.kernel.dtype))

    model = keras.Sequential(
        [
            base,
            keras.layers.Flatten(),
            keras.layers.Dense(64, activation=config.hidden_activation),
            keras.layers.Dense(64, activation=config.hidden_activation),
            keras.layers.Dense(1, activation="sigmoid"),
        ],
        name=f"{config.backbone.lower()}_binary_head",
    )

    dense_counts = tuple(
        int(sum(int(np.prod(w.shape)) for w in layer.weights))
        for layer in model.layers
        if isinstance(layer, keras.layers.Dense)
    )
    expected = expected_head_params(config.backbone)
    if dense_counts != expected:  # construction-time contract
        raise AssertionError(
            f"head parameter counts {dense_counts} != expected {expected}"
        )

    build_info = {
        "weights_used": "imagenet" if weights == "imagenet" else "random",
        "total_params": int(model.count_params()),
        "head_params": list(expected),
        "frozen_batch_norm_layers": frozen,
    }
    if note:
        build_info["note"] = note
    return model, build_info

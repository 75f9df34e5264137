"""Model construction: exact parameter counts and config validation."""

from __future__ import annotations

import numpy as np
import pytest
from tensorflow import keras

from classifier_harness import (
    BACKBONES,
    HeadConfig,
    UnknownBackbone,
    build_model,
    expected_head_params,
)

# Totals include the backbone, so they pin the whole architecture.
EXPECTED = {
    "InceptionV3": {"head": (8_388_672, 4_160, 65), "total": 30_195_681},
    "InceptionResNetV2": {"head": (6_291_520, 4_160, 65), "total": 60_632_481},
}


@pytest.fixture(scope="module", params=sorted(BACKBONES))
def built(request):
    config = HeadConfig(backbone=request.param, weights="random")
    model, info = build_model(config)
    return request.param, model, info


def _dense_param_counts(model: keras.Model) -> tuple[int, ...]:
    return tuple(
        int(layer.count_params())
        for layer in model.layers
        if isinstance(layer, keras.layers.Dense)
    )


def test_head_params_exact(built):
    name, model, info = built
    assert _dense_param_counts(model) == EXPECTED[name]["head"]
    assert info["head_params"] == list(EXPECTED[name]["head"])


def test_total_params_exact(built):
    name, model, info = built
    assert int(model.count_params()) == EXPECTED[name]["total"]
    assert info["total_params"] == EXPECTED[name]["total"]


def test_head_params_match_feature_grid(built):
    # Oracle: rederive the counts from the backbone's own output shape.
    name, model, _ = built
    base = model.layers[0]
    grid = base.output_shape[1:]
    flat = int(np.prod(grid))
    derived = (flat * 64 + 64, 64 * 64 + 64, 64 + 1)
    assert derived == _dense_param_counts(model)
    assert derived == expected_head_params(name)


def test_output_is_single_sigmoid(built):
    _, model, _ = built
    assert model.output_shape == (None, 1)
    last = model.layers[-1]
    assert last.units == 1
    assert keras.activations.serialize(last.activation) == "sigmoid"


def test_build_info_records_weights(built):
    _, _, info = built
    assert info["weights_used"] == "random"
    assert "note" not in info


def test_batch_norm_frozen(built):
    # Frozen normalization keeps fit-time features identical to
    # predict-time features; otherwise the head trains on batch
    # statistics that stored averages never reproduce.
    _, model, info = built
    base = model.layers[0]
    bn = [l for l in base.layers if isinstance(l, keras.layers.BatchNormalization)]
    assert bn
    assert all(not layer.trainable for layer in bn)
    assert info["frozen_batch_norm_layers"] == len(bn)
    convs = [l for l in base.layers if isinstance(l, keras.layers.Conv2D)]
    assert convs and all(layer.trainable for layer in convs)


def test_random_kernels_preserve_signal_through_depth(built):
    # With inference-mode normalization the variance-preserving redraw
    # must keep activations alive across the whole stack; the default
    # initializer would shrink them to zero long before the last layer.
    _, model, _ = built
    rng = np.random.default_rng(3)
    batch = rng.uniform(-1.0, 1.0, size=(2, 299, 299, 3)).astype(np.float32)
    feats = np.asarray(model.layers[0](batch, training=False))
    assert np.isfinite(feats).all()
    assert float(np.abs(feats).mean()) > 1e-3


def test_expected_head_params_formula():
    assert expected_head_params("InceptionV3") == (131072 * 64 + 64, 64 * 64 + 64, 65)
    assert expected_head_params("InceptionResNetV2") == (98304 * 64 + 64, 64 * 64 + 64, 65)


def test_unknown_backbone_rejected():
    with pytest.raises(UnknownBackbone):
        HeadConfig(backbone="ResNet50")
    with pytest.raises(UnknownBackbone):
        expected_head_params("ResNet50")


def test_config_validation():
    with pytest.raises(ValueError):
        HeadConfig(weights="xavier")
    with pytest.raises(ValueError):
        HeadConfig(learning_rate=0.0)
    with pytest.raises(ValueError):
        HeadConfig(batch_size=0)


def test_config_describe_echoes_choices():
    desc = HeadConfig(backbone="InceptionResNetV2", weights="random").describe()
    assert desc["backbone"] == "InceptionResNetV2"
    assert desc["weights"] == "random"
    assert desc["head"] == "flatten -> dense(64) -> dense(64) -> dense(1, sigmoid)"
    assert desc["input_size"] == [299, 299, 3]
    assert desc["label_values"] == {"real": 1, "mutated": 0}

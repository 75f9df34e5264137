"""Binary image classifier harness for real-vs-mutated structure renders.

Consumes datasets through their on-disk contract only: a ``manifest.json``
plus the PNG images it references. Fine-tunes a convolutional backbone with
a small dense head and reports per-split confusion matrices.
"""

from .data import (
    IMAGE_SIZE,
    LABEL_VALUES,
    DataError,
    EmptySplit,
    ImageShapeMismatch,
    ManifestIncomplete,
    SplitData,
    load_manifest,
    load_split,
    require_trainable,
)
from .models import (
    BACKBONES,
    HIDDEN_UNITS,
    HeadConfig,
    UnknownBackbone,
    build_model,
    expected_head_params,
)
from .reports import ConfusionMatrix, EvalReport, plot_confusion
from .training import NONDETERMINISM_NOTES, THRESHOLD, evaluate, evaluate_split, train

__version__ = "0.1.0"

__all__ = [
    "IMAGE_SIZE",
    "LABEL_VALUES",
    "DataError",
    "EmptySplit",
    "ImageShapeMismatch",
    "ManifestIncomplete",
    "SplitData",
    "load_manifest",
    "load_split",
    "require_trainable",
    "BACKBONES",
    "HIDDEN_UNITS",
    "HeadConfig",
    "UnknownBackbone",
    "build_model",
    "expected_head_params",
    "ConfusionMatrix",
    "EvalReport",
    "plot_confusion",
    "NONDETERMINISM_NOTES",
    "THRESHOLD",
    "evaluate",
    "evaluate_split",
    "train",
    "__version__",
]

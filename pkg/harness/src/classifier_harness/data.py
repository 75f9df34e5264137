"""Load manifest-described image datasets.

The dataset side of the handoff is a directory with a JSON manifest and PNG
images; this module reads exactly that, so the image pipeline that produced
them stays a black box. Labels: real = 1, mutated = 0. Pixels are scaled to
[-1, 1], the range the backbones expect.

No TensorFlow here; arrays are plain numpy so loading stays cheap to test.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

__all__ = [
    "IMAGE_SIZE",
    "LABEL_VALUES",
    "DataError",
    "ManifestIncomplete",
    "ImageShapeMismatch",
    "EmptySplit",
    "SplitData",
    "load_manifest",
    "load_split",
    "require_trainable",
]

IMAGE_SIZE = 299

#: sigmoid target per manifest label
LABEL_VALUES = {"real": 1.0, "mutated": 0.0}


class DataError(Exception):
    """Base class for dataset-loading failures."""


class ManifestIncomplete(DataError):
    """The manifest lacks a split assignment or one of the two labels."""


class ImageShapeMismatch(DataError):
    """An image is not the 299 x 299 RGB shape the models expect."""


class EmptySplit(DataError):
    """The requested split has no entries."""


@dataclass
class SplitData:
    """One split as arrays ready for a model.

    Attributes:
        images: (n, 299, 299, 3) float32 in [-1, 1].
        labels: (n,) float32 of 0.0 / 1.0.
        ids: protein id per image, parallel to the arrays.
    """

    split: str
    images: np.ndarray
    labels: np.ndarray
    ids: list[str]

    def __len__(self) -> int:
        return len(self.labels)


def load_manifest(path) -> dict:
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    raw["_root"] = str(path.parent)
    return raw


def _load_image(path: Path) -> np.ndarray:
    with Image.open(path) as img:
        arr = np.asarray(img.convert("RGB"), dtype=np.float32)
    if arr.shape != (IMAGE_SIZE, IMAGE_SIZE, 3):
        raise ImageShapeMismatch(f"{path}: got {arr.shape}, need (299, 299, 3)")
    return arr / 127.5 - 1.0


def load_split(manifest: dict, split: str) -> SplitData:
    """Materialize one split of a loaded manifest.

    Raises:
        EmptySplit: no entry carries this split name.
        ManifestIncomplete: an entry has an unknown label.
        ImageShapeMismatch: an image has the wrong size or band count.
    """
    root = Path(manifest.get("_root", "."))
    entries = [e for e in manifest.get("entries", []) if e.get("split") == split]
    if not entries:
        raise EmptySplit(f"no entries assigned to split {split!r}")
    entries.sort(key=lambda e: (e["protein_id"], e["label"]))

    images, labels, ids = [], [], []
    for entry in entries:
        label = entry.get("label")
        if label not in LABEL_VALUES:
            raise ManifestIncomplete(f"entry {entry.get('protein_id')}: label {label!r}")
        images.append(_load_image(root / entry["image_path"]))
        labels.append(LABEL_VALUES[label])
        ids.append(entry["protein_id"])
    return SplitData(
        split=split,
        images=np.stack(images),
        labels=np.asarray(labels, dtype=np.float32),
        ids=ids,
    )


def require_trainable(manifest: dict) -> None:
    """Check that both labels appear in both splits before training starts."""
    seen: dict[str, set] = {}
    for entry in manifest.get("entries", []):
        split = entry.get("split")
        if split is None:
            raise ManifestIncomplete(
                "manifest has unsplit entries; assign train/test first"
            )
        seen.setdefault(split, set()).add(entry.get("label"))
    for split in ("train", "test"):
        have = seen.get(split, set())
        if not {"real", "mutated"} <= have:
            raise ManifestIncomplete(
                f"split {split!r} needs both labels, has {sorted(have)}"
            )

"""Project quantized residues onto three orthogonal planes and composite
the views into one fixed-size image.

Views are assembled in a three-panel layout on a black background: the XZ
(front) view top-left, the XY (plan) view bottom-left, the YZ (profile)
view bottom-right, top-right quadrant empty.  Each view is tight-cropped to
its occupied bounding box, the panels are separated by a small gutter, and
a single uniform binning factor shrinks everything to fit the target square
without aspect distortion.

Downscaling is color-preserving: every source dot lands in exactly one
target pixel and pixel collisions are resolved by the same nearest-wins
depth rule used at projection time, so no pixel ever holds a blended,
out-of-palette color.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

import numpy as np
from PIL import Image

from .grid import GridPoint, GridTransform, EmptyStructure, map_structure
from .ingest import ProteinStructure
from .palette import AminoAcidPalette, encode

__all__ = [
    "Plane",
    "RenderConfig",
    "RasterImage",
    "EmptyProjection",
    "ViewMap",
    "project_view",
    "compose_multiview",
    "render_points",
    "render_protein",
    "PNG_COMPRESS_LEVEL",
]

#: Fixed PNG encoder setting; recorded in dataset manifests so compressed
#: byte streams stay comparable across runs.
PNG_COMPRESS_LEVEL = 6


class Plane(Enum):
    """Projection planes: the dropped axis becomes the depth coordinate."""

    XY = "XY"  # looking down z (plan)
    XZ = "XZ"  # looking down y (front)
    YZ = "YZ"  # looking down x (profile)


# (u axis, v axis, depth axis) index triples per plane.
_PLANE_AXES: dict[Plane, tuple[int, int, int]] = {
    Plane.XY: (0, 1, 2),
    Plane.XZ: (0, 2, 1),
    Plane.YZ: (1, 2, 0),
}

#: sparse view: (u, v) -> ((r, g, b), depth, (chain_id, seq_num))
ViewMap = dict[tuple[int, int], tuple[tuple[int, int, int], int, tuple[str, int]]]


class EmptyProjection(ValueError):
    """All three views are empty; nothing to composite."""


@dataclass(frozen=True)
class RenderConfig:
    """All rendering decisions.

    Attributes:
        target_size: output image side in pixels (square), default 299.
        gutter_px: separation between panels in output pixels.
    """

    target_size: int = 299
    gutter_px: int = 4

    def __post_init__(self) -> None:
        if self.gutter_px < 0:
            raise ValueError("gutter_px must be >= 0")
        if self.target_size < self.gutter_px + 4:
            raise ValueError(
                f"target_size {self.target_size} too small for gutter {self.gutter_px}"
            )

    def describe(self) -> dict:
        """Manifest-friendly echo of every rendering decision."""
        return {
            "target_size": self.target_size,
            "gutter_px": self.gutter_px,
            "layout": "three-panel (XZ top-left, XY bottom-left, YZ bottom-right)",
            "depth_rule": "nearest-wins, ties by (chain_id, seq_num) ascending",
            "downscaling": "color-preserving binning",
            "png_compress_level": PNG_COMPRESS_LEVEL,
        }


@dataclass(eq=False)
class RasterImage:
    """An RGB pixel buffer plus optional panel metadata.

    ``pixels`` is a (height, width, 3) uint8 array; ``panels`` records where
    each view landed as (row, col, height, width) rectangles, for audits.
    """

    pixels: np.ndarray
    panels: dict[str, tuple[int, int, int, int]] | None = field(default=None)

    def __post_init__(self) -> None:
        self.pixels = np.ascontiguousarray(self.pixels, dtype=np.uint8)
        if self.pixels.ndim != 3 or self.pixels.shape[2] != 3:
            raise ValueError(f"expected (H, W, 3) pixel array, got {self.pixels.shape}")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def tobytes(self) -> bytes:
        """Row-major RGB byte triples; len == width * height * 3."""
        return self.pixels.tobytes()

    def save_png(self, path) -> None:
        """Write as 8-bit RGB PNG, no alpha, fixed encoder settings."""
        Image.fromarray(self.pixels, mode="RGB").save(
            path, format="PNG", compress_level=PNG_COMPRESS_LEVEL
        )

    @classmethod
    def load_png(cls, path) -> "RasterImage":
        with Image.open(path) as img:
            return cls(pixels=np.asarray(img.convert("RGB"), dtype=np.uint8))


def project_view(
    points: list[GridPoint], plane: Plane, palette: AminoAcidPalette
) -> ViewMap:
    """Project points onto one plane in the 0..3200 view frame.

    The plane's normal coordinate becomes depth; on pixel collisions the
    smaller depth wins, ties broken by (chain_id, seq_num) ascending.
    """
    ui, vi, di = _PLANE_AXES[plane]
    view: ViewMap = {}
    for pt in points:
        coords = (pt.x, pt.y, pt.z)
        key = (coords[ui], coords[vi])
        depth = coords[di]
        current = view.get(key)
        if current is None or (depth, pt.chain_id, pt.seq_num) < (
            current[1],
            *current[2],
        ):
            view[key] = (encode(pt.amino_acid, palette), depth, (pt.chain_id, pt.seq_num))
    return view


def _bbox(view: ViewMap) -> tuple[int, int, int, int] | None:
    """(umin, vmin, width, height) of the occupied region, None when empty."""
    if not view:
        return None
    us = [u for u, _ in view]
    vs = [v for _, v in view]
    umin, vmin = min(us), min(vs)
    return umin, vmin, max(us) - umin + 1, max(vs) - vmin + 1


def _bin_view(
    view: ViewMap, bbox: tuple[int, int, int, int], factor: float
) -> tuple[ViewMap, int, int]:
    """Crop to the bounding box and shrink by ``factor`` via nearest-wins binning.

    Returns (binned view in local coordinates, width, height).
    """
    umin, vmin, w, h = bbox
    if factor >= 1.0:
        local: ViewMap = {(u - umin, v - vmin): val for (u, v), val in view.items()}
        return local, w, h
    binned: ViewMap = {}
    for (u, v), val in view.items():
        key = (int((u - umin) * factor), int((v - vmin) * factor))
        current = binned.get(key)
        if current is None or (val[1], *val[2]) < (current[1], *current[2]):
            binned[key] = val
    bw = int((w - 1) * factor) + 1
    bh = int((h - 1) * factor) + 1
    return binned, bw, bh


def compose_multiview(views: Mapping[Plane, ViewMap], cfg: RenderConfig) -> RasterImage:
    """Assemble the three views into one target_size x target_size image.

    Each view is tight-cropped, all views share one binning factor chosen so
    the assembled panels plus gutters fit the target square, and the result
    is centered on black.

    Raises:
        EmptyProjection: when all three views are empty.
    """
    boxes = {plane: _bbox(views.get(plane, {})) for plane in Plane}
    if all(box is None for box in boxes.values()):
        raise EmptyProjection("all views are empty")

    def src_size(plane: Plane) -> tuple[int, int]:
        box = boxes[plane]
        return (0, 0) if box is None else (box[2], box[3])

    w_xy, h_xy = src_size(Plane.XY)
    w_xz, h_xz = src_size(Plane.XZ)
    w_yz, h_yz = src_size(Plane.YZ)

    # Source-space panel extents: left column holds XZ over XY, right column YZ.
    left_w = max(w_xz, w_xy)
    top_h = h_xz
    bottom_h = max(h_xy, h_yz)
    gutter_w = cfg.gutter_px if left_w and w_yz else 0
    gutter_h = cfg.gutter_px if top_h and bottom_h else 0
    src_w = left_w + w_yz
    src_h = top_h + bottom_h

    if src_w + gutter_w <= cfg.target_size and src_h + gutter_h <= cfg.target_size:
        factor = 1.0
    else:
        # The -2 absorbs per-panel ceil() slack so the fit is guaranteed.
        factor = min(
            (cfg.target_size - gutter_w - 2) / src_w,
            (cfg.target_size - gutter_h - 2) / src_h,
        )

    binned: dict[Plane, tuple[ViewMap, int, int]] = {}
    for plane in Plane:
        box = boxes[plane]
        if box is None:
            binned[plane] = ({}, 0, 0)
        else:
            binned[plane] = _bin_view(views[plane], box, factor)

    _, bw_xy, bh_xy = binned[Plane.XY]
    _, bw_xz, bh_xz = binned[Plane.XZ]
    _, bw_yz, bh_yz = binned[Plane.YZ]
    out_left_w = max(bw_xz, bw_xy)
    out_top_h = bh_xz
    out_bottom_h = max(bh_xy, bh_yz)
    out_w = out_left_w + gutter_w + bw_yz
    out_h = out_top_h + gutter_h + out_bottom_h

    origin_row = (cfg.target_size - out_h) // 2
    origin_col = (cfg.target_size - out_w) // 2
    slots = {
        Plane.XZ: (origin_row, origin_col),
        Plane.XY: (origin_row + out_top_h + gutter_h, origin_col),
        Plane.YZ: (origin_row + out_top_h + gutter_h, origin_col + out_left_w + gutter_w),
    }

    canvas = np.zeros((cfg.target_size, cfg.target_size, 3), dtype=np.uint8)
    panels: dict[str, tuple[int, int, int, int]] = {}
    for plane in Plane:
        local, bw, bh = binned[plane]
        if not local:
            continue
        slot_row, slot_col = slots[plane]
        panels[plane.value] = (slot_row, slot_col, bh, bw)
        for (u, v), (rgb, _depth, _tb) in local.items():
            # v grows upward in the view frame; image rows grow downward.
            canvas[slot_row + (bh - 1 - v), slot_col + u] = rgb
    return RasterImage(pixels=canvas, panels=panels)


def render_points(
    points: list[GridPoint], palette: AminoAcidPalette, cfg: RenderConfig
) -> RasterImage:
    """Project pre-quantized points onto all three planes and composite."""
    views = {plane: project_view(points, plane, palette) for plane in Plane}
    return compose_multiview(views, cfg)


def render_protein(
    structure: ProteinStructure,
    palette: AminoAcidPalette,
    transform: GridTransform,
    cfg: RenderConfig,
) -> RasterImage:
    """Render a deduplicated structure: quantize, project three views, composite.

    Fully deterministic: identical inputs give a byte-identical pixel buffer.

    Raises:
        EmptyStructure: structure has no residues.
        EmptyProjection: propagated from composition (unreachable when the
            structure is non-empty).
    """
    if not structure.residues:
        raise EmptyStructure(f"cannot render {structure.id!r}: no residues")
    points, _clamped = map_structure(structure, transform)
    return render_points(points, palette, cfg)

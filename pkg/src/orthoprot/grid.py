"""Translate and quantize residue coordinates into the integer domain [0, 3200]^3.

Each structure gets its own transform: the minimum corner of its bounding
box maps to the origin, and coordinates are scaled by 10 grid units per
angstrom (0.1 A resolution).  Structures wider than 320 A are shrunk
uniformly so the largest extent still spans the full domain.  Rounding is
half-away-from-zero, fixed for reproducibility.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ingest import ProteinStructure
from .palette import AminoAcid

__all__ = [
    "DOMAIN_EXTENT",
    "BASE_SCALE",
    "GridTransform",
    "GridPoint",
    "EmptyStructure",
    "fit_transform",
    "map_point",
    "map_structure",
]

#: Upper bound (inclusive) of the integer domain on every axis.
DOMAIN_EXTENT = 3200

#: Default resolution: grid units per angstrom.
BASE_SCALE = 10.0


class EmptyStructure(ValueError):
    """A transform or render was requested for a structure with no residues."""


@dataclass(frozen=True)
class GridTransform:
    """Affine map from angstrom space into the integer domain.

    Attributes:
        translation: point that maps to the origin (the structure's min corner).
        scale: grid units per angstrom, > 0.
        domain_extent: inclusive per-axis bound, fixed at 3200.
    """

    translation: tuple[float, float, float]
    scale: float
    domain_extent: int = DOMAIN_EXTENT

    def __post_init__(self) -> None:
        if not self.scale > 0:
            raise ValueError(f"scale must be positive, got {self.scale}")
        if self.domain_extent != DOMAIN_EXTENT:
            raise ValueError(f"domain_extent is fixed at {DOMAIN_EXTENT}")


@dataclass(frozen=True)
class GridPoint:
    """A quantized residue: integer coordinates plus identity carried through
    for color lookup and deterministic collision tie-breaking."""

    x: int
    y: int
    z: int
    amino_acid: AminoAcid
    chain_id: str
    seq_num: int


def fit_transform(structure: ProteinStructure) -> GridTransform:
    """Fit the per-structure transform.

    Translation is the componentwise minimum of all residue positions; scale
    is 10 grid units per angstrom, reduced to 3200 / max_extent only when
    the largest extent would otherwise overflow the domain.

    Raises:
        EmptyStructure: if the structure has no residues.
    """
    if not structure.residues:
        raise EmptyStructure(f"cannot fit a transform for {structure.id!r}: no residues")
    positions = np.array([r.position for r in structure.residues], dtype=np.float64)
    low = positions.min(axis=0)
    max_extent = float((positions.max(axis=0) - low).max())
    if max_extent * BASE_SCALE <= DOMAIN_EXTENT:
        scale = BASE_SCALE
    else:
        scale = DOMAIN_EXTENT / max_extent
    return GridTransform(translation=(low[0], low[1], low[2]), scale=scale)


def _round_half_away(values: np.ndarray) -> np.ndarray:
    return np.where(values >= 0, np.floor(values + 0.5), np.ceil(values - 0.5))


def map_point(
    position: tuple[float, float, float], transform: GridTransform
) -> tuple[int, int, int]:
    """Quantize one position: round((p - translation) * scale), clamped to the domain."""
    p = np.asarray(position, dtype=np.float64)
    t = np.asarray(transform.translation, dtype=np.float64)
    raw = _round_half_away((p - t) * transform.scale)
    clamped = np.clip(raw, 0, transform.domain_extent)
    return int(clamped[0]), int(clamped[1]), int(clamped[2])


def map_structure(
    structure: ProteinStructure, transform: GridTransform
) -> tuple[list[GridPoint], int]:
    """Quantize every residue of a structure.

    Returns:
        (points, clamped_count) where clamped_count is the number of residues
        whose mapped coordinates had to be clamped into the domain on at
        least one axis.  Under a transform fit to the same structure the
        count is 0; it only grows when a transform is shared across
        structures.
    """
    if not structure.residues:
        return [], 0
    positions = np.array([r.position for r in structure.residues], dtype=np.float64)
    t = np.asarray(transform.translation, dtype=np.float64)
    raw = _round_half_away((positions - t) * transform.scale)
    clamped = np.clip(raw, 0, transform.domain_extent)
    clamped_count = int((raw != clamped).any(axis=1).sum())
    coords = clamped.astype(np.int64)
    points = [
        GridPoint(
            x=int(c[0]),
            y=int(c[1]),
            z=int(c[2]),
            amino_acid=r.amino_acid,
            chain_id=r.chain_id,
            seq_num=r.seq_num,
        )
        for r, c in zip(structure.residues, coords)
    ]
    return points, clamped_count

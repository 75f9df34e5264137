"""Protein structures to multiview dot images and paired real/mutant datasets.

The pipeline: parse PDBx/XML into per-residue records, quantize coordinates
onto a fixed integer grid, render three orthographic dot projections into one
square image with a per-amino-acid color palette, and pair each real protein
with a seeded point mutant to produce a labeled dataset with a JSON manifest.
"""

from .grid import (
    BASE_SCALE,
    DOMAIN_EXTENT,
    EmptyStructure,
    GridPoint,
    GridTransform,
    fit_transform,
    map_point,
    map_structure,
)
from .ingest import (
    IngestError,
    MalformedXml,
    NoAtomSites,
    ProteinStructure,
    ResidueRecord,
    deduplicate,
    parse_structure,
)
from .mutate import (
    MutationEntry,
    MutationLog,
    MutationSpec,
    derive_seed,
    mutate,
    replay,
)
from .palette import (
    BACKGROUND_COLOR,
    STANDARD_AMINO_ACIDS,
    AminoAcid,
    AminoAcidPalette,
    PaletteError,
    UnknownAminoAcid,
    decode,
    default_palette,
    encode,
    palette_fingerprint,
    palette_from_json,
    palette_table,
)
from .render import (
    EmptyProjection,
    Plane,
    RasterImage,
    RenderConfig,
    compose_multiview,
    project_view,
    render_points,
    render_protein,
)
from .dataset import (
    AllInputsFailed,
    BuildFailure,
    DatasetManifest,
    ManifestEntry,
    OutputNotWritable,
    TooFewEntries,
    build_dataset,
    split,
    stats,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # palette
    "AminoAcid",
    "AminoAcidPalette",
    "BACKGROUND_COLOR",
    "STANDARD_AMINO_ACIDS",
    "PaletteError",
    "UnknownAminoAcid",
    "default_palette",
    "encode",
    "decode",
    "palette_table",
    "palette_fingerprint",
    "palette_from_json",
    # ingest
    "IngestError",
    "MalformedXml",
    "NoAtomSites",
    "ProteinStructure",
    "ResidueRecord",
    "parse_structure",
    "deduplicate",
    # grid
    "BASE_SCALE",
    "DOMAIN_EXTENT",
    "EmptyStructure",
    "GridPoint",
    "GridTransform",
    "fit_transform",
    "map_point",
    "map_structure",
    # render
    "EmptyProjection",
    "Plane",
    "RasterImage",
    "RenderConfig",
    "project_view",
    "compose_multiview",
    "render_points",
    "render_protein",
    # mutate
    "MutationEntry",
    "MutationLog",
    "MutationSpec",
    "derive_seed",
    "mutate",
    "replay",
    # dataset
    "AllInputsFailed",
    "BuildFailure",
    "DatasetManifest",
    "ManifestEntry",
    "OutputNotWritable",
    "TooFewEntries",
    "build_dataset",
    "split",
    "stats",
]

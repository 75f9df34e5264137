#!/usr/bin/env python3
"""Render one protein into its three-view dot image.

Each residue becomes a single pixel of its amino acid's palette color,
projected onto three orthogonal planes: front (XZ) top-left, plan (XY)
bottom-left, profile (YZ) bottom-right. Collisions keep the point nearest
to the viewer. The composite is always the same square size, so images can
feed a fixed-input classifier directly.

Run from the repository root:

    python3 demos/02_render_views.py
"""

from pathlib import Path

import numpy as np

from orthoprot import (
    RenderConfig,
    decode,
    deduplicate,
    default_palette,
    fit_transform,
    map_structure,
    parse_structure,
    render_points,
)

palette = default_palette()
structure = deduplicate(parse_structure(Path("tests/data/6ABO.xml.gz")))
print(f"{structure.id}: {len(structure.residues)} residues")

# Each structure gets its own transform: min corner to origin, 10 grid
# units per angstrom (reduced only if the protein would overflow the grid).
transform = fit_transform(structure)
print(f"scale: {transform.scale} grid units per angstrom")

points, clamped = map_structure(structure, transform)
assert clamped == 0  # a fitted transform never clamps

img = render_points(points, palette, RenderConfig())
out = Path("demo_render.png")
img.save_png(out)
print(f"wrote {out}: {img.width}x{img.height}")

# The panels record where each view landed.
for name, (row, col, h, w) in sorted(img.panels.items()):
    print(f"  {name} panel: {w}x{h} at row {row}, col {col}")

# Color purity: every foreground pixel decodes to an amino acid, so the
# image is a lossless record of the projected residues.
mask = img.pixels.sum(axis=2) > 0
decoded = {
    decode(tuple(img.pixels[r, c]), palette).value
    for r, c in zip(*np.nonzero(mask))
}
print(f"foreground pixels: {int(mask.sum())}, distinct amino acids: {len(decoded)}")

#!/usr/bin/env python3
"""Build a labeled dataset: one real and one mutant image per protein.

The builder runs the whole pipeline per input file, records everything it
decided in a JSON manifest (palette fingerprint, render settings, seeds),
then assigns train/test partitions without ever separating a real/mutant
pair.

Run from the repository root:

    python3 demos/04_build_dataset.py
"""

from pathlib import Path

from orthoprot import DatasetManifest, build_dataset, split, stats

inputs = sorted(Path("tests/data").glob("*.xml.gz"))
out_dir = Path("demo_dataset")

manifest = build_dataset(inputs, out_dir, seed=20260825, probability=0.05)
print(f"built {len(manifest.entries)} images from {manifest.summary['proteins']} proteins")
for e in manifest.entries:
    print(f"  {e.image_path}  label={e.label}  residues={e.residue_count}")
if manifest.failures:
    for f in manifest.failures:
        print(f"  FAILED {f.source_path}: {f.error}")

# Train/test split: pairs stay together, assignment is seeded.
assigned = split(manifest, test_fraction=0.25, seed=1)
assigned.save(out_dir / "manifest.json")
spec = assigned.split_spec
print(f"\nsplit: {spec['train_pairs']} train pairs, {spec['test_pairs']} test pairs")

report = stats(DatasetManifest.load(out_dir / "manifest.json"))
print("\ndataset stats:")
for key in ("entries", "by_label", "by_split", "total_residues", "residue_counts"):
    print(f"  {key}: {report[key]}")

# Rebuilding with the same seed gives the same images; try it:
#   python3 demos/04_build_dataset.py && md5sum demo_dataset/*.png

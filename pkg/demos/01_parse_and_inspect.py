#!/usr/bin/env python3
"""Parse a structure file and look at what comes out.

A PDBx/XML file holds one atom record per line of the crystal model; we
reduce that to one record per residue (alpha-carbon position), then collapse
alternate conformers and extra models down to a single canonical chain.

Run from the repository root:

    python3 demos/01_parse_and_inspect.py
"""

from pathlib import Path

from orthoprot import deduplicate, parse_structure

path = Path("tests/data/5AFR.xml.gz")

# Raw parse: one record per residue instance, so alternate locations and
# extra models still show up as duplicates.
raw = parse_structure(path)
print(f"{raw.id}: {len(raw.residues)} residue instances before deduplication")
print(f"unknown residue names dropped: {raw.unknown_residues}")

dups = {}
for r in raw.residues:
    dups.setdefault((r.chain_id, r.seq_num), []).append(r)
multi = {k: v for k, v in dups.items() if len(v) > 1}
print(f"residues with multiple instances: {len(multi)}")
for key, records in sorted(multi.items())[:3]:
    variants = ", ".join(
        f"model={r.model_num} alt={r.alt_loc or '-'} occ={r.occupancy:.2f}"
        for r in records
    )
    print(f"  chain {key[0]} residue {key[1]}: {variants}")

# Deduplicated: model 1 only, best-occupancy conformer, sorted by position
# in the chain.
structure = deduplicate(raw)
print(f"\nafter deduplication: {len(structure.residues)} residues")
print("first five records:")
for r in structure.residues[:5]:
    x, y, z = r.position
    print(
        f"  {r.chain_id} {r.seq_num:4d} {r.amino_acid.value}"
        f"  ({x:8.3f}, {y:8.3f}, {z:8.3f})"
    )

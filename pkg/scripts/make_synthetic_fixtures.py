#!/usr/bin/env python3
"""Generate the synthetic PDBx/XML fixtures under tests/data/.

Real archive files cannot be redistributed here, so the test corpus is
generated: self-similar random walks with 3.8 Angstrom steps between
consecutive alpha carbons, amino acids drawn from natural frequencies, and
deliberate parser hazards mixed in (alternate locations, a second model,
waters, a nonstandard residue, a residue without an alpha carbon).

Deterministic: every structure is keyed by its id, so reruns are bitwise
identical. Run from the repository root:

    python3 scripts/make_synthetic_fixtures.py
"""

from __future__ import annotations

import gzip
import io
from pathlib import Path

import numpy as np

STEP = 3.8  # consecutive alpha-carbon distance, Angstrom

# Rough natural frequencies, percent; normalized before sampling.
AA_FREQ = {
    "ALA": 8.3, "ARG": 5.5, "ASN": 4.1, "ASP": 5.5, "CYS": 1.4,
    "GLN": 3.9, "GLU": 6.8, "GLY": 7.1, "HIS": 2.3, "ILE": 5.9,
    "LEU": 9.7, "LYS": 5.8, "MET": 2.4, "PHE": 3.9, "PRO": 4.7,
    "SER": 6.6, "THR": 5.3, "TRP": 1.1, "TYR": 2.9, "VAL": 6.9,
}

HEADER = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<PDBx:datablock datablockName="{name}"\n'
    '  xmlns:PDBx="http://pdbml.pdb.org/schema/pdbx-v50.xsd"\n'
    '  xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance">\n'
    "<PDBx:atom_siteCategory>\n"
)
FOOTER = "</PDBx:atom_siteCategory>\n</PDBx:datablock>\n"


def _atom_xml(
    atom_id: int,
    group: str,
    chain: str,
    seq: int,
    comp: str,
    name: str,
    xyz,
    occupancy: float = 1.0,
    alt: str | None = None,
    model: int = 1,
) -> str:
    alt_tag = (
        "      <PDBx:label_alt_id xsi:nil=\"true\"/>\n"
        if alt is None
        else f"      <PDBx:label_alt_id>{alt}</PDBx:label_alt_id>\n"
    )
    return (
        f'   <PDBx:atom_site id="{atom_id}">\n'
        f"      <PDBx:Cartn_x>{xyz[0]:.3f}</PDBx:Cartn_x>\n"
        f"      <PDBx:Cartn_y>{xyz[1]:.3f}</PDBx:Cartn_y>\n"
        f"      <PDBx:Cartn_z>{xyz[2]:.3f}</PDBx:Cartn_z>\n"
        f"      <PDBx:auth_asym_id>{chain}</PDBx:auth_asym_id>\n"
        f"      <PDBx:auth_comp_id>{comp}</PDBx:auth_comp_id>\n"
        f"      <PDBx:auth_seq_id>{seq}</PDBx:auth_seq_id>\n"
        f"      <PDBx:group_PDB>{group}</PDBx:group_PDB>\n"
        + alt_tag
        + f"      <PDBx:label_atom_id>{name}</PDBx:label_atom_id>\n"
        f"      <PDBx:label_comp_id>{comp}</PDBx:label_comp_id>\n"
        f"      <PDBx:occupancy>{occupancy:.2f}</PDBx:occupancy>\n"
        f"      <PDBx:pdbx_PDB_model_num>{model}</PDBx:pdbx_PDB_model_num>\n"
        "   </PDBx:atom_site>\n"
    )


def _walk(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random walk with unit steps scaled to STEP; mild directional memory."""
    steps = rng.normal(size=(n, 3))
    # Blend each step with the previous direction so chains stretch out a
    # little instead of collapsing into a ball.
    for i in range(1, n):
        steps[i] = 0.55 * steps[i] + 0.45 * steps[i - 1]
    norms = np.linalg.norm(steps, axis=1, keepdims=True)
    pos = np.cumsum(STEP * steps / norms, axis=0)
    return pos + rng.uniform(-5.0, 5.0, size=3)


def _sample_sequence(rng: np.random.Generator, n: int) -> list[str]:
    names = sorted(AA_FREQ)
    weights = np.array([AA_FREQ[k] for k in names])
    weights = weights / weights.sum()
    picks = rng.choice(len(names), size=n, p=weights)
    return [names[i] for i in picks]


def build_structure(pdb_id: str, chains: dict[str, int]) -> str:
    """Emit one PDBx/XML document as a string."""
    rng = np.random.Generator(
        np.random.Philox(key=int.from_bytes(pdb_id.encode(), "big"))
    )
    out = io.StringIO()
    out.write(HEADER.format(name=pdb_id))
    atom_id = 1

    first_chain = sorted(chains)[0]
    first_model_atoms: list[tuple] = []

    for chain in sorted(chains):
        n = chains[chain]
        ca = _walk(rng, n)
        seq = _sample_sequence(rng, n)
        # Hazards live in the first chain at fixed offsets.
        alt_at = 5 if chain == first_chain and n > 8 else -1
        no_ca_at = 11 if chain == first_chain and n > 14 else -1
        unk_at = 17 if chain == first_chain and n > 20 else -1

        for i in range(n):
            seq_num = i + 1
            comp = "XYZ" if i == unk_at else seq[i]
            n_pos = ca[i] + (-0.9, 1.1, 0.2)
            c_pos = ca[i] + (1.2, 0.6, -0.4)
            out.write(_atom_xml(atom_id, "ATOM", chain, seq_num, comp, "N", n_pos))
            atom_id += 1
            if i == alt_at:
                # Two conformers for the alpha carbon, one clear winner.
                out.write(
                    _atom_xml(atom_id, "ATOM", chain, seq_num, comp, "CA", ca[i],
                              occupancy=0.65, alt="A")
                )
                atom_id += 1
                out.write(
                    _atom_xml(atom_id, "ATOM", chain, seq_num, comp, "CA",
                              ca[i] + (0.8, -0.5, 0.3), occupancy=0.35, alt="B")
                )
                atom_id += 1
            elif i != no_ca_at:
                out.write(_atom_xml(atom_id, "ATOM", chain, seq_num, comp, "CA", ca[i]))
                atom_id += 1
            out.write(_atom_xml(atom_id, "ATOM", chain, seq_num, comp, "C", c_pos))
            atom_id += 1
            if chain == first_chain and i < 10:
                first_model_atoms.append((chain, seq_num, comp, ca[i]))

    # A second model duplicating the first ten residues, displaced; the
    # reader keeps model 1 only.
    for chain, seq_num, comp, pos in first_model_atoms:
        out.write(
            _atom_xml(atom_id, "ATOM", chain, seq_num, comp, "CA",
                      pos + (2.0, 2.0, 2.0), model=2)
        )
        atom_id += 1

    # Solvent records; ignored by the reader.
    for w in range(4):
        pos = rng.uniform(-20.0, 20.0, size=3)
        out.write(_atom_xml(atom_id, "HETATM", "S", 900 + w, "HOH", "O", pos))
        atom_id += 1

    out.write(FOOTER)
    return out.getvalue()


STRUCTURES = {
    "5AFR": {"A": 230},
    "5AGU": {"A": 180},
    "6ABO": {"A": 150, "B": 90},
    "6AGX": {"A": 320},
}


def main() -> None:
    data_dir = Path(__file__).resolve().parent.parent / "tests" / "data"
    data_dir.mkdir(parents=True, exist_ok=True)
    for pdb_id, chains in STRUCTURES.items():
        text = build_structure(pdb_id, chains)
        path = data_dir / f"{pdb_id}.xml.gz"
        # mtime=0 keeps the archive bytes reproducible across reruns.
        with open(path, "wb") as raw:
            with gzip.GzipFile(fileobj=raw, mode="wb", mtime=0) as gz:
                gz.write(text.encode("utf-8"))
        print(f"{path} ({path.stat().st_size} bytes)")


if __name__ == "__main__":
    main()

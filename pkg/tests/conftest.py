"""Shared builders for tests: XML documents, structures, and coordinate strategies."""

from __future__ import annotations

import gzip
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from orthoprot import AminoAcid, ProteinStructure, ResidueRecord, STANDARD_AMINO_ACIDS

DATA_DIR = Path(__file__).parent / "data"
FIXTURE_IDS = ("5AFR", "5AGU", "6ABO", "6AGX")

_HEADER = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<PDBx:datablock datablockName="{name}"\n'
    '  xmlns:PDBx="http://pdbml.pdb.org/schema/pdbx-v50.xsd"\n'
    '  xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance">\n'
    "<PDBx:atom_siteCategory>\n"
)
_FOOTER = "</PDBx:atom_siteCategory>\n</PDBx:datablock>\n"


def atom_xml(
    atom_id: int,
    xyz,
    *,
    group: str = "ATOM",
    chain: str = "A",
    seq: int = 1,
    comp: str = "ALA",
    name: str = "CA",
    occupancy: float | None = 1.0,
    alt: str | None = None,
    nil_alt: bool = False,
    model: int | None = 1,
) -> str:
    """One atom_site element; optional fields are omitted when None."""
    parts = [f'   <PDBx:atom_site id="{atom_id}">\n']
    parts.append(f"      <PDBx:Cartn_x>{xyz[0]}</PDBx:Cartn_x>\n")
    parts.append(f"      <PDBx:Cartn_y>{xyz[1]}</PDBx:Cartn_y>\n")
    parts.append(f"      <PDBx:Cartn_z>{xyz[2]}</PDBx:Cartn_z>\n")
    parts.append(f"      <PDBx:auth_asym_id>{chain}</PDBx:auth_asym_id>\n")
    parts.append(f"      <PDBx:auth_comp_id>{comp}</PDBx:auth_comp_id>\n")
    parts.append(f"      <PDBx:auth_seq_id>{seq}</PDBx:auth_seq_id>\n")
    parts.append(f"      <PDBx:group_PDB>{group}</PDBx:group_PDB>\n")
    if nil_alt:
        parts.append('      <PDBx:label_alt_id xsi:nil="true"/>\n')
    elif alt is not None:
        parts.append(f"      <PDBx:label_alt_id>{alt}</PDBx:label_alt_id>\n")
    parts.append(f"      <PDBx:label_atom_id>{name}</PDBx:label_atom_id>\n")
    parts.append(f"      <PDBx:label_comp_id>{comp}</PDBx:label_comp_id>\n")
    if occupancy is not None:
        parts.append(f"      <PDBx:occupancy>{occupancy}</PDBx:occupancy>\n")
    if model is not None:
        parts.append(f"      <PDBx:pdbx_PDB_model_num>{model}</PDBx:pdbx_PDB_model_num>\n")
    parts.append("   </PDBx:atom_site>\n")
    return "".join(parts)


def datablock(name: str, atoms: str) -> str:
    return _HEADER.format(name=name) + atoms + _FOOTER


def write_xml(path: Path, text: str, compress: bool = False) -> Path:
    data = text.encode("utf-8")
    if compress:
        with open(path, "wb") as raw:
            with gzip.GzipFile(fileobj=raw, mode="wb", mtime=0) as gz:
                gz.write(data)
    else:
        path.write_bytes(data)
    return path


def residue(
    chain: str = "A",
    seq: int = 1,
    aa: AminoAcid = AminoAcid.ALA,
    pos=(0.0, 0.0, 0.0),
    **kwargs,
) -> ResidueRecord:
    return ResidueRecord(
        chain_id=chain,
        seq_num=seq,
        amino_acid=aa,
        position=tuple(float(c) for c in pos),
        **kwargs,
    )


def make_structure(
    positions, *, id: str = "TEST", aas=None, chain: str = "A"
) -> ProteinStructure:
    """Structure with one residue per position, sequential residue numbers."""
    positions = list(positions)
    if aas is None:
        aas = [STANDARD_AMINO_ACIDS[i % 20] for i in range(len(positions))]
    return ProteinStructure(
        id=id,
        residues=[
            residue(chain=chain, seq=i + 1, aa=aa, pos=pos)
            for i, (pos, aa) in enumerate(zip(positions, aas))
        ],
    )


def random_structure(
    rng: np.random.Generator, n: int, *, span: float = 50.0, id: str = "RAND"
) -> ProteinStructure:
    """n residues uniform in a cube of side ``span`` angstrom."""
    positions = rng.uniform(-span / 2, span / 2, size=(n, 3))
    aas = [STANDARD_AMINO_ACIDS[i] for i in rng.integers(0, 20, size=n)]
    return make_structure(positions, id=id, aas=aas)


# Coordinates on a 2^-10 lattice with |value| < 2^11.  Every value, every
# pairwise difference, and every product with the 10.0 grid scale is exactly
# representable in float64, so transform arithmetic carries no rounding
# error and bitwise comparisons are meaningful.
DYADIC_STEP = 2.0**-10
dyadic_coord = st.integers(min_value=-(2**21), max_value=2**21).map(
    lambda k: k * DYADIC_STEP
)
dyadic_position = st.tuples(dyadic_coord, dyadic_coord, dyadic_coord)


_AAS = ("ALA", "GLY", "LYS", "TRP", "SER", "VAL", "GLU", "PHE", "THR", "ARG")


def protein_xml(tmp_path: Path, name: str, n: int = 30, compress: bool = False) -> Path:
    """A small helical chain on disk; varied residues so mutation can bite."""
    import math

    atoms = ""
    for i in range(n):
        pos = (
            round(3.8 * i, 3),
            round(5.0 * math.sin(i / 3.0), 3),
            round(5.0 * math.cos(i / 3.0), 3),
        )
        atoms += atom_xml(i + 1, pos, seq=i + 1, comp=_AAS[i % len(_AAS)])
    suffix = ".xml.gz" if compress else ".xml"
    return write_xml(tmp_path / f"{name}{suffix}", datablock(name, atoms), compress)


@pytest.fixture(scope="session")
def fixture_paths() -> list[Path]:
    paths = [DATA_DIR / f"{pdb_id}.xml.gz" for pdb_id in FIXTURE_IDS]
    missing = [p for p in paths if not p.exists()]
    if missing:
        pytest.fail(
            f"missing vendored fixtures {missing}; run scripts/make_synthetic_fixtures.py"
        )
    return paths

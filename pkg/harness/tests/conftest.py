"""Fixtures that build toy image datasets through the pipeline's CLI.

The image pipeline is exercised only through its command line and the
files it writes (manifest.json plus PNGs); none of its Python API is
imported here. Structures are synthetic all-alanine random walks, so a
real render uses a single color and a heavily mutated one does not,
which gives a classifier an easy, unambiguous signal.
"""

from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

STEP_ANGSTROM = 3.8

_HEADER = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<PDBx:datablock datablockName="{name}"\n'
    '  xmlns:PDBx="http://pdbml.pdb.org/schema/pdbx-v50.xsd">\n'
    "<PDBx:atom_siteCategory>\n"
)
_FOOTER = "</PDBx:atom_siteCategory>\n</PDBx:datablock>\n"


def write_walk_xml(path: Path, name: str, n_residues: int, seed: int) -> Path:
    """Write an all-alanine chain laid out as a seeded 3D random walk."""
    rng = np.random.default_rng(seed)
    pos = np.zeros(3)
    parts = [_HEADER.format(name=name)]
    for i in range(n_residues):
        step = rng.normal(size=3)
        pos = pos + STEP_ANGSTROM * step / np.linalg.norm(step)
        parts.append(
            f'   <PDBx:atom_site id="{i + 1}">\n'
            f"      <PDBx:Cartn_x>{pos[0]:.3f}</PDBx:Cartn_x>\n"
            f"      <PDBx:Cartn_y>{pos[1]:.3f}</PDBx:Cartn_y>\n"
            f"      <PDBx:Cartn_z>{pos[2]:.3f}</PDBx:Cartn_z>\n"
            "      <PDBx:auth_asym_id>A</PDBx:auth_asym_id>\n"
            f"      <PDBx:auth_seq_id>{i + 1}</PDBx:auth_seq_id>\n"
            "      <PDBx:group_PDB>ATOM</PDBx:group_PDB>\n"
            "      <PDBx:label_atom_id>CA</PDBx:label_atom_id>\n"
            "      <PDBx:label_comp_id>ALA</PDBx:label_comp_id>\n"
            "      <PDBx:occupancy>1.0</PDBx:occupancy>\n"
            "      <PDBx:pdbx_PDB_model_num>1</PDBx:pdbx_PDB_model_num>\n"
            "   </PDBx:atom_site>\n"
        )
    parts.append(_FOOTER)
    path.write_text("".join(parts), encoding="utf-8")
    return path


def _run_pipeline(*args: str) -> None:
    proc = subprocess.run(
        [sys.executable, "-m", "orthoprot", *args],
        capture_output=True,
        text=True,
    )
    if proc.returncode != 0:
        raise RuntimeError(f"pipeline CLI failed ({proc.returncode}):\n{proc.stderr}")


def build_paired_dataset(
    out_dir: Path,
    *,
    n_pairs: int,
    n_residues: int = 60,
    seed: int = 7,
    probability: float = 0.9,
    test_fraction: float = 0.4,
) -> Path:
    """Build a split dataset of real/mutated image pairs; returns manifest path."""
    src_dir = out_dir / "structures"
    src_dir.mkdir(parents=True, exist_ok=True)
    inputs = [
        str(write_walk_xml(src_dir / f"TOY{i:03d}.xml", f"TOY{i:03d}", n_residues, seed + i))
        for i in range(n_pairs)
    ]
    data_dir = out_dir / "dataset"
    _run_pipeline(
        "build", "--out", str(data_dir), "--seed", str(seed),
        "--prob", str(probability), *inputs,
    )
    manifest = data_dir / "manifest.json"
    _run_pipeline("split", "--fraction", str(test_fraction), "--seed", str(seed), str(manifest))
    return manifest


@pytest.fixture(scope="session")
def toy_manifest(tmp_path_factory) -> Path:
    """Six pairs, split: enough for loading and report tests."""
    return build_paired_dataset(
        tmp_path_factory.mktemp("toy"), n_pairs=6, n_residues=40
    )


@pytest.fixture(scope="session")
def toy_manifest_dict(toy_manifest) -> dict:
    with open(toy_manifest, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    raw["_root"] = str(toy_manifest.parent)
    return raw


@pytest.fixture(scope="session")
def unsplit_manifest(tmp_path_factory) -> Path:
    """Two pairs, never split: exercises the incomplete-manifest checks."""
    out_dir = tmp_path_factory.mktemp("unsplit")
    src_dir = out_dir / "structures"
    src_dir.mkdir()
    inputs = [
        str(write_walk_xml(src_dir / f"RAW{i}.xml", f"RAW{i}", 30, 100 + i))
        for i in range(2)
    ]
    data_dir = out_dir / "dataset"
    _run_pipeline("build", "--out", str(data_dir), "--seed", "3", *inputs)
    return data_dir / "manifest.json"

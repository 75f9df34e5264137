"""Synthesize "false protein" negatives by recoloring residue identities.

Residues are visited in canonical (chain_id, seq_num) order; each draws one
uniform variate, and those below the mutation probability draw a second
variate to pick a replacement uniformly among the other 19 amino acids.
Positions never change, substitutions never repeat the original identity,
and the two-draws-per-mutation stream layout is part of the contract: the
same (structure, spec) always yields the same mutant.

The generator is Philox4x64-10 keyed directly with the seed (no seed
sequence scrambling), a counter-based algorithm that is reproducible across
platforms.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace

import numpy as np

from .ingest import ProteinStructure, ResidueRecord
from .palette import AminoAcid, STANDARD_AMINO_ACIDS

__all__ = [
    "RNG_ALGORITHM",
    "SEED_DERIVATION",
    "MutationSpec",
    "MutationEntry",
    "MutationLog",
    "UnknownResidueReference",
    "mutate",
    "replay",
    "derive_seed",
]

#: Identifier of the fixed generator, recorded in dataset manifests.
RNG_ALGORITHM = "philox4x64-10(key=seed)"

#: How per-protein seeds are derived from the dataset seed.
SEED_DERIVATION = "uint64(sha256(be64(dataset_seed) + utf8(protein_id))[:8])"


class UnknownResidueReference(KeyError):
    """A mutation-log entry references a residue the structure does not have."""


@dataclass(frozen=True)
class MutationSpec:
    """Mutation parameters: probability, seed, and the (fixed) RNG identity."""

    probability: float = 0.05
    seed: int = 0
    rng_algorithm: str = RNG_ALGORITHM

    def __post_init__(self) -> None:
        if not 0.0 <= self.probability <= 1.0:
            raise ValueError(f"probability must be in [0, 1], got {self.probability}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.rng_algorithm != RNG_ALGORITHM:
            raise ValueError(f"unsupported rng_algorithm {self.rng_algorithm!r}")


@dataclass(frozen=True)
class MutationEntry:
    """One substitution: original != mutated always holds."""

    chain_id: str
    seq_num: int
    original: AminoAcid
    mutated: AminoAcid


@dataclass
class MutationLog:
    """Record of every substitution applied to one structure."""

    entries: list[MutationEntry] = field(default_factory=list)
    total_residues: int = 0

    def to_json_dict(self) -> dict:
        return {
            "total_residues": self.total_residues,
            "entries": [
                {
                    "chain_id": e.chain_id,
                    "seq_num": e.seq_num,
                    "original": e.original.value,
                    "mutated": e.mutated.value,
                }
                for e in self.entries
            ],
        }

    @classmethod
    def from_json_dict(cls, raw: dict) -> "MutationLog":
        return cls(
            entries=[
                MutationEntry(
                    chain_id=e["chain_id"],
                    seq_num=int(e["seq_num"]),
                    original=AminoAcid(e["original"]),
                    mutated=AminoAcid(e["mutated"]),
                )
                for e in raw.get("entries", [])
            ],
            total_residues=int(raw.get("total_residues", 0)),
        )

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "MutationLog":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json_dict(json.load(fh))


def derive_seed(dataset_seed: int, protein_id: str) -> int:
    """Mix the dataset seed with a protein id into an independent 64-bit seed."""
    digest = hashlib.sha256(
        dataset_seed.to_bytes(8, "big") + protein_id.encode("utf-8")
    ).digest()
    return int.from_bytes(digest[:8], "big")


def mutate(
    structure: ProteinStructure, spec: MutationSpec
) -> tuple[ProteinStructure, MutationLog]:
    """Apply independent per-residue substitutions under a seeded generator.

    The structure should be deduplicated; residues are processed in
    (chain_id, seq_num) order regardless of list order.  Geometry is
    untouched: every output residue keeps its original position.
    """
    rng = np.random.Generator(np.random.Philox(key=spec.seed))
    indexed = sorted(
        range(len(structure.residues)),
        key=lambda i: (structure.residues[i].chain_id, structure.residues[i].seq_num),
    )
    mutated_residues: list[ResidueRecord] = list(structure.residues)
    entries: list[MutationEntry] = []
    for i in indexed:
        record = structure.residues[i]
        if rng.random() < spec.probability:
            # Second draw picks among the other 19; floor(u * 19) stays in
            # 0..18 because random() < 1, so a substitution never no-ops.
            others = [aa for aa in STANDARD_AMINO_ACIDS if aa is not record.amino_acid]
            choice = others[min(int(rng.random() * len(others)), len(others) - 1)]
            mutated_residues[i] = replace(record, amino_acid=choice)
            entries.append(
                MutationEntry(
                    chain_id=record.chain_id,
                    seq_num=record.seq_num,
                    original=record.amino_acid,
                    mutated=choice,
                )
            )
    log = MutationLog(entries=entries, total_residues=len(structure.residues))
    mutant = ProteinStructure(
        id=structure.id,
        residues=mutated_residues,
        source_path=structure.source_path,
        unknown_residues=structure.unknown_residues,
    )
    return mutant, log


def replay(structure: ProteinStructure, log: MutationLog) -> ProteinStructure:
    """Re-apply a logged mutation without any randomness.

    Raises:
        UnknownResidueReference: an entry names a (chain, seq) the structure
            lacks, or the residue there does not match the logged original.
    """
    index = {(r.chain_id, r.seq_num): i for i, r in enumerate(structure.residues)}
    residues = list(structure.residues)
    for entry in log.entries:
        key = (entry.chain_id, entry.seq_num)
        if key not in index:
            raise UnknownResidueReference(f"no residue at {key}")
        i = index[key]
        if residues[i].amino_acid is not entry.original:
            raise UnknownResidueReference(
                f"residue at {key} is {residues[i].amino_acid.value}, "
                f"log expected {entry.original.value}"
            )
        residues[i] = replace(residues[i], amino_acid=entry.mutated)
    return ProteinStructure(
        id=structure.id,
        residues=residues,
        source_path=structure.source_path,
        unknown_residues=structure.unknown_residues,
    )

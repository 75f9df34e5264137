"""Parse PDBx/XML structure files into deduplicated residue records.

One record is produced per polymer residue instance (per model and per
alternate-location variant), positioned at its alpha-carbon atom, or at the
centroid of the instance's atoms when no CA is present.  Deduplication then
collapses the instances to at most one record per (chain, residue number):
model 1 only, highest occupancy first, lexicographically smallest altloc on
ties.

Input may be plain or gzip-compressed XML; gzip is detected from magic
bytes, never from file names.  Parsing streams atom-site elements and never
holds the whole document tree.
"""

from __future__ import annotations

import gzip
import io
import math
import os
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Iterable

from .palette import AminoAcid

__all__ = [
    "ResidueRecord",
    "ProteinStructure",
    "IngestError",
    "MalformedXml",
    "NoAtomSites",
    "parse_structure",
    "deduplicate",
]

GZIP_MAGIC = b"\x1f\x8b"


class IngestError(Exception):
    """Base class for structure-file parsing failures."""


class MalformedXml(IngestError):
    """The input stream is not well-formed XML (or has non-finite coordinates)."""


class NoAtomSites(IngestError):
    """The XML parsed cleanly but contains zero atom-site records."""


@dataclass(frozen=True)
class ResidueRecord:
    """One amino acid observed at one position.

    Attributes:
        chain_id: author chain identifier.
        seq_num: author residue number within the chain.
        amino_acid: residue identity; UNK only transiently inside the parser.
        position: representative 3D coordinate in angstroms.
        occupancy: crystallographic occupancy in [0, 1].
        alt_loc: alternate-location code, None when the residue has none.
        model_num: model number, >= 1.
    """

    chain_id: str
    seq_num: int
    amino_acid: AminoAcid
    position: tuple[float, float, float]
    occupancy: float = 1.0
    alt_loc: str | None = None
    model_num: int = 1


@dataclass
class ProteinStructure:
    """A parsed structure: an accession id plus its residue records.

    After :func:`deduplicate`, residues are unique per (chain_id, seq_num)
    and sorted by that key.  ``unknown_residues`` counts records dropped
    because their residue name is not a standard amino acid.
    """

    id: str
    residues: list[ResidueRecord] = field(default_factory=list)
    source_path: str = ""
    unknown_residues: int = 0


# Tags of interest inside an atom_site element (namespace-stripped).
_ATOM_FIELDS = frozenset(
    {
        "group_PDB",
        "label_atom_id",
        "auth_atom_id",
        "auth_asym_id",
        "label_asym_id",
        "auth_seq_id",
        "label_seq_id",
        "auth_comp_id",
        "label_comp_id",
        "label_alt_id",
        "Cartn_x",
        "Cartn_y",
        "Cartn_z",
        "occupancy",
        "pdbx_PDB_model_num",
    }
)


def _local(tag: str) -> str:
    """Strip the XML namespace from a qualified tag."""
    return tag.rsplit("}", 1)[-1]


@dataclass
class _Atom:
    name: str
    chain_id: str
    seq_num: int
    comp_id: str
    x: float
    y: float
    z: float
    occupancy: float
    alt_loc: str | None
    model_num: int


def _open_stream(source, own: list) -> BinaryIO:
    """Normalize path / bytes / binary file into a seekless binary stream."""
    if isinstance(source, (str, os.PathLike)):
        fh = open(source, "rb")
        own.append(fh)
        stream: BinaryIO = fh
    elif isinstance(source, (bytes, bytearray)):
        stream = io.BytesIO(bytes(source))
    else:
        stream = source
    head = stream.read(2)
    stream = _Prefixed(head, stream)
    if head == GZIP_MAGIC:
        gz = gzip.GzipFile(fileobj=stream)
        own.append(gz)
        return gz
    return stream


class _Prefixed(io.RawIOBase):
    """Binary stream with a consumed prefix pushed back (input may be unseekable)."""

    def __init__(self, prefix: bytes, stream) -> None:
        self._prefix = prefix
        self._stream = stream

    def readable(self) -> bool:
        return True

    def read(self, size: int = -1) -> bytes:
        if self._prefix:
            if size is None or size < 0 or size >= len(self._prefix):
                out, self._prefix = self._prefix, b""
                rest = self._stream.read(size - len(out) if size and size > 0 else size)
                return out + (rest or b"")
            out, self._prefix = self._prefix[:size], self._prefix[size:]
            return out
        return self._stream.read(size) or b""

    def readinto(self, b) -> int:
        data = self.read(len(b))
        b[: len(data)] = data
        return len(data)


def _parse_atom(elem: ET.Element) -> _Atom | None:
    """Extract one atom from an atom_site element; None for non-polymer records."""
    values: dict[str, str | None] = {}
    nil: set[str] = set()
    for child in elem:
        name = _local(child.tag)
        if name not in _ATOM_FIELDS:
            continue
        for attr, val in child.attrib.items():
            if _local(attr) == "nil" and val == "true":
                nil.add(name)
        values[name] = child.text.strip() if child.text else ""

    group = values.get("group_PDB", "ATOM")
    if group != "ATOM":
        return None  # waters, ligands, ions

    try:
        x = float(values["Cartn_x"])
        y = float(values["Cartn_y"])
        z = float(values["Cartn_z"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedXml(f"atom_site without usable coordinates: {exc}") from exc
    if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
        raise MalformedXml(f"non-finite coordinate in atom_site: ({x}, {y}, {z})")

    chain = values.get("auth_asym_id") or values.get("label_asym_id") or "A"
    seq_raw = values.get("auth_seq_id") or values.get("label_seq_id")
    if not seq_raw:
        raise MalformedXml("atom_site without a residue number")
    comp = values.get("auth_comp_id") or values.get("label_comp_id") or ""
    name = values.get("label_atom_id") or values.get("auth_atom_id") or ""

    alt = values.get("label_alt_id")
    if "label_alt_id" in nil or not alt:
        alt_loc = None
    else:
        alt_loc = alt

    occ_raw = values.get("occupancy")
    try:
        occupancy = float(occ_raw) if occ_raw else 1.0
    except ValueError as exc:
        raise MalformedXml(f"bad occupancy {occ_raw!r}") from exc

    model_raw = values.get("pdbx_PDB_model_num")
    try:
        model_num = int(model_raw) if model_raw else 1
        seq_num = int(seq_raw)
    except ValueError as exc:
        raise MalformedXml(f"non-integer residue/model number: {exc}") from exc

    return _Atom(
        name=name.upper(),
        chain_id=chain,
        seq_num=seq_num,
        comp_id=comp,
        x=x,
        y=y,
        z=z,
        occupancy=occupancy,
        alt_loc=alt_loc,
        model_num=model_num,
    )


def _residue_records(atoms: Iterable[_Atom]) -> tuple[list[ResidueRecord], int]:
    """Group atoms into residue instances, one record per (model, chain, seq, altloc).

    Atoms without an altloc are shared by every altloc variant of their
    residue.  Returns (records, unknown_count) where unknown_count is the
    number of residue instances dropped for a non-standard residue name.
    """
    groups: dict[tuple[int, str, int], list[_Atom]] = {}
    order: list[tuple[int, str, int]] = []
    for atom in atoms:
        key = (atom.model_num, atom.chain_id, atom.seq_num)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(atom)

    records: list[ResidueRecord] = []
    unknown = 0
    for key in order:
        model_num, chain_id, seq_num = key
        group = groups[key]
        shared = [a for a in group if a.alt_loc is None]
        alt_codes = sorted({a.alt_loc for a in group if a.alt_loc is not None})
        variants: list[tuple[str | None, list[_Atom]]]
        if alt_codes:
            variants = [
                (code, shared + [a for a in group if a.alt_loc == code])
                for code in alt_codes
            ]
        else:
            variants = [(None, shared)]

        for alt_loc, members in variants:
            aa = AminoAcid.from_code(members[0].comp_id)
            if aa is AminoAcid.UNK:
                unknown += 1
                continue
            ca = next((a for a in members if a.name == "CA"), None)
            if ca is not None:
                position = (ca.x, ca.y, ca.z)
                occupancy = ca.occupancy
            else:
                n = len(members)
                position = (
                    sum(a.x for a in members) / n,
                    sum(a.y for a in members) / n,
                    sum(a.z for a in members) / n,
                )
                occupancy = sum(a.occupancy for a in members) / n
            records.append(
                ResidueRecord(
                    chain_id=chain_id,
                    seq_num=seq_num,
                    amino_acid=aa,
                    position=position,
                    occupancy=occupancy,
                    alt_loc=alt_loc,
                    model_num=model_num,
                )
            )
    return records, unknown


def parse_structure(source, id: str | None = None) -> ProteinStructure:
    """Parse a PDBx/XML stream into a not-yet-deduplicated ProteinStructure.

    Args:
        source: path, bytes, or binary file object; plain or gzipped XML.
        id: accession to record; defaults to the datablockName attribute,
            then to the file stem.

    Raises:
        MalformedXml: unparseable stream or unusable atom records.
        NoAtomSites: well-formed XML with zero atom-site records.
    """
    own: list = []
    source_path = str(source) if isinstance(source, (str, os.PathLike)) else ""
    try:
        stream = _open_stream(source, own)
        atoms: list[_Atom] = []
        datablock_name = None
        try:
            context = ET.iterparse(stream, events=("start", "end"))
            for event, elem in context:
                name = _local(elem.tag)
                if event == "start":
                    if name == "datablock" and datablock_name is None:
                        for attr, val in elem.attrib.items():
                            if _local(attr) == "datablockName":
                                datablock_name = val
                    continue
                if name == "atom_site":
                    atom = _parse_atom(elem)
                    if atom is not None:
                        atoms.append(atom)
                    elem.clear()
        except ET.ParseError as exc:
            raise MalformedXml(str(exc)) from exc
        except (OSError, EOFError, gzip.BadGzipFile) as exc:
            raise MalformedXml(f"could not read stream: {exc}") from exc
    finally:
        for fh in reversed(own):
            fh.close()

    if not atoms:
        raise NoAtomSites("no polymer atom-site records found")

    structure_id = id or datablock_name or (Path(source_path).name.split(".")[0] if source_path else "")
    records, unknown = _residue_records(atoms)
    return ProteinStructure(
        id=structure_id,
        residues=records,
        source_path=source_path,
        unknown_residues=unknown,
    )


def _dedup_rank(record: ResidueRecord) -> tuple[float, str]:
    # Highest occupancy wins; occupancy ties fall to the smallest altloc code.
    return (-record.occupancy, record.alt_loc or "")


def deduplicate(structure: ProteinStructure) -> ProteinStructure:
    """Collapse to one record per (chain_id, seq_num).

    Keeps model-1 records only, then the highest-occupancy record per
    residue (ties: lexicographically smallest altloc).  Output is sorted by
    (chain_id, seq_num).  Idempotent; an empty structure passes through.
    """
    best: dict[tuple[str, int], ResidueRecord] = {}
    dropped_unknown = 0
    for record in structure.residues:
        if record.model_num != 1:
            continue
        if record.amino_acid is AminoAcid.UNK:
            dropped_unknown += 1
            continue
        key = (record.chain_id, record.seq_num)
        current = best.get(key)
        if current is None or _dedup_rank(record) < _dedup_rank(current):
            best[key] = record
    residues = [best[key] for key in sorted(best)]
    return ProteinStructure(
        id=structure.id,
        residues=residues,
        source_path=structure.source_path,
        unknown_residues=structure.unknown_residues + dropped_unknown,
    )

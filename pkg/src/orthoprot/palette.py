"""Amino-acid vocabulary and the bijective amino-acid <-> RGB palette.

Every rendered dot carries the exact color of one amino acid, and every
non-background pixel of a rendered image can be decoded back to the amino
acid it came from.  Colors are stored as 24-bit integers interpreted as
0xRRGGBB; 0 (black) is reserved for the background and never assigned.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

__all__ = [
    "AminoAcid",
    "STANDARD_AMINO_ACIDS",
    "AminoAcidPalette",
    "PaletteError",
    "UnknownAminoAcid",
    "default_palette",
    "encode",
    "decode",
    "palette_table",
    "palette_fingerprint",
    "palette_from_json",
]


class AminoAcid(Enum):
    """The 20 standard amino acids (three-letter codes) plus an Unknown sentinel.

    ``UNK`` marks residues whose name is not one of the standard twenty; it is
    never a palette key and never survives into a renderable structure.
    """

    ALA = "ALA"
    ARG = "ARG"
    ASN = "ASN"
    ASP = "ASP"
    CYS = "CYS"
    GLN = "GLN"
    GLU = "GLU"
    GLY = "GLY"
    HIS = "HIS"
    ILE = "ILE"
    LEU = "LEU"
    LYS = "LYS"
    MET = "MET"
    PHE = "PHE"
    PRO = "PRO"
    SER = "SER"
    THR = "THR"
    TRP = "TRP"
    TYR = "TYR"
    VAL = "VAL"
    UNK = "UNK"

    @classmethod
    def from_code(cls, code: str) -> "AminoAcid":
        """Map a residue name to an AminoAcid, falling back to UNK."""
        try:
            aa = cls(code.strip().upper())
        except ValueError:
            return cls.UNK
        return aa


#: Canonical ordering of the standard amino acids (alphabetical by code).
#: Mutation replacement draws index into this tuple, so the order is a
#: reproducibility contract, not a style choice.
STANDARD_AMINO_ACIDS: tuple[AminoAcid, ...] = tuple(
    aa for aa in AminoAcid if aa is not AminoAcid.UNK
)

#: Color value reserved for image background.
BACKGROUND_COLOR = 0

# Source-of-truth color table.  ALA, GLY and LYS are fixed published values;
# the remaining 17 are implementation constants drawn from the channel grid
# {0, 128, 255} so that any two entries differ by >= 127 in some channel.
_DEFAULT_COLORS: dict[AminoAcid, int] = {
    AminoAcid.ALA: 0x000080,  # 128
    AminoAcid.ARG: 0xFF0000,
    AminoAcid.ASN: 0x008080,
    AminoAcid.ASP: 0xFF8000,
    AminoAcid.CYS: 0xFFFF00,
    AminoAcid.GLN: 0x800080,
    AminoAcid.GLU: 0xFF0080,
    AminoAcid.GLY: 0x00FF00,  # 65280
    AminoAcid.HIS: 0x0080FF,
    AminoAcid.ILE: 0x80FF00,
    AminoAcid.LEU: 0x00FF80,
    AminoAcid.LYS: 0x808000,  # 8421376
    AminoAcid.MET: 0xFF00FF,
    AminoAcid.PHE: 0x8080FF,
    AminoAcid.PRO: 0x800000,
    AminoAcid.SER: 0x00FFFF,
    AminoAcid.THR: 0x80FFFF,
    AminoAcid.TRP: 0x8000FF,
    AminoAcid.TYR: 0xFF8080,
    AminoAcid.VAL: 0xFFFF80,
}


class PaletteError(ValueError):
    """An amino-acid palette violates one of its structural invariants."""


class UnknownAminoAcid(KeyError):
    """Encoding was requested for a key that is not in the palette."""


@dataclass(frozen=True)
class AminoAcidPalette:
    """Total, injective mapping from the 20 standard amino acids to colors.

    Attributes:
        entries: amino acid -> 24-bit integer color (0xRRGGBB).
        background: reserved background color, always 0.
    """

    entries: Mapping[AminoAcid, int]
    background: int = BACKGROUND_COLOR

    # Reverse map built once; palettes are immutable after construction.
    _by_color: Mapping[int, AminoAcid] = field(
        init=False, repr=False, compare=False, default=None
    )

    def __post_init__(self) -> None:
        entries = dict(self.entries)
        missing = [aa.value for aa in STANDARD_AMINO_ACIDS if aa not in entries]
        if missing:
            raise PaletteError(f"palette is not total, missing: {missing}")
        extra = [k for k in entries if k not in STANDARD_AMINO_ACIDS]
        if extra:
            raise PaletteError(f"palette has non-standard keys: {extra}")
        for aa, code in entries.items():
            if not isinstance(code, int) or not 0 <= code <= 0xFFFFFF:
                raise PaletteError(f"{aa.value}: color {code!r} is not a 24-bit integer")
            if code == self.background:
                raise PaletteError(f"{aa.value}: color equals reserved background")
        if len(set(entries.values())) != len(entries):
            raise PaletteError("palette colors are not pairwise distinct")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(
            self, "_by_color", {code: aa for aa, code in entries.items()}
        )

    def color_of(self, aa: AminoAcid) -> int:
        try:
            return self.entries[aa]
        except KeyError:
            raise UnknownAminoAcid(aa) from None


def default_palette() -> AminoAcidPalette:
    """Return the built-in palette (module constant table)."""
    return AminoAcidPalette(dict(_DEFAULT_COLORS))


def encode(aa: AminoAcid, palette: AminoAcidPalette) -> tuple[int, int, int]:
    """Split an amino acid's palette color into (r, g, b) bytes.

    Raises:
        UnknownAminoAcid: if ``aa`` is not a standard amino acid.
    """
    code = palette.color_of(aa)
    return (code >> 16) & 0xFF, (code >> 8) & 0xFF, code & 0xFF


def decode(rgb: tuple[int, int, int], palette: AminoAcidPalette) -> AminoAcid | None:
    """Inverse of :func:`encode`.

    Returns None (not-in-palette signal) for any color without an entry,
    including the background black.
    """
    r, g, b = rgb
    code = (int(r) << 16) | (int(g) << 8) | int(b)
    return palette._by_color.get(code)


def palette_table(palette: AminoAcidPalette) -> list[dict]:
    """Full palette as audit-friendly rows: key, integer code, hex, rgb triple."""
    rows = []
    for aa in STANDARD_AMINO_ACIDS:
        code = palette.entries[aa]
        rows.append(
            {
                "amino_acid": aa.value,
                "code": code,
                "hex": f"#{code:06X}",
                "rgb": list(encode(aa, palette)),
            }
        )
    return rows


def palette_fingerprint(palette: AminoAcidPalette) -> str:
    """SHA-256 over the canonical JSON table; recorded in dataset manifests."""
    canonical = json.dumps(
        [[aa.value, palette.entries[aa]] for aa in STANDARD_AMINO_ACIDS],
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode("ascii")).hexdigest()


def palette_from_json(path) -> AminoAcidPalette:
    """Load a palette override file: a JSON object of {"ALA": code, ...}.

    The override must still be total, injective and background-free; the
    minimum channel separation enforced for the built-in table is not
    required of user overrides.
    """
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise PaletteError("palette file must be a JSON object of code -> integer")
    entries: dict[AminoAcid, int] = {}
    for key, code in raw.items():
        aa = AminoAcid.from_code(str(key))
        if aa is AminoAcid.UNK:
            raise PaletteError(f"unknown amino acid key in palette file: {key!r}")
        entries[aa] = code
    return AminoAcidPalette(entries)

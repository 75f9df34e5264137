"""Build labeled real/mutated image datasets from structure files.

For every input file the builder parses and deduplicates the structure,
renders the real image, derives a per-protein seed from the dataset seed,
mutates a copy under that seed, and renders the negative with the same
transform so geometry lines up pixel for pixel.  Per-file failures are
recorded and skipped; the JSON manifest is written last, atomically.

Outputs per protein: <id>_real.png, <id>_mutated.png, <id>_mutations.json.
"""

from __future__ import annotations

import copy
import json
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

import numpy as np

from .grid import fit_transform, map_structure
from .ingest import deduplicate, parse_structure
from .mutate import (
    RNG_ALGORITHM,
    SEED_DERIVATION,
    MutationSpec,
    derive_seed,
    mutate,
)
from .palette import AminoAcidPalette, default_palette, palette_fingerprint
from .render import RenderConfig, render_points

__all__ = [
    "MANIFEST_VERSION",
    "MANIFEST_NAME",
    "ManifestEntry",
    "BuildFailure",
    "DatasetManifest",
    "DatasetError",
    "OutputNotWritable",
    "AllInputsFailed",
    "TooFewEntries",
    "build_dataset",
    "split",
    "stats",
]

MANIFEST_VERSION = "1"
MANIFEST_NAME = "manifest.json"

LABEL_REAL = "real"
LABEL_MUTATED = "mutated"


class DatasetError(Exception):
    """Base class for dataset-level failures."""


class OutputNotWritable(DatasetError):
    """The output directory cannot be created or written."""


class AllInputsFailed(DatasetError):
    """No input files were supplied."""


class TooFewEntries(DatasetError):
    """A split needs at least two real/mutant pairs."""


@dataclass
class ManifestEntry:
    """One image of the dataset."""

    protein_id: str
    label: str
    image_path: str
    source_path: str
    residue_count: int
    seed_used: int | None = None
    mutation_log_path: str | None = None
    unknown_residues: int = 0
    clamped_points: int = 0
    panels: dict | None = None
    split: str | None = None


@dataclass
class BuildFailure:
    """One input file that could not be processed."""

    source_path: str
    error: str
    protein_id: str | None = None


@dataclass
class DatasetManifest:
    """Everything needed to audit or re-create a dataset build."""

    version: str = MANIFEST_VERSION
    created_at: str = ""
    palette_fingerprint: str = ""
    render: dict = field(default_factory=dict)
    mutation: dict = field(default_factory=dict)
    entries: list[ManifestEntry] = field(default_factory=list)
    failures: list[BuildFailure] = field(default_factory=list)
    split_spec: dict | None = None
    summary: dict = field(default_factory=dict)
    root: Path | None = field(default=None, repr=False, compare=False)

    def to_json_dict(self) -> dict:
        raw = {
            "version": self.version,
            "created_at": self.created_at,
            "palette_fingerprint": self.palette_fingerprint,
            "render": self.render,
            "mutation": self.mutation,
            "entries": [asdict(e) for e in self.entries],
            "failures": [asdict(f) for f in self.failures],
            "split_spec": self.split_spec,
            "summary": self.summary,
        }
        return raw

    @classmethod
    def from_json_dict(cls, raw: dict, root: Path | None = None) -> "DatasetManifest":
        return cls(
            version=raw.get("version", MANIFEST_VERSION),
            created_at=raw.get("created_at", ""),
            palette_fingerprint=raw.get("palette_fingerprint", ""),
            render=raw.get("render", {}),
            mutation=raw.get("mutation", {}),
            entries=[ManifestEntry(**e) for e in raw.get("entries", [])],
            failures=[BuildFailure(**f) for f in raw.get("failures", [])],
            split_spec=raw.get("split_spec"),
            summary=raw.get("summary", {}),
            root=root,
        )

    def save(self, path) -> None:
        """Write atomically: temp file in the target directory, then rename."""
        path = Path(path)
        fd, tmp = tempfile.mkstemp(
            dir=path.parent, prefix=path.name + ".", suffix=".tmp"
        )
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(self.to_json_dict(), fh, indent=2, sort_keys=True)
                fh.write("\n")
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        self.root = path.parent

    @classmethod
    def load(cls, path) -> "DatasetManifest":
        path = Path(path)
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        return cls.from_json_dict(raw, root=path.parent)

    def resolve(self, relative: str) -> Path:
        """Resolve a manifest-relative file path."""
        rel = Path(relative)
        if self.root is not None and not rel.is_absolute():
            return self.root / rel
        return rel

    def pair_ids(self) -> list[str]:
        return sorted({e.protein_id for e in self.entries})


def _summarize(entries: list[ManifestEntry], failures: list[BuildFailure]) -> dict:
    real = [e for e in entries if e.label == LABEL_REAL]
    return {
        "proteins": len({e.protein_id for e in entries}),
        "real": len(real),
        "mutated": sum(1 for e in entries if e.label == LABEL_MUTATED),
        "failed_inputs": len(failures),
        "total_residues": sum(e.residue_count for e in real),
        "unknown_residues": sum(e.unknown_residues for e in real),
        "clamped_points": sum(e.clamped_points for e in entries),
    }


def _build_one(
    source: Path,
    out_dir: Path,
    dataset_seed: int,
    probability: float,
    palette: AminoAcidPalette,
    cfg: RenderConfig,
) -> tuple[list[ManifestEntry], BuildFailure | None]:
    """Process one structure file into a real/mutated image pair."""
    try:
        structure = deduplicate(parse_structure(source))
        transform = fit_transform(structure)

        points, clamped = map_structure(structure, transform)
        real_img = render_points(points, palette, cfg)

        seed = derive_seed(dataset_seed, structure.id)
        mutant, log = mutate(structure, MutationSpec(probability=probability, seed=seed))
        # Same transform as the real image: positions are unchanged, so the
        # two images differ only in dot colors.
        mutant_points, mutant_clamped = map_structure(mutant, transform)
        mutant_img = render_points(mutant_points, palette, cfg)

        real_name = f"{structure.id}_{LABEL_REAL}.png"
        mutant_name = f"{structure.id}_{LABEL_MUTATED}.png"
        log_name = f"{structure.id}_mutations.json"
        real_img.save_png(out_dir / real_name)
        mutant_img.save_png(out_dir / mutant_name)
        log.save(out_dir / log_name)

        common = {
            "protein_id": structure.id,
            "source_path": str(source),
            "residue_count": len(structure.residues),
            "unknown_residues": structure.unknown_residues,
        }

        def rects(img):  # JSON has no tuples; store plain lists
            return {k: list(v) for k, v in (img.panels or {}).items()}

        return (
            [
                ManifestEntry(
                    label=LABEL_REAL,
                    image_path=real_name,
                    clamped_points=clamped,
                    panels=rects(real_img),
                    **common,
                ),
                ManifestEntry(
                    label=LABEL_MUTATED,
                    image_path=mutant_name,
                    seed_used=seed,
                    mutation_log_path=log_name,
                    clamped_points=mutant_clamped,
                    panels=rects(mutant_img),
                    **common,
                ),
            ],
            None,
        )
    except Exception as exc:  # per-file failures never abort the batch
        return [], BuildFailure(
            source_path=str(source), error=f"{type(exc).__name__}: {exc}"
        )


def build_dataset(
    inputs: Sequence,
    out_dir,
    *,
    seed: int = 0,
    probability: float = 0.05,
    target_size: int = 299,
    gutter_px: int = 4,
    palette: AminoAcidPalette | None = None,
    workers: int = 1,
) -> DatasetManifest:
    """Build a paired real/mutated dataset and write its manifest.

    Args:
        inputs: structure file paths (PDBx/XML, optionally gzipped).
        out_dir: output directory, created if needed.
        seed: dataset seed; per-protein seeds are derived from it.
        probability: per-residue mutation probability.
        workers: parse/render concurrency; entry order never depends on it.

    Raises:
        AllInputsFailed: inputs is empty.
        OutputNotWritable: out_dir cannot be created or written.
    """
    if not inputs:
        raise AllInputsFailed("no input files given")
    palette = palette or default_palette()
    cfg = RenderConfig(target_size=target_size, gutter_px=gutter_px)
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        probe = tempfile.TemporaryFile(dir=out_dir)
        probe.close()
    except OSError as exc:
        raise OutputNotWritable(f"cannot write to {out_dir}: {exc}") from exc

    sources = [Path(p) for p in inputs]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(
                    lambda s: _build_one(s, out_dir, seed, probability, palette, cfg),
                    sources,
                )
            )
    else:
        results = [
            _build_one(s, out_dir, seed, probability, palette, cfg) for s in sources
        ]

    entries: list[ManifestEntry] = []
    failures: list[BuildFailure] = []
    seen_ids: set[str] = set()
    for source, (file_entries, failure) in zip(sources, results):
        if failure is not None:
            failures.append(failure)
            continue
        pid = file_entries[0].protein_id
        if pid in seen_ids:
            failures.append(
                BuildFailure(
                    source_path=str(source),
                    error=f"duplicate protein id {pid!r}",
                    protein_id=pid,
                )
            )
            continue
        seen_ids.add(pid)
        entries.extend(file_entries)

    entries.sort(key=lambda e: (e.protein_id, e.label))
    failures.sort(key=lambda f: f.source_path)

    manifest = DatasetManifest(
        created_at=datetime.now(timezone.utc).isoformat(),
        palette_fingerprint=palette_fingerprint(palette),
        render=cfg.describe(),
        mutation={
            "probability": probability,
            "rng_algorithm": RNG_ALGORITHM,
            "dataset_seed": seed,
            "seed_derivation": SEED_DERIVATION,
        },
        entries=entries,
        failures=failures,
        summary=_summarize(entries, failures),
        root=out_dir,
    )

    for entry in manifest.entries:  # every referenced file must exist
        for rel in (entry.image_path, entry.mutation_log_path):
            if rel is not None and not manifest.resolve(rel).exists():
                raise DatasetError(f"missing output file {rel!r} at manifest time")

    manifest.save(out_dir / MANIFEST_NAME)
    return manifest


def split(manifest: DatasetManifest, test_fraction: float, seed: int = 0) -> DatasetManifest:
    """Assign every real/mutant pair to train or test, pairs never separated.

    The test pair count is round-half-up of pairs * test_fraction, clamped
    so both partitions stay non-empty; assignment is a seeded permutation of
    the sorted protein ids.

    Raises:
        TooFewEntries: fewer than two pairs.
        ValueError: test_fraction outside (0, 1).
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")
    ids = manifest.pair_ids()
    if len(ids) < 2:
        raise TooFewEntries(f"need >= 2 pairs to split, have {len(ids)}")
    n_test = int(np.floor(len(ids) * test_fraction + 0.5))
    n_test = max(1, min(n_test, len(ids) - 1))
    rng = np.random.Generator(np.random.Philox(key=seed))
    order = rng.permutation(len(ids))
    test_ids = {ids[i] for i in order[:n_test]}

    result = copy.deepcopy(manifest)
    result.root = manifest.root
    for entry in result.entries:
        entry.split = "test" if entry.protein_id in test_ids else "train"
    result.split_spec = {
        "test_fraction": test_fraction,
        "seed": seed,
        "test_pairs": n_test,
        "train_pairs": len(ids) - n_test,
        "rule": "round-half-up on pair count; both partitions non-empty",
    }
    result.summary = {**result.summary, "split": result.split_spec}
    return result


def stats(manifest: DatasetManifest) -> dict:
    """Summary report: totals by label and split, residue distribution, counters."""
    entries = manifest.entries
    real = [e for e in entries if e.label == LABEL_REAL]
    counts = [e.residue_count for e in real]
    by_split: dict[str, int] = {}
    for e in entries:
        key = e.split or "unsplit"
        by_split[key] = by_split.get(key, 0) + 1
    return {
        "entries": len(entries),
        "by_label": {
            LABEL_REAL: len(real),
            LABEL_MUTATED: sum(1 for e in entries if e.label == LABEL_MUTATED),
        },
        "by_split": by_split,
        "total_residues": sum(counts),
        "residue_counts": {
            "min": min(counts) if counts else 0,
            "max": max(counts) if counts else 0,
            "mean": (sum(counts) / len(counts)) if counts else 0.0,
        },
        "unknown_residues": sum(e.unknown_residues for e in real),
        "clamped_points": sum(e.clamped_points for e in entries),
        "failed_inputs": len(manifest.failures),
    }

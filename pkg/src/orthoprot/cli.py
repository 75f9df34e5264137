"""Command line entry points.

Exit codes: 0 success, 1 runtime failure (bad file, failed inputs),
2 usage error (argparse default).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dataset import DatasetManifest, build_dataset, split, stats
from .grid import fit_transform, map_structure
from .ingest import IngestError, deduplicate, parse_structure
from .mutate import MutationSpec, mutate
from .palette import default_palette, palette_fingerprint, palette_table
from .render import RenderConfig, render_points

__all__ = ["main"]


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        json.dump(report, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        for key, value in report.items():
            print(f"{key}: {value}")


def _load_structure(path: str):
    source = Path(path)
    if not source.exists():
        raise IngestError(f"no such file: {source}")
    return deduplicate(parse_structure(source))


def _cmd_ingest(args) -> int:
    structure = _load_structure(args.input)
    chains = sorted({r.chain_id for r in structure.residues})
    _emit(
        {
            "id": structure.id,
            "residues": len(structure.residues),
            "chains": ",".join(chains),
            "unknown_residues": structure.unknown_residues,
        },
        args.format,
    )
    return 0


def _cmd_render(args) -> int:
    structure = _load_structure(args.input)
    transform = fit_transform(structure)
    points, clamped = map_structure(structure, transform)
    image = render_points(points, default_palette(), RenderConfig(target_size=args.size))
    out = Path(args.out)
    image.save_png(out)
    _emit(
        {"out": str(out), "size": f"{image.width}x{image.height}", "clamped": clamped},
        args.format,
    )
    return 0


def _cmd_mutate(args) -> int:
    structure = _load_structure(args.input)
    mutant, log = mutate(structure, MutationSpec(probability=args.prob, seed=args.seed))
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    log.save(out)
    _emit(
        {
            "out": str(out),
            "residues": log.total_residues,
            "mutations": len(log.entries),
            "seed": args.seed,
        },
        args.format,
    )
    return 0


def _cmd_build(args) -> int:
    manifest = build_dataset(
        args.inputs,
        args.out,
        seed=args.seed,
        probability=args.prob,
        target_size=args.size,
    )
    report = dict(manifest.summary)
    report["manifest"] = str(Path(args.out) / "manifest.json")
    _emit(report, args.format)
    if manifest.failures:
        for failure in manifest.failures:
            print(f"failed: {failure.source_path}: {failure.error}", file=sys.stderr)
        return 1
    return 0


def _cmd_split(args) -> int:
    path = Path(args.manifest)
    manifest = split(DatasetManifest.load(path), args.fraction, seed=args.seed)
    manifest.save(path)
    _emit(dict(manifest.split_spec or {}), args.format)
    return 0


def _cmd_stats(args) -> int:
    report = stats(DatasetManifest.load(Path(args.manifest)))
    if args.format == "json":
        _emit(report, "json")
    else:
        for key, value in report.items():
            print(f"{key}: {value}")
    return 0


def _cmd_palette(args) -> int:
    palette = default_palette()
    rows = palette_table(palette)
    if args.format == "json":
        _emit({"colors": rows, "fingerprint": palette_fingerprint(palette)}, "json")
    else:
        for row in rows:
            print(f"{row['amino_acid']} {row['hex']}")
        print(f"fingerprint {palette_fingerprint(palette)}")
    return 0


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("json", "text"), default="text", help="report format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orthoprot",
        description="Protein structures to multiview dot images and paired datasets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse a structure file and report a summary")
    p.add_argument("input", help="PDBx/XML file, optionally gzipped")
    _add_format(p)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("render", help="render one structure to a multiview PNG")
    p.add_argument("input")
    p.add_argument("--out", required=True, help="output PNG path")
    p.add_argument("--size", type=int, default=299, help="square image side in px")
    _add_format(p)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("mutate", help="generate a seeded mutation log for a structure")
    p.add_argument("input")
    p.add_argument("--out", required=True, help="output JSON log path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prob", type=float, default=0.05, help="per-residue probability")
    _add_format(p)
    p.set_defaults(func=_cmd_mutate)

    p = sub.add_parser("build", help="build a paired real/mutated image dataset")
    p.add_argument("inputs", nargs="+", help="structure files")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prob", type=float, default=0.05)
    p.add_argument("--size", type=int, default=299)
    _add_format(p)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("split", help="assign train/test partitions in a manifest")
    p.add_argument("manifest", help="path to manifest.json")
    p.add_argument("--fraction", type=float, required=True, help="test fraction")
    p.add_argument("--seed", type=int, default=0)
    _add_format(p)
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("stats", help="report dataset statistics from a manifest")
    p.add_argument("manifest")
    _add_format(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("palette", help="print the amino acid color table")
    _add_format(p)
    p.set_defaults(func=_cmd_palette)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:
        # argparse already exits 2 on usage errors; anything here is runtime.
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

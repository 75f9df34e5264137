#!/usr/bin/env python3
"""Download PDBx/XML structure files from the public archive.

Needs outbound network access, which test environments may not have; the
test suite runs entirely on the generated fixtures in tests/data/ and never
calls this. Usage:

    python3 scripts/fetch_structures.py 5AFR 5AGU 6ABO 6AGX --out structures/
"""

from __future__ import annotations

import argparse
import sys
import urllib.request
from pathlib import Path

DOWNLOAD_URL = "https://files.rcsb.org/download/{pdb_id}.xml.gz"


def fetch(pdb_id: str, out_dir: Path) -> Path:
    url = DOWNLOAD_URL.format(pdb_id=pdb_id.upper())
    dest = out_dir / f"{pdb_id.upper()}.xml.gz"
    with urllib.request.urlopen(url, timeout=60) as response:
        dest.write_bytes(response.read())
    return dest


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("ids", nargs="+", help="PDB entry ids, e.g. 5AFR")
    parser.add_argument("--out", default="structures", help="output directory")
    args = parser.parse_args()

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    failed = 0
    for pdb_id in args.ids:
        try:
            dest = fetch(pdb_id, out_dir)
            print(f"{pdb_id}: {dest} ({dest.stat().st_size} bytes)")
        except OSError as exc:
            print(f"{pdb_id}: failed: {exc}", file=sys.stderr)
            failed += 1
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())

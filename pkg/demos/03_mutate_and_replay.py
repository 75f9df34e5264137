#!/usr/bin/env python3
"""Make a "false protein" and prove the process is reproducible.

A mutant keeps the real geometry but swaps a random 5% of residue
identities for different ones. The generator is a counter-based RNG keyed
by an explicit seed, so the same (structure, seed) pair always produces the
same mutant, and the saved log can rebuild it with no RNG at all.

Run from the repository root:

    python3 demos/03_mutate_and_replay.py
"""

from pathlib import Path

from orthoprot import (
    MutationLog,
    MutationSpec,
    deduplicate,
    derive_seed,
    mutate,
    parse_structure,
    replay,
)

structure = deduplicate(parse_structure(Path("tests/data/5AGU.xml.gz")))
print(f"{structure.id}: {len(structure.residues)} residues")

# In a dataset build the per-protein seed is derived from one dataset seed,
# so adding or removing inputs never shifts anyone else's randomness.
seed = derive_seed(20260825, structure.id)
print(f"derived seed: {seed}")

spec = MutationSpec(probability=0.05, seed=seed)
mutant, log = mutate(structure, spec)
print(f"mutated {len(log.entries)} of {log.total_residues} residues:")
for e in log.entries[:8]:
    print(f"  chain {e.chain_id} residue {e.seq_num}: {e.original.value} -> {e.mutated.value}")

# Same inputs, same output; this is what makes datasets rebuildable.
again, _ = mutate(structure, spec)
assert again.residues == mutant.residues
print("re-running with the same seed reproduces the mutant exactly")

# The log alone is enough: save, load, replay without randomness.
log_path = Path("demo_mutations.json")
log.save(log_path)
replayed = replay(structure, MutationLog.load(log_path))
assert replayed.residues == mutant.residues
print(f"replaying {log_path} rebuilds the same mutant with no RNG")

# Geometry is untouched; only identities change.
moved = [
    (a.chain_id, a.seq_num)
    for a, b in zip(structure.residues, mutant.residues)
    if a.position != b.position
]
assert not moved
print("positions are bit-identical between real and mutant")

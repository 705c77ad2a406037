"""
Equivalence relations, permutability, and the cyclic inequality
===============================================================

Partitions in least-representative form make equality O(1), so lattices
of them are dictionaries plus tables.  Coset partitions of one abelian
group always permute pairwise, which makes them the cheap source of
permuting families; on such families the companion cyclic inequality
always holds, and the harness below re-verifies that on demand.
"""

from congforge import (
    Partition,
    abelian_coset_partitions,
    closed_sublattice,
    find_sublattice,
    full_partition_lattice,
    p_join,
    p_meet,
    permutes,
    verify_dn_permuting,
)
from congforge.fixtures import m3

# The lattice of all partitions of a small set; sizes are Bell numbers.
for n in (3, 4, 5):
    print("partitions of a %d-set:" % n, len(full_partition_lattice(n)))

# Join is transitive closure of the union, meet is common refinement.
a = Partition.from_blocks(4, [[0, 1], [2], [3]])
b = Partition.from_blocks(4, [[0], [1, 2], [3]])
print("join:", p_join(a, b).blocks(), " meet:", p_meet(a, b).blocks())
print("do they permute?", permutes(a, b))

# Cosets of the Klein group: three proper subgroups, pairwise permuting,
# closing up to a diamond inside the partition lattice of a 4-set.
cosets = abelian_coset_partitions((2, 2))
proper = [p for p in cosets if p.block_count() == 2]
sub = closed_sublattice(proper)
print(
    "closure of the three coset partitions:",
    len(sub),
    "elements; diamond found:",
    find_sublattice(sub.lattice, m3()) is not None,
)

# The harness: substitute pairwise-permuting relations into the n-th
# companion inequality and evaluate inside the generated sublattice.
print(
    "inequality holds on the coset family:",
    verify_dn_permuting(proper, proper[::-1]),
)

# A non-permuting pair is a precondition violation, not a verdict.
bad_a = Partition.from_blocks(3, [[0, 1], [2]])
bad_b = Partition.from_blocks(3, [[0], [1, 2]])
try:
    verify_dn_permuting([bad_a] * 3, [bad_b] * 3)
except Exception as exc:
    print("non-permuting pair rejected:", exc)

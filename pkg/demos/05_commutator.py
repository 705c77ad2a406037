"""
The term-condition commutator on finite algebras
================================================

Centrality C(a, b; d) is decided by generating every 2x2 matrix of term
values over a-related rows and b-related columns (a closure in the 4th
power) and scanning the term condition.  The commutator [a, b] is the
least congruence making the condition true; on groups it recovers the
classical commutator subgroup.
"""

from congforge import (
    abelian_interval,
    check_weak_difference_term,
    commutator,
    con_lattice,
    solvable_series,
)
from congforge.fixtures import (
    cyclic_group,
    group_wdt_term,
    klein_group,
    sym3,
    sym3_a3_partition,
)
from congforge.partitions import Partition

# Congruence lattices of small groups: the Klein group carries a diamond.
con = con_lattice(klein_group())
print("Con(Z2 x Z2):", len(con), "congruences")
print("Con(S3):", len(con_lattice(sym3())), "congruences (a chain)")

# Commutators: abelian groups are as abelian as it gets.
z4 = cyclic_group(4)
top4 = Partition.one_block(4)
print("Z4: [1,1] =", commutator(z4, top4, top4).blocks())

# The symmetric group is solvable but not abelian; [1,1] lands exactly
# on the even-permutation cosets, matching the subgroup computation.
s3 = sym3()
top6 = Partition.one_block(6)
comm = commutator(s3, top6, top6)
print("S3: [1,1] =", comm.blocks(), "(matches cosets:", comm == sym3_a3_partition(), ")")
print("S3 solvable series block counts:",
      [p.block_count() for p in solvable_series(s3, top6)])

# Abelian intervals: below the even-permutation congruence everything is
# abelian, while the whole of Con(S3) is not.
theta = sym3_a3_partition()
print("I[0, theta] abelian:", abelian_interval(s3, Partition.singletons(6), theta))
print("I[0, 1] abelian:", abelian_interval(s3, Partition.singletons(6), top6))

# Every group carries x * y^-1 * z as a difference term; the checker
# verifies the displayed condition congruence by congruence.
ok, _ = check_weak_difference_term(s3, group_wdt_term())
print("x*y^-1*z is a weak difference term for S3:", ok)

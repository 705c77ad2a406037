"""
Subspace lattices inside congruence lattices
============================================

Take a finite algebra with an abelian congruence, form the subalgebra of
the n-th power on tuples constant modulo it, and look at the interval
below the saturation congruence inside the congruence lattice of that
power.  The interval is a complemented modular lattice of length n whose
bottom is the meet of the projection kernels, and each pair of kernels
has a common complement (the diagonal congruence for n = 2).  Over the
2-element group this literally reproduces subspace lattices over GF(2).
"""

from congforge import (
    con_lattice,
    construct_delta,
    find_sublattice,
    subspace_lattice,
    verify_embedding_construction,
)
from congforge.algebras import alpha_power_algebra
from congforge.fixtures import cyclic_group, m3
from congforge.partitions import Partition

z2 = cyclic_group(2)
total = Partition.one_block(2)

# n = 2: the square of Z2 has a diamond of congruences: the two
# projection kernels plus the diagonal congruence.
dc = construct_delta(z2, total)
print("diagonal congruence on the square:", dc.delta.blocks())
print("complement equations verified:", dc.checks)

rep = verify_embedding_construction(z2, total, 2)
print("n = 2 interval:", rep.interval_size, "elements, checks:", rep.checks)
print("  isomorphic to the diamond:", find_sublattice(rep.ln, m3()) is not None)

# n = 3: the cube of Z2 yields the full 16-element subspace lattice of
# GF(2)^3, found by exhaustive isomorphism search.
rep = verify_embedding_construction(z2, total, 3)
target = subspace_lattice(3, 2).lattice
print("n = 3 interval:", rep.interval_size, "elements; passed:", rep.passed)
print("  isomorphic to the GF(2)^3 lattice:",
      find_sublattice(rep.ln, target) is not None)

# Over the 3-element group the square gives the 6-element line lattice
# of GF(3)^2 instead: the prime field changes with the algebra.
z3 = cyclic_group(3)
rep = verify_embedding_construction(z3, Partition.one_block(3), 2)
print("Z3, n = 2:", rep.interval_size, "elements; passed:", rep.passed)
print("  isomorphic to the GF(3)^2 lattice:",
      find_sublattice(rep.ln, subspace_lattice(2, 3).lattice) is not None)

# The whole congruence lattice of the cube, for scale.
cube, _, _, _ = alpha_power_algebra(z2, total, 3)
print("Con of the cube of Z2 has", len(con_lattice(cube)), "congruences")

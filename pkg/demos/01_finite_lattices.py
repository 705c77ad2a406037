"""
Finite lattices as tables
=========================

A finite lattice here is nothing but a reflexive-transitive-antisymmetric
boolean matrix plus join/meet tables derived from it.  Everything is
built from a Hasse diagram; the tables are computed once and every
checker afterwards is a table scan.
"""

from congforge import (
    check_semidistributivity,
    direct_product,
    find_sublattice,
    from_cover_relation,
    interval,
    is_modular,
    sublattice_closure,
)
from congforge.fixtures import m3, n5

# The five-element diamond: three atoms over a bottom, all joining to a top.
diamond = m3()
print("diamond:", diamond.size, "elements, covers", diamond.covers())

# The pentagon is the canonical nonmodular lattice; the checker returns a
# witnessing triple (a, b, c) with a <= c.
pentagon = n5()
ok, triple = is_modular(pentagon)
print("pentagon modular?", ok, "witness:", [pentagon.label(x) for x in triple])

# The diamond fails both semidistributivity implications at its atoms...
print("diamond SD-meet:", check_semidistributivity(diamond, "meet"))
# ...while the pentagon satisfies both (it is not modular, but it is SD).
print("pentagon SD-meet:", check_semidistributivity(pentagon, "meet"))
print("pentagon SD-join:", check_semidistributivity(pentagon, "join"))

# Sublattice generation: two atoms of the diamond close up to a square.
print("closure of two atoms:", sorted(sublattice_closure(diamond, [1, 2])))

# Sublattice search is exhaustive backtracking, so a miss is a proof:
# the diamond does not sit inside the pentagon.
print("diamond inside pentagon?", find_sublattice(pentagon, diamond))

# Intervals and products give new lattices from old.
sub, elems = interval(pentagon, 0, 2)
print("the interval [0, c] of the pentagon is a", sub.size, "chain:", elems)
prod = direct_product(diamond, from_cover_relation(2, [(0, 1)]))
print("diamond x 2-chain:", prod.size, "elements, modular:", is_modular(prod)[0])

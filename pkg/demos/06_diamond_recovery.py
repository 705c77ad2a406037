"""
Recovering a diamond from its image
===================================

Given a surjection of a lattice onto the five-element diamond and
preimages of the three atoms, the pipeline stabilises the side
preimages, absorbs their meet, projects into the generated interval and
takes the classical double-primed triple.  Where the relevant interval
is modular this always produces a diamond mapping back onto the atoms;
a pentagon sitting in exactly the wrong place defeats it, and the report
says precisely which stage broke.
"""

from congforge import LatticeHom, find_sublattice, is_modular, m3_witness
from congforge.fixtures import m3, m3_quotient_nonmodular_fixture, m3_times_chain2

diamond = m3()

# Easiest case: the identity map; every stage is a no-op.
rep = m3_witness(diamond, LatticeHom(diamond, diamond, range(5)), 1, 2, 3)
print("identity case:", rep.success, "final triple:", rep.final_triple)

# The product with a 2-chain, first projection: preimages of the atoms
# living on mixed levels get pulled into a single diamond.
prod = m3_times_chain2()
proj = LatticeHom(prod, diamond, [i // 2 for i in range(10)])
rep = m3_witness(prod, proj, 3, 4, 7)
print("product case:", rep.success)
print("  adjusted triple:", rep.adjusted_triple, "-> diamond",
      (rep.bottom, *rep.final_triple, rep.top))

# The engineered failure: an 11-element nonmodular lattice mapping onto
# the diamond, with a pentagon across the working interval.  Every stage
# preserves images, but the final triple has split joins.
glued, hom, triple = m3_quotient_nonmodular_fixture()
print("failure fixture modular?", is_modular(glued)[0])
rep = m3_witness(glued, hom, *triple)
print("pipeline outcome:", rep.success, "failed stage:", rep.failure_stage)
print("  verification detail:", rep.stages["verify"]["detail"])

# Instructively, the lattice does contain diamonds (any finite lattice
# with a surjection onto one must); the pipeline's specific landing spot
# is what the pentagon ruins.
print("a diamond exists elsewhere:", find_sublattice(glued, diamond) is not None)
print()
print(rep.to_json())

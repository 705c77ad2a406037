"""
The identity language and brute-force checking
==============================================

Terms are trees over + (join) and * (meet, binding tighter); identities
are equations or inequations; quasi-identities chain premises with & and
conclude after ->.  Checking enumerates assignments, vectorised in
blocks, and is decisive in exhaustive mode.
"""

from congforge import (
    generate_2distributive,
    generate_dn,
    generate_dn_star,
    generate_modular,
    generate_sd,
    holds,
    parse,
    to_str,
)
from congforge.fixtures import m3, n5
from congforge.subspaces import subspace_lattice

# Parse / print round-trips through a canonical concrete syntax.
phi = parse("x*y = x*z -> x*y = x*(y+z)")
print("parsed SD-meet:", to_str(phi))
print("same as the generator:", phi == generate_sd("meet"))

# The modular law fails in the pentagon, with the first counterexample
# in enumeration order.
verdict = holds(n5(), generate_modular())
print("pentagon vs modular law:", verdict.status, verdict.assignment)

# 2-distributivity separates the diamond from the subspace lattice of a
# 3-dimensional space over the 2-element field.
print("diamond 2-distributive:", holds(m3(), generate_2distributive()).status)
big = subspace_lattice(3, 2).lattice
verdict = holds(big, generate_2distributive())
print("16-element subspace lattice:", verdict.status, "at", verdict.assignment)

# The higher Arguesian family: the n-th member has 2n variables and a
# cyclic band of cross-terms.  Index 3 is the classical Arguesian law in
# companion form.
d3 = generate_dn_star(3)
print("companion form, n = 3:")
print(" ", to_str(d3))
print("variables:", sorted(d3.variables()))

# Exhaustive checking refuses to burn more than its budget; large
# lattices switch to seeded sampling for reproducible spot checks.
verdict = holds(big, d3, mode="sampled", samples=100_000, seed=42)
print("sampled on the 16-element lattice:", verdict.status, verdict.checked)

# On modular lattices the plain and companion forms agree assignment by
# assignment; the verification suite sweeps this exhaustively.
print("plain form, n = 4 has", len(generate_dn(4).variables()), "variables")

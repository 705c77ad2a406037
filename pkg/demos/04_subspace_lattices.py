"""
Subspace lattices over prime fields and the finite membership decision
======================================================================

Subspaces are reduced-echelon canonical, so the full lattice of
GF(p)^d is an enumeration plus a dictionary.  A finite lattice embeds
into subspace lattices over every prime field exactly when it is modular
and 2-distributive; the decision procedure runs the identity and the
structural detector together and insists they agree.
"""

from congforge import (
    Subspace,
    embed_search,
    find_two_diamond,
    gaussian_binomial,
    k_infinity_member,
    s_intersect,
    s_sum,
    subspace_lattice,
)
from congforge.fixtures import boolean_square, kinf_sample_a, m3, n5

# Sums and intersections in canonical form.
u = Subspace.from_vectors(2, 3, [(1, 0, 0), (0, 1, 0)])
w = Subspace.from_vectors(2, 3, [(0, 1, 0), (0, 0, 1)])
print("sum:", s_sum(u, w).notation(), " intersection:", s_intersect(u, w).notation())

# Element counts are sums of Gaussian binomials.
for dim, p in ((2, 2), (3, 2), (2, 3), (4, 2)):
    sl = subspace_lattice(dim, p)
    formula = sum(gaussian_binomial(dim, k, p) for k in range(dim + 1))
    print("GF(%d)^%d: %d subspaces (formula %d)" % (p, dim, len(sl), formula))

# Membership in the class embeddable over every prime field:
for name, lat in (
    ("diamond", m3()),
    ("pentagon", n5()),
    ("drawn 25-element sample", kinf_sample_a()),
    ("GF(2)^3 lattice", subspace_lattice(3, 2).lattice),
):
    verdict, cert = k_infinity_member(lat)
    print("%s: %s (%s)" % (name, verdict, cert["reason"]))

# The structural certificate behind the last failure: four subspaces in
# general position (three coordinate points plus the diagonal).
lat32 = subspace_lattice(3, 2)
z, top, quad = find_two_diamond(lat32.lattice)
print("general-position witness:", [lat32.subspaces[x].notation() for x in quad])

# Embedding search: the square embeds cover-preservingly over GF(3);
# the pentagon can never embed (modularity obstruction).
res = embed_search(boolean_square(), 2, 3, cover_preserving=True)
print("square into GF(3)^2:", res.status, [s.notation() for s in res.images()])
print("pentagon into GF(2)^3:", embed_search(n5(), 3, 2).status)

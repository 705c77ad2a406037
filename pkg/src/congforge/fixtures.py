"""The pinned fixture corpus: lattices, groups, and small algebras.

Everything the verification suites and the acceptance checks run on is
constructed here, deterministically, in code.  The two hand-drawn
membership samples encode Hasse diagrams read off a picture; the node
identification is our reading of the drawing, which the suites validate
structurally (lattice, modular, 2-distributive) rather than trusting.
"""

from __future__ import annotations

import itertools

from .algebras import FiniteAlgebra, TOp, TVar, make_operation
from .lattice import LatticeHom, direct_product, from_cover_relation
from .subspaces import subspace_lattice


def m3():
    """The five-element modular nondistributive lattice: three atoms."""
    return from_cover_relation(
        5,
        [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        labels=["0", "a", "b", "c", "1"],
    )


def n5():
    """The five-element nonmodular lattice: 0 < a < c < 1 beside 0 < b < 1."""
    return from_cover_relation(
        5,
        [(0, 1), (1, 2), (0, 3), (2, 4), (3, 4)],
        labels=["0", "a", "c", "b", "1"],
    )


def m_k(k):
    """The length-2 lattice with k atoms."""
    covers = [(0, i) for i in range(1, k + 1)] + [(i, k + 1) for i in range(1, k + 1)]
    return from_cover_relation(k + 2, covers)


def chain(n):
    return from_cover_relation(n, [(i, i + 1) for i in range(n - 1)])


def boolean_square():
    """The four-element diamond, i.e. the square of the 2-chain."""
    return from_cover_relation(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def m3_times_chain2():
    return direct_product(m3(), chain(2))


def kinf_sample_a():
    """A 25-element modular 2-distributive lattice read off a drawing.

    Stacked diamonds and squares; used as a nontrivial positive instance
    for the finite membership decision.
    """
    names = [
        "p00", "a", "b", "c", "bb", "cc", "e", "f", "m22", "m12", "m13",
        "q03", "q04", "r33", "r24", "r15", "r23", "r14", "m33", "m24",
        "m15", "q06", "q05", "m14", "m23",
    ]
    idx = {nm: i for i, nm in enumerate(names)}
    edges = [
        ("p00", "a"), ("p00", "b"), ("p00", "c"),
        ("a", "bb"), ("b", "bb"), ("c", "bb"),
        ("c", "cc"), ("c", "e"), ("cc", "f"), ("e", "f"), ("bb", "f"),
        ("a", "m22"), ("m22", "m13"), ("m13", "q04"), ("f", "q04"),
        ("bb", "m13"), ("bb", "q03"), ("q03", "q04"),
        ("b", "m12"), ("m12", "q03"),
        ("e", "r33"), ("r33", "r24"), ("r24", "r15"), ("q04", "r15"),
        ("f", "r24"), ("f", "r14"), ("r14", "r15"),
        ("cc", "r23"), ("r23", "r14"),
        ("m22", "m33"), ("m33", "m24"), ("m24", "m15"), ("m15", "q06"),
        ("r15", "q06"), ("q05", "q06"), ("q04", "q05"),
        ("q04", "m15"), ("m13", "m24"),
        ("m12", "m23"), ("m23", "m14"), ("m14", "q05"), ("q03", "m14"),
    ]
    covers = [(idx[a], idx[b]) for a, b in edges]
    return from_cover_relation(len(names), covers, labels=names)


def kinf_sample_b():
    """The seven-element length-2 lattice with five atoms, from the same drawing."""
    return m_k(5)


def m3_quotient_nonmodular_fixture():
    """An 11-element nonmodular lattice with a surjection onto the diamond.

    A pentagon sits inside the interval the recovery pipeline works in,
    positioned so that the double-primed triple has unequal pairwise
    joins: the pipeline must report failure at its verification stage.
    Returns (lattice, hom, (alpha, beta, gamma)) with the designated
    atom preimages.
    """
    labels = ["0", "a-", "a0", "a", "b0", "b", "c", "s", "u1", "u2", "1"]
    covers = [
        (0, 1), (0, 4), (0, 6),
        (1, 2), (2, 3), (3, 10),
        (1, 7), (4, 5), (4, 7), (6, 7),
        (7, 8), (2, 8), (8, 9), (5, 9), (9, 10),
    ]
    lat = from_cover_relation(11, covers, labels=labels)
    hom = LatticeHom(lat, m3(), [0, 1, 1, 1, 2, 2, 3, 4, 4, 4, 4])
    return lat, hom, (3, 5, 6)


# -- algebras ------------------------------------------------------------------


def _group_algebra(elements, op, inv):
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    mul = [index[op(a, b)] for a in elements for b in elements]
    invt = [index[inv(a)] for a in elements]
    return FiniteAlgebra(
        n,
        [
            make_operation("mul", 2, mul, n),
            make_operation("inv", 1, invt, n),
        ],
    )


def cyclic_group(n):
    """Z_n as an algebra with mul and inv."""
    return _group_algebra(
        list(range(n)), lambda a, b: (a + b) % n, lambda a: (-a) % n
    )


def abelian_group(orders):
    """Direct product of cyclic groups Z_d for d in orders."""
    elements = list(itertools.product(*[range(d) for d in orders]))
    return _group_algebra(
        elements,
        lambda a, b: tuple((x + y) % d for x, y, d in zip(a, b, orders)),
        lambda a: tuple((-x) % d for x, d in zip(a, orders)),
    )


def klein_group():
    return abelian_group((2, 2))


def sym3():
    """The symmetric group on 3 letters; elements are permutation tuples
    in lexicographic order, composition is (s*t)(i) = s(t(i))."""
    elements = sorted(itertools.permutations(range(3)))

    def compose(s, t):
        return tuple(s[t[i]] for i in range(3))

    def invert(s):
        out = [0] * 3
        for i, v in enumerate(s):
            out[v] = i
        return tuple(out)

    return _group_algebra(elements, compose, invert)


def sym3_a3_partition():
    """The coset partition of the even permutations inside sym3()."""
    from .partitions import Partition

    elements = sorted(itertools.permutations(range(3)))

    def sign(s):
        flips = sum(
            1 for i in range(3) for j in range(i + 1, 3) if s[i] > s[j]
        )
        return flips % 2

    blocks = [[], []]
    for i, e in enumerate(elements):
        blocks[sign(e)].append(i)
    return Partition.from_blocks(6, blocks)


def meet_semilattice2():
    """The two-element meet-semilattice."""
    return FiniteAlgebra(2, [make_operation("meet", 2, [0, 0, 0, 1], 2)])


def majority3():
    """A three-element algebra with a single majority operation."""
    n = 3
    table = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if x == y or x == z:
                    table.append(x)
                elif y == z:
                    table.append(y)
                else:
                    table.append(x)
    return FiniteAlgebra(n, [make_operation("m", 3, table, n)])


def group_wdt_term():
    """x * y^-1 * z, the difference term every group carries."""
    return TOp("mul", (TVar("x"), TOp("mul", (TOp("inv", (TVar("y"),)), TVar("z")))))


def majority_wdt_term():
    return TOp("m", (TVar("x"), TVar("y"), TVar("z")))


def semilattice_wdt_term():
    """The first projection; enough wherever every commutator is total."""
    return TVar("x")


def standard_algebras():
    """The fixture algebras with names, and a difference term to try."""
    return [
        ("z2", cyclic_group(2), group_wdt_term()),
        ("z3", cyclic_group(3), group_wdt_term()),
        ("z4", cyclic_group(4), group_wdt_term()),
        ("z2z2", klein_group(), group_wdt_term()),
        ("s3", sym3(), group_wdt_term()),
        ("semilattice2", meet_semilattice2(), semilattice_wdt_term()),
        ("majority3", majority3(), majority_wdt_term()),
    ]


def standard_lattices():
    """The fixture lattice corpus with names."""
    return [
        ("m3", m3()),
        ("n5", n5()),
        ("m3x2", m3_times_chain2()),
        ("chain4", chain(4)),
        ("boolean", boolean_square()),
        ("sub_2_2", subspace_lattice(2, 2).lattice),
        ("sub_3_2", subspace_lattice(3, 2).lattice),
        ("sub_2_3", subspace_lattice(2, 3).lattice),
        ("kinf_a", kinf_sample_a()),
        ("kinf_b", kinf_sample_b()),
    ]

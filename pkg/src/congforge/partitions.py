"""Equivalence relations on finite sets and their lattices.

A partition is stored in canonical representative form: rep[i] is the
least element of the block containing i.  That makes equality and
hashing O(1) after construction, and the canonical form is unique, so
partitions double as dictionary keys when lattices of them are built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .lattice import FiniteLattice
from .limits import check_cap
from . import terms


class SizeMismatchError(Exception):
    pass


class NotPermutingError(Exception):
    def __init__(self, index):
        self.index = index
        super().__init__("pair %d does not permute" % index)


@dataclass(frozen=True)
class Partition:
    rep: tuple[int, ...]

    def __post_init__(self):
        r = self.rep
        for i, v in enumerate(r):
            if not (0 <= v <= i and r[v] == v):
                raise ValueError("rep is not in canonical least-element form")

    @property
    def base_size(self):
        return len(self.rep)

    def blocks(self):
        out = {}
        for i, v in enumerate(self.rep):
            out.setdefault(v, []).append(i)
        return [out[k] for k in sorted(out)]

    def block_count(self):
        return len(set(self.rep))

    def related(self, a, b):
        return self.rep[a] == self.rep[b]

    def label(self):
        return "|".join(" ".join(str(x) for x in b) for b in self.blocks())

    @staticmethod
    def singletons(n):
        return Partition(tuple(range(n)))

    @staticmethod
    def one_block(n):
        return Partition((0,) * n)

    @staticmethod
    def from_blocks(n, blocks):
        rep = [-1] * n
        seen = set()
        for block in blocks:
            if not block:
                raise ValueError("empty block")
            least = min(block)
            for x in block:
                if not (0 <= x < n) or x in seen:
                    raise ValueError("blocks must partition 0..%d" % (n - 1))
                seen.add(x)
                rep[x] = least
        if len(seen) != n:
            raise ValueError("blocks must cover 0..%d" % (n - 1))
        return Partition(tuple(rep))

    @staticmethod
    def from_pairs(n, pairs):
        """Least partition relating every given pair."""
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            ra, rb = find(a), find(b)
            if ra != rb:
                # smaller index becomes the root, so roots stay canonical
                if ra > rb:
                    ra, rb = rb, ra
                parent[rb] = ra
        return Partition(tuple(find(i) for i in range(n)))


def _check_sizes(a, b):
    if a.base_size != b.base_size:
        raise SizeMismatchError(
            "base sizes differ: %d vs %d" % (a.base_size, b.base_size)
        )


def p_meet(a, b):
    """Common refinement: blocks are the pairwise block intersections."""
    _check_sizes(a, b)
    seen = {}
    rep = []
    for i in range(a.base_size):
        key = (a.rep[i], b.rep[i])
        rep.append(seen.setdefault(key, i))
    return Partition(tuple(rep))


def p_join(a, b):
    """Transitive closure of the union relation."""
    _check_sizes(a, b)
    n = a.base_size
    return Partition.from_pairs(n, [(i, a.rep[i]) for i in range(n)] +
                                   [(i, b.rep[i]) for i in range(n)])


def p_leq(a, b):
    """a refines b: every a-block sits inside a b-block."""
    _check_sizes(a, b)
    return all(b.rep[i] == b.rep[a.rep[i]] for i in range(a.base_size))


def _relation_matrix(p):
    r = np.asarray(p.rep)
    return r[:, None] == r[None, :]


def permutes(a, b):
    """True iff a o b = b o a as relations (equivalently a o b = a v b)."""
    _check_sizes(a, b)
    A = _relation_matrix(a)
    B = _relation_matrix(b)
    ab = (A.astype(np.uint8) @ B.astype(np.uint8)) > 0
    return np.array_equal(ab, ab.T)


def relation_compose(a, b):
    """The composite relation a o b as a boolean matrix ((x,z) iff x a y b z)."""
    _check_sizes(a, b)
    A = _relation_matrix(a)
    B = _relation_matrix(b)
    return (A.astype(np.uint8) @ B.astype(np.uint8)) > 0


class EqRelLattice:
    """A finite lattice whose elements are partitions of a fixed base set."""

    def __init__(self, partitions):
        parts = sorted(set(partitions), key=lambda p: p.rep)
        if not parts:
            raise ValueError("need at least one partition")
        base = parts[0].base_size
        for p in parts:
            if p.base_size != base:
                raise SizeMismatchError("mixed base sizes")
        m = len(parts)
        index = {p: i for i, p in enumerate(parts)}
        leq = np.zeros((m, m), dtype=bool)
        join = np.empty((m, m), dtype=np.int64)
        meet = np.empty((m, m), dtype=np.int64)
        try:
            for i, p in enumerate(parts):
                for j, q in enumerate(parts):
                    if j < i:
                        join[i, j] = join[j, i]
                        meet[i, j] = meet[j, i]
                        leq[i, j] = p_leq(p, q)
                        continue
                    join[i, j] = index[p_join(p, q)]
                    meet[i, j] = index[p_meet(p, q)]
                    leq[i, j] = p_leq(p, q)
        except KeyError:
            raise ValueError("partitions are not closed under join/meet") from None
        # The FiniteLattice constructor re-derives the tables from the
        # order and cross-checks the ones computed here.
        self.base_size = base
        self.partitions = tuple(parts)
        self.index = index
        self.lattice = FiniteLattice(
            leq, join=join, meet=meet, labels=[p.label() for p in parts]
        )

    def __len__(self):
        return len(self.partitions)


def all_partitions(n):
    """All partitions of {0..n-1}, enumerated by restricted growth strings."""
    if n == 0:
        return [Partition(())]
    out = []

    def grow(rgs, mx):
        i = len(rgs)
        if i == n:
            blocks = {}
            for pos, cls in enumerate(rgs):
                blocks.setdefault(cls, pos)
            out.append(Partition(tuple(blocks[c] for c in rgs)))
            return
        for c in range(mx + 2):
            grow(rgs + [c], max(mx, c))

    grow([0], 0)
    return out


def full_partition_lattice(n, cap=8):
    """The lattice of all equivalence relations on an n-element set."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        from .limits import SizeLimitError

        raise SizeLimitError("full partition lattice capped at n = %d" % cap)
    parts = all_partitions(n)
    check_cap(len(parts), "partition lattice")
    return EqRelLattice(parts)


def closed_sublattice(gens, cap=None):
    """Closure of the generators under p_join and p_meet, as an EqRelLattice."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    closed = set(gens)
    frontier = list(closed)
    while frontier:
        fresh = []
        current = list(closed)
        for a in frontier:
            for b in current:
                for v in (p_join(a, b), p_meet(a, b)):
                    if v not in closed:
                        closed.add(v)
                        fresh.append(v)
        if cap is None:
            check_cap(len(closed), "partition sublattice closure")
        elif len(closed) > cap:
            from .limits import SizeLimitError

            raise SizeLimitError("closure exceeded cap %d" % cap)
        frontier = fresh
    return EqRelLattice(closed)


def verify_dn_permuting(alphas, alphaps):
    """Evaluate the n-th cyclic inequality on pairwise-permuting partitions.

    Each pair (alphas[i], alphaps[i]) must permute; a violation raises
    NotPermutingError rather than producing a verdict.  The instance is
    evaluated inside the sublattice the inputs generate.  For sublattices
    of a full equivalence-relation lattice with permuting pairs the
    inequality always holds, so a False here signals a bug.
    """
    n = len(alphas)
    if len(alphaps) != n:
        raise ValueError("need equally many primed and unprimed partitions")
    if n < 3:
        raise terms.InvalidNError("need n >= 3")
    for i, (a, b) in enumerate(zip(alphas, alphaps)):
        if not permutes(a, b):
            raise NotPermutingError(i)
    sub = closed_sublattice(list(alphas) + list(alphaps))
    phi = terms.generate_dn_star(n)
    assignment = {}
    for i in range(n):
        assignment["x%d" % i] = sub.index[alphas[i]]
        assignment["x%d'" % i] = sub.index[alphaps[i]]
    lhs = terms.evaluate(phi.lhs, sub.lattice, assignment)
    rhs = terms.evaluate(phi.rhs, sub.lattice, assignment)
    return bool(sub.lattice.leq[lhs, rhs])


# -- permuting families from abelian groups ----------------------------------


def abelian_coset_partitions(orders):
    """All coset partitions of the direct product of cyclic groups Z_d.

    Subgroup cosets of a single group pairwise permute, which makes these
    families the cheap source of permuting pairs; rejection sampling on
    random partitions essentially never finds permuting pairs.
    """
    orders = tuple(int(d) for d in orders)
    elements = list(itertools.product(*[range(d) for d in orders]))
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)

    def add(a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, orders))

    def close(gens):
        sub = {tuple(0 for _ in orders)}
        frontier = list(sub)
        while frontier:
            fresh = []
            for g in gens:
                for h in frontier:
                    s = add(g, h)
                    if s not in sub:
                        sub.add(s)
                        fresh.append(s)
            frontier = fresh
        return frozenset(sub)

    subgroups = {close(())}
    for k in (1, 2, 3):
        for gens in itertools.combinations(elements, k):
            subgroups.add(close(gens))
    out = []
    for sub in sorted(subgroups, key=lambda s: (len(s), sorted(index[e] for e in s))):
        rep = [-1] * n
        for e in elements:
            coset = sorted(index[add(e, h)] for h in sub)
            rep[index[e]] = coset[0]
        out.append(Partition(tuple(rep)))
    return out

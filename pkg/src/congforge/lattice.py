"""Finite lattices stored as dense order/join/meet tables.

Elements are the integers 0..size-1.  The order matrix is computed once,
at construction, from a cover relation or an explicit order; join and
meet tables are derived from the order (or validated against it when a
builder supplies its own tables).  Everything downstream is table-bound,
so all checkers are simple scans over these arrays.

All objects here are immutable after construction and safe to share.
"""

from __future__ import annotations

import itertools

import numpy as np

from .limits import check_cap

# Full n^3 validation/scans are vectorised up to this size; beyond it a
# seeded spot check is used instead (only reachable for deliberately
# huge builds such as the full partition lattice on 7+ points).
_FULL_SCAN_LIMIT = 600


class LatticeError(Exception):
    pass


class NotAPartialOrderError(LatticeError):
    """The cover relation closes into a cyclic (non-antisymmetric) relation."""

    def __init__(self, pair):
        self.pair = pair
        super().__init__("not a partial order: elements %d and %d lie on a cycle" % pair)


class NotALatticeError(LatticeError):
    """Some pair of elements lacks a unique least upper / greatest lower bound."""

    def __init__(self, pair, kind):
        self.pair = pair
        self.kind = kind
        super().__init__(
            "not a lattice: pair (%d, %d) has no unique %s" % (pair[0], pair[1], kind)
        )


class NotComparableError(LatticeError):
    def __init__(self, lo, hi):
        self.pair = (lo, hi)
        super().__init__("interval endpoints %d and %d are not comparable" % (lo, hi))


class BudgetExceededError(LatticeError):
    """A bounded search ran out of its node budget before deciding."""


def _first_true(mask):
    """Index tuple of the lexicographically first True entry, or None."""
    flat = np.flatnonzero(mask.ravel())
    if flat.size == 0:
        return None
    return np.unravel_index(flat[0], mask.shape)


def _tables_from_leq(leq):
    """Compute join/meet tables from an order matrix, or raise NotALatticeError.

    The least upper bound of a pair, when it exists, is the common upper
    bound with the largest up-set; the candidate is verified to lie below
    every common upper bound.  Deterministic: the offending pair reported
    on failure is the lexicographically first one.  Meets are the dual
    computation on the transposed order.
    """
    n = leq.shape[0]

    def bounds(above, kind):
        # candidate order: |above-set| descending, ties by index; the
        # extremum of a bounded set always maximises |above-set| in it
        order = np.lexsort((np.arange(n), -above.sum(axis=1)))
        table = np.empty((n, n), dtype=np.int64)
        chunk = max(1, min(n, (1 << 24) // max(1, n * n)))
        for lo in range(0, n, chunk):
            hi = min(n, lo + chunk)
            com = above[lo:hi, None, :] & above[None, :, :]  # (c, n, n)
            exists = com.any(axis=2)
            first = np.argmax(com[:, :, order], axis=2)
            cand = order[first]
            least_ok = ~(com & ~above[cand]).any(axis=2)
            bad = _first_true(~exists | ~least_ok)
            if bad is not None:
                raise NotALatticeError((int(bad[0]) + lo, int(bad[1])), kind)
            table[lo:hi] = cand
        return table

    join = bounds(leq, "least upper bound")
    meet = bounds(np.ascontiguousarray(leq.T), "greatest lower bound")
    return join, meet


class FiniteLattice:
    """A finite lattice on elements 0..size-1 with full operation tables."""

    def __init__(self, leq, join=None, meet=None, labels=None):
        leq = np.ascontiguousarray(np.asarray(leq, dtype=bool))
        n = leq.shape[0]
        if leq.shape != (n, n) or n == 0:
            raise ValueError("order matrix must be square and nonempty")
        if not leq.diagonal().all():
            raise ValueError("order matrix is not reflexive")
        bad = _first_true(leq & leq.T & ~np.eye(n, dtype=bool))
        if bad is not None:
            raise NotAPartialOrderError((int(bad[0]), int(bad[1])))
        if ((leq.astype(np.uint8) @ leq.astype(np.uint8) > 0) & ~leq).any():
            raise ValueError("order matrix is not transitive")

        cjoin, cmeet = _tables_from_leq(leq)
        for given, computed, name in ((join, cjoin, "join"), (meet, cmeet, "meet")):
            if given is not None and not np.array_equal(np.asarray(given), computed):
                raise ValueError("supplied %s table disagrees with the order" % name)

        self.size = n
        self.leq = leq
        self.join = cjoin
        self.meet = cmeet
        self.bottom = int(np.flatnonzero(leq.all(axis=1))[0])
        self.top = int(np.flatnonzero(leq.all(axis=0))[0])
        self.labels = list(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("label count does not match size")
        for arr in (self.leq, self.join, self.meet):
            arr.setflags(write=False)

    # -- basic queries ----------------------------------------------------

    def le(self, a, b):
        return bool(self.leq[a, b])

    def label(self, a):
        return self.labels[a] if self.labels else str(a)

    def covers(self):
        """Hasse diagram as a sorted list of (lower, upper) pairs."""
        strict = self.leq & ~np.eye(self.size, dtype=bool)
        through = (strict.astype(np.uint8) @ strict.astype(np.uint8)) > 0
        lo, hi = np.nonzero(strict & ~through)
        return sorted(zip(lo.tolist(), hi.tolist()))

    def atoms(self):
        return [b for (a, b) in self.covers() if a == self.bottom]

    def coatoms(self):
        return [a for (a, b) in self.covers() if b == self.top]

    def height(self):
        """Length of a longest chain (number of covers bottom to top)."""
        depth = [0] * self.size
        order = np.argsort(self.leq.sum(axis=0), kind="stable")  # linear extension
        up = [[] for _ in range(self.size)]
        for a, b in self.covers():
            up[a].append(b)
        for a in order:
            for b in up[int(a)]:
                depth[b] = max(depth[b], depth[int(a)] + 1)
        return depth[self.top]

    def is_complemented(self):
        """True iff every element has a complement."""
        n = self.size
        for x in range(n):
            row = (self.meet[x] == self.bottom) & (self.join[x] == self.top)
            if not row.any():
                return False
        return True

    def __repr__(self):
        return "FiniteLattice(size=%d)" % self.size

    def __eq__(self, other):
        return (
            isinstance(other, FiniteLattice)
            and self.size == other.size
            and np.array_equal(self.leq, other.leq)
        )

    def __hash__(self):
        return hash((self.size, self.leq.tobytes()))


def from_cover_relation(size, covers, labels=None):
    """Build a FiniteLattice from Hasse-diagram edges (lower, upper).

    The reflexive-transitive closure of the edges is computed and
    validated; redundant (non-cover) edges are tolerated since the order
    is always recomputed.  Raises NotAPartialOrderError on a cycle and
    NotALatticeError when some pair lacks a unique bound, reporting the
    lexicographically first offending pair.
    """
    check_cap(size, "lattice")
    adj = np.eye(size, dtype=bool)
    for lo, hi in covers:
        if not (0 <= lo < size and 0 <= hi < size):
            raise ValueError("cover pair (%r, %r) out of range" % (lo, hi))
        adj[lo, hi] = True
    # reflexive-transitive closure by repeated boolean squaring
    reach = adj
    while True:
        nxt = (reach.astype(np.uint8) @ reach.astype(np.uint8)) > 0
        if np.array_equal(nxt, reach):
            break
        reach = nxt
    bad = _first_true(reach & reach.T & ~np.eye(size, dtype=bool))
    if bad is not None:
        raise NotAPartialOrderError((int(bad[0]), int(bad[1])))
    return FiniteLattice(reach, labels=labels)


def chain(n, labels=None):
    """The n-element chain 0 < 1 < ... < n-1."""
    return from_cover_relation(n, [(i, i + 1) for i in range(n - 1)], labels=labels)


# -- structural predicates ------------------------------------------------


def is_modular(lat):
    """Modularity check: a <= c implies a v (b ^ c) = (a v b) ^ c.

    Returns (True, None) or (False, (a, b, c)) with the lexicographically
    first witnessing triple.
    """
    n = lat.size
    J, M = lat.join, lat.meet
    if n <= _FULL_SCAN_LIMIT:
        left = J[np.arange(n)[:, None, None], M[None, :, :]]  # a v (b ^ c)
        right = M[J][:, :, :]  # (a v b) ^ c  -- M[J][a,b,c] = M[J[a,b], c]
        mask = lat.leq[:, None, :] & (left != right)
        first = _first_true(mask)
        if first is None:
            return True, None
        return False, tuple(int(v) for v in first)
    for a in range(n):
        left = J[a, M]  # (b, c)
        right = M[J[a], :]
        mask = lat.leq[a][None, :] & (left != right)
        first = _first_true(mask)
        if first is not None:
            return False, (a, int(first[0]), int(first[1]))
    return True, None


def check_semidistributivity(lat, side):
    """SD-meet / SD-join quasi-identity check.

    meet side: x^y = x^z  ->  x^y = x^(y v z); join side is the dual.
    Returns (True, None) or (False, (x, y, z)).
    """
    if side == "meet":
        M, J = lat.meet, lat.join
    elif side == "join":
        M, J = lat.join, lat.meet
    else:
        raise ValueError("side must be 'meet' or 'join'")
    n = lat.size
    xy = M[:, :, None]  # x.y
    xz = M[:, None, :]  # x.z
    xyz = M[np.arange(n)[:, None, None], J[None, :, :]]  # x.(y+z)
    mask = (xy == xz) & (xy != xyz)
    first = _first_true(mask)
    if first is None:
        return True, None
    return False, tuple(int(v) for v in first)


def sublattice_closure(lat, seed):
    """Least subset containing seed and closed under join and meet."""
    seed = sorted(set(int(s) for s in seed))
    if not seed:
        raise ValueError("seed must be nonempty")
    if seed[0] < 0 or seed[-1] >= lat.size:
        raise ValueError("seed element out of range")
    closed = set(seed)
    frontier = list(seed)
    while frontier:
        fresh = []
        current = sorted(closed)
        for a in frontier:
            for b in current:
                for v in (int(lat.join[a, b]), int(lat.meet[a, b])):
                    if v not in closed:
                        closed.add(v)
                        fresh.append(v)
        frontier = fresh
    return frozenset(closed)


def interval(lat, lo, hi):
    """The interval sublattice {x : lo <= x <= hi} plus its element map.

    Returns (sub, elements) where elements[i] is the index in lat of the
    i-th element of sub.
    """
    if not lat.le(lo, hi):
        raise NotComparableError(lo, hi)
    elems = [x for x in range(lat.size) if lat.le(lo, x) and lat.le(x, hi)]
    idx = np.asarray(elems)
    sub_leq = lat.leq[np.ix_(idx, idx)]
    labels = [lat.label(x) for x in elems] if lat.labels else None
    return FiniteLattice(sub_leq, labels=labels), elems


def direct_product(lat1, lat2, labels=True):
    """Componentwise product lattice; element (i, j) gets index i*size2 + j."""
    n1, n2 = lat1.size, lat2.size
    check_cap(n1 * n2, "direct product")
    leq = np.kron(lat1.leq, lat2.leq)
    lab = None
    if labels:
        lab = [
            "(%s,%s)" % (lat1.label(i), lat2.label(j))
            for i in range(n1)
            for j in range(n2)
        ]
    return FiniteLattice(leq, labels=lab)


# -- homomorphisms and sublattice search ------------------------------------


class LatticeHom:
    """A join- and meet-preserving map between finite lattices."""

    def __init__(self, source, target, mapping):
        self.source = source
        self.target = target
        self.map = tuple(int(m) for m in mapping)
        if len(self.map) != source.size:
            raise ValueError("map length does not match source size")
        arr = np.asarray(self.map)
        if arr.min() < 0 or arr.max() >= target.size:
            raise ValueError("map image out of range")
        if not np.array_equal(arr[source.join], target.join[arr[:, None], arr[None, :]]):
            raise ValueError("map does not preserve joins")
        if not np.array_equal(arr[source.meet], target.meet[arr[:, None], arr[None, :]]):
            raise ValueError("map does not preserve meets")
        self.surjective = len(set(self.map)) == target.size

    def __call__(self, a):
        return self.map[a]

    def is_injective(self):
        return len(set(self.map)) == self.source.size

    def __repr__(self):
        return "LatticeHom(%d -> %d)" % (self.source.size, self.target.size)


def find_sublattice(lat, pattern, cover_preserving=False, budget=None):
    """Search for an injective join/meet-preserving copy of pattern in lat.

    Backtracking over order-compatible injections; candidates are pruned
    by (down-set size, up-set size) degree vectors and by join/meet
    values forced by already-placed elements.  Branching is lexicographic,
    so the returned embedding is deterministic; None is a proof of
    absence at this size.  With a budget, BudgetExceededError may fire
    before the search is decisive.
    """
    p, n = pattern.size, lat.size
    if p > n:
        return None
    p_down = pattern.leq.sum(axis=0)
    p_up = pattern.leq.sum(axis=1)
    l_down = lat.leq.sum(axis=0)
    l_up = lat.leq.sum(axis=1)
    l_covers = None
    p_cover_pairs = []
    if cover_preserving:
        l_covers = np.zeros((n, n), dtype=bool)
        for a, b in lat.covers():
            l_covers[a, b] = True
        p_cover_pairs = pattern.covers()

    # placement order: bottom, top, then most-constrained first (largest
    # degree vector), ties broken by index for determinism
    rest = [
        x
        for x in range(p)
        if x not in (pattern.bottom, pattern.top)
    ]
    rest.sort(key=lambda x: (-(int(p_down[x]) + int(p_up[x])), x))
    order = [pattern.bottom]
    if pattern.top != pattern.bottom:
        order.append(pattern.top)
    order += rest

    base_candidates = [
        [y for y in range(n) if l_down[y] >= p_down[x] and l_up[y] >= p_up[x]]
        for x in range(p)
    ]

    mapping = {}
    used = set()
    nodes = 0

    def consistent(x, y):
        for q, im in mapping.items():
            if pattern.leq[x, q] != lat.leq[y, im] or pattern.leq[q, x] != lat.leq[im, y]:
                return False
            jp, mp = int(pattern.join[x, q]), int(pattern.meet[x, q])
            jl, ml = int(lat.join[y, im]), int(lat.meet[y, im])
            if jp in mapping and mapping[jp] != jl:
                return False
            if jp == x and jl != y:
                return False
            if jp == q and jl != im:
                return False
            if mp in mapping and mapping[mp] != ml:
                return False
            if mp == x and ml != y:
                return False
            if mp == q and ml != im:
                return False
        if cover_preserving:
            for a, b in p_cover_pairs:
                if a == x and b in mapping and not l_covers[y, mapping[b]]:
                    return False
                if b == x and a in mapping and not l_covers[mapping[a], y]:
                    return False
        return True

    def extend(k):
        nonlocal nodes
        if k == len(order):
            return True
        x = order[k]
        forced = None
        for (q, r) in itertools.combinations(mapping, 2):
            if int(pattern.join[q, r]) == x:
                v = int(lat.join[mapping[q], mapping[r]])
                if forced is not None and forced != v:
                    return False
                forced = v
            if int(pattern.meet[q, r]) == x:
                v = int(lat.meet[mapping[q], mapping[r]])
                if forced is not None and forced != v:
                    return False
                forced = v
        candidates = [forced] if forced is not None else base_candidates[x]
        for y in candidates:
            nodes += 1
            if budget is not None and nodes > budget:
                raise BudgetExceededError("sublattice search exceeded %d nodes" % budget)
            if y in used or not consistent(x, y):
                continue
            mapping[x] = y
            used.add(y)
            if extend(k + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    if extend(0):
        return LatticeHom(pattern, lat, [mapping[x] for x in range(p)])
    return None


def m3_configurations(lat):
    """All (o, x, y, z, i) with {o, x, y, z, i} a diamond sublattice.

    x, y, z are scanned with x < y < z, so each M3 sublattice is reported
    once; o and i are its pairwise meet and join.
    """
    J, M = lat.join, lat.meet
    out = []
    n = lat.size
    for x in range(n):
        for y in range(x + 1, n):
            o = int(M[x, y])
            i = int(J[x, y])
            if o == x or o == y:
                continue
            for z in range(y + 1, n):
                if int(M[x, z]) == o and int(M[y, z]) == o and \
                   int(J[x, z]) == i and int(J[y, z]) == i and z != o and z != i:
                    out.append((o, x, y, z, i))
    return out


def beta_gamma_iteration(lat, alpha, beta, gamma, max_m=None):
    """Iterate b_{k+1} = b ^ (a v c_k), c_{k+1} = c ^ (a v b_k) to a fixpoint.

    Both sequences descend, so in a finite lattice they stabilise within
    size steps.  Returns (m, beta_m, gamma_m) for the first index m with
    beta_m = beta_{m+1} and gamma_m = gamma_{m+1}.
    """
    if max_m is None:
        max_m = lat.size + 1
    J, M = lat.join, lat.meet
    b, c = beta, gamma
    for m in range(max_m + 1):
        nb = int(M[beta, J[alpha, c]])
        nc = int(M[gamma, J[alpha, b]])
        if nb == b and nc == c:
            return m, b, c
        b, c = nb, nc
    raise RuntimeError("iteration did not stabilise within %d steps" % max_m)

"""Verification suites over the pinned fixture corpus.

Each suite runs a fixed set of named checks and returns a SuiteResult;
all randomness flows from a single seed, so runs are reproducible.  The
suites exist to machine-check the toolkit's load-bearing facts: the
paired cyclic inequalities agree per assignment on modular lattices, the
permuting-family instances always hold, the exchange biconditional is
exhaustive-clean, the term-condition commutator matches the group oracle,
diamond configurations in congruence lattices are abelian and permute,
the power construction reproduces subspace lattices, and the finite
membership decision agrees with its structural certificate.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import algebras, fixtures, projectivity, subspaces, terms
from .lattice import find_sublattice, m3_configurations
from .partitions import (
    Partition,
    abelian_coset_partitions,
    all_partitions,
    full_partition_lattice,
    p_leq,
    permutes,
    verify_dn_permuting,
)

SUITES = ("idequiv", "dnperm", "abx", "m3proj", "commutator", "embedding")


@dataclass
class CheckResult:
    check_id: str
    description: str
    passed: bool
    witness: object = None
    elapsed: float = 0.0

    def to_dict(self):
        return {
            "check_id": self.check_id,
            "description": self.description,
            "passed": self.passed,
            "witness": self.witness,
            "elapsed": round(self.elapsed, 3),
        }


@dataclass
class SuiteResult:
    suite: str
    seed: int
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_json(self):
        ids = [c.check_id for c in self.checks]
        assert len(ids) == len(set(ids)), "duplicate check ids"
        return json.dumps(
            {
                "suite": self.suite,
                "seed": self.seed,
                "passed": self.passed,
                "checks": [c.to_dict() for c in sorted(self.checks, key=lambda c: c.check_id)],
            },
            indent=2,
        )

    def add(self, check_id, description, passed, witness=None, started=None):
        elapsed = time.time() - started if started is not None else 0.0
        self.checks.append(CheckResult(check_id, description, bool(passed), witness, elapsed))


# -- paired evaluation of the two cyclic inequalities -------------------------


def dn_pair_agreement(lat, n, mode="exhaustive", samples=None, seed=0, block=1 << 22):
    """Compare per-assignment truth of the n-th cyclic inequality and its
    companion over a lattice.

    Exhaustive mode sweeps all size**(2n) assignments in blocks; sampled
    mode draws seeded uniform assignments.  Returns (checked,
    discrepancies, first) where first is the earliest disagreeing
    assignment or None.  On modular lattices the two must agree at every
    assignment, so any discrepancy is a bug witness.
    """
    dn = terms.generate_dn(n)
    ds = terms.generate_dn_star(n)
    names = sorted(dn.variables() | ds.variables())
    k = len(names)
    size = lat.size
    ev = terms.VectorEvaluator(lat, [dn.lhs, dn.rhs, ds.lhs, ds.rhs])
    jf = ev.join_flat

    def run_block(env):
        cache = {}
        t_dn = jf[ev.run(dn.lhs, env, cache) * size + ev.run(dn.rhs, env, cache)] == ev.run(
            dn.rhs, env, cache
        )
        t_ds = jf[ev.run(ds.lhs, env, cache) * size + ev.run(ds.rhs, env, cache)] == ev.run(
            ds.rhs, env, cache
        )
        return t_dn != t_ds

    checked = 0
    discrepancies = 0
    first = None
    if mode == "exhaustive":
        total = size**k
        shape = (size,) * k
        for lo in range(0, total, block):
            hi = min(total, lo + block)
            idx = np.arange(lo, hi, dtype=np.int64)
            cols = np.unravel_index(idx, shape)
            env = dict(zip(names, cols))
            bad = run_block(env)
            cnt = int(bad.sum())
            if cnt and first is None:
                j = int(np.flatnonzero(bad)[0])
                first = {v: int(env[v][j]) for v in names}
            discrepancies += cnt
            checked += hi - lo
        return checked, discrepancies, first
    if mode == "sampled":
        if samples is None:
            raise ValueError("sampled mode needs a sample count")
        rng = np.random.default_rng(seed)
        while checked < samples:
            m = min(block, samples - checked)
            env = {v: rng.integers(0, size, size=m, dtype=np.int64) for v in names}
            bad = run_block(env)
            cnt = int(bad.sum())
            if cnt and first is None:
                j = int(np.flatnonzero(bad)[0])
                first = {v: int(env[v][j]) for v in names}
            discrepancies += cnt
            checked += m
        return checked, discrepancies, first
    raise ValueError("mode must be 'exhaustive' or 'sampled'")


# -- individual suites ---------------------------------------------------------


def suite_idequiv(seed=0, sampled_count=10**6, budget=None):
    """Per-assignment equivalence of the paired inequalities on modular fixtures.

    The named fixtures are swept exhaustively; a budget (in term
    evaluations) pushes over-budget sweeps to seeded sampling instead.
    """
    result = SuiteResult("idequiv", seed)
    corpus = [
        ("m3", fixtures.m3()),
        ("m3x2", fixtures.m3_times_chain2()),
        ("sub-2-2", subspaces.subspace_lattice(2, 2).lattice),
    ]
    for n in (3, 4):
        nodes = sum(
            terms.node_count(t)
            for phi in (terms.generate_dn(n), terms.generate_dn_star(n))
            for t in (phi.lhs, phi.rhs)
        )
        for name, lat in corpus:
            t0 = time.time()
            cost = lat.size ** (2 * n) * nodes
            if budget is not None and cost > budget:
                checked, bad, first = dn_pair_agreement(
                    lat, n, "sampled", samples=sampled_count, seed=seed
                )
            else:
                checked, bad, first = dn_pair_agreement(lat, n, "exhaustive")
            result.add(
                "idequiv-%s-n%d" % (name, n),
                "per-assignment agreement of the two cyclic inequalities on %s" % name,
                bad == 0,
                witness={"checked": checked, "discrepancies": bad, "first": first},
                started=t0,
            )
        t0 = time.time()
        checked, bad, first = dn_pair_agreement(
            subspaces.subspace_lattice(3, 2).lattice,
            n,
            "sampled",
            samples=sampled_count,
            seed=seed + n,
        )
        result.add(
            "idequiv-sub-3-2-n%d-sampled" % n,
            "sampled per-assignment agreement on the 16-element subspace lattice",
            bad == 0,
            witness={"checked": checked, "discrepancies": bad, "first": first},
            started=t0,
        )
    return result


_ABELIAN_ORDERS = [
    (2,), (3,), (4,), (2, 2), (5,), (6,), (7,), (8,), (4, 2), (2, 2, 2),
]


def suite_dnperm(seed=0, instances=10_000):
    """Seeded permuting families from abelian-group cosets always satisfy
    the companion inequality; plus the partition-count oracle."""
    result = SuiteResult("dnperm", seed)
    rng = np.random.default_rng(seed)
    families = [abelian_coset_partitions(orders) for orders in _ABELIAN_ORDERS]
    t0 = time.time()
    failures = []
    for i in range(instances):
        fam = families[int(rng.integers(0, len(families)))]
        n = int(rng.integers(3, 6))
        picks = rng.integers(0, len(fam), size=2 * n)
        alphas = [fam[int(j)] for j in picks[:n]]
        alphaps = [fam[int(j)] for j in picks[n:]]
        if not verify_dn_permuting(alphas, alphaps):
            failures.append({"instance": i, "n": n})
    result.add(
        "dnperm-instances",
        "%d seeded permuting-family instances, all holding" % instances,
        not failures,
        witness={"instances": instances, "failures": failures[:5]},
        started=t0,
    )

    t0 = time.time()
    bell = [1, 1]
    # Bell numbers by the binomial recurrence: an oracle independent of
    # the restricted-growth-string enumeration
    from math import comb

    while len(bell) < 9:
        bell.append(sum(comb(len(bell) - 1, k) * bell[k] for k in range(len(bell))))
    counts = {n: len(all_partitions(n)) for n in range(3, 7)}
    lattice_counts = {n: len(full_partition_lattice(n)) for n in range(3, 7)}
    ok = all(counts[n] == bell[n] == lattice_counts[n] for n in counts)
    result.add(
        "dnperm-bell-counts",
        "partition lattices on 3..6 points match the Bell recurrence",
        ok,
        witness={"counts": lattice_counts, "bell": bell[3:7]},
        started=t0,
    )
    return result


def suite_abx(seed=0):
    """Exhaustive exchange-biconditional scan over the modular fixtures."""
    result = SuiteResult("abx", seed)
    corpus = [
        ("m3", fixtures.m3()),
        ("sub-2-2", subspaces.subspace_lattice(2, 2).lattice),
        ("sub-3-2", subspaces.subspace_lattice(3, 2).lattice),
        ("m3x2", fixtures.m3_times_chain2()),
    ]
    for name, lat in corpus:
        t0 = time.time()
        ok, witness = projectivity.abx_check(lat)
        result.add(
            "abx-%s" % name,
            "exchange biconditional over all qualifying 4-tuples of %s" % name,
            ok,
            witness=witness,
            started=t0,
        )
    return result


def _iso_onto_m3(lat):
    """An isomorphism from a 5-element diamond-shaped lattice onto the canon."""
    hom = find_sublattice(lat, fixtures.m3())
    if hom is None:
        return None
    inverse = [0] * lat.size
    for src, img in enumerate(hom.map):
        inverse[img] = src
    from .lattice import LatticeHom

    return LatticeHom(lat, fixtures.m3(), inverse)


def suite_m3proj(seed=0):
    """The diamond-recovery pipeline on the positive and negative fixtures."""
    result = SuiteResult("m3proj", seed)
    m3 = fixtures.m3()
    from .lattice import LatticeHom

    cases = []
    cases.append(("m3-identity", m3, LatticeHom(m3, m3, range(5)), (1, 2, 3)))

    prod = fixtures.m3_times_chain2()
    proj = LatticeHom(prod, m3, [i // 2 for i in range(10)])
    cases.append(("m3x2-projection", prod, proj, (3, 4, 7)))

    sub22 = subspaces.subspace_lattice(2, 2).lattice
    iso = _iso_onto_m3(sub22)
    cases.append(
        ("sub-2-2-iso", sub22, iso, tuple(iso.map.index(a) for a in (1, 2, 3)))
    )

    con = algebras.con_lattice(fixtures.klein_group())
    iso_con = _iso_onto_m3(con.lattice)
    cases.append(
        (
            "con-z2z2-identity",
            con.lattice,
            iso_con,
            tuple(iso_con.map.index(a) for a in (1, 2, 3)),
        )
    )

    for name, lat, hom, triple in cases:
        t0 = time.time()
        rep = projectivity.m3_witness(lat, hom, *triple)
        stage_flags = {k: v["ok"] for k, v in rep.stages.items()}
        result.add(
            "m3proj-%s" % name,
            "pipeline succeeds with stage-wise image preservation on %s" % name,
            rep.success and all(stage_flags.values()),
            witness={"stages": stage_flags, "final": rep.final_triple, "m": rep.m},
            started=t0,
        )

    t0 = time.time()
    glued, hom, triple = fixtures.m3_quotient_nonmodular_fixture()
    rep = projectivity.m3_witness(glued, hom, *triple)
    result.add(
        "m3proj-nonmodular-failure",
        "the engineered nonmodular fixture fails at the verification stage",
        (not rep.success) and rep.failure_stage == "verify",
        witness={"failure_stage": rep.failure_stage, "detail": rep.stages.get("verify")},
        started=t0,
    )
    return result


def suite_commutator(seed=0):
    """Commutator oracle agreement and the diamond-configuration facts."""
    result = SuiteResult("commutator", seed)

    # group-theoretic oracle: [G, G] as the subgroup generated by commutators
    def group_commutator_partition(alg):
        n = alg.size
        mul = alg.by_name["mul"]
        inv = alg.by_name["inv"]
        comms = {
            int(mul[mul[g, h], mul[int(inv[g]), int(inv[h])]])
            for g in range(n)
            for h in range(n)
        }
        sub = {0} | comms  # group fixtures index the identity as 0
        grown = True
        while grown:
            grown = False
            for a in list(sub):
                for b in list(sub):
                    c = int(mul[a, b])
                    if c not in sub:
                        sub.add(c)
                        grown = True
        blocks = {}
        for g in range(n):
            key = frozenset(int(mul[g, h]) for h in sub)
            blocks.setdefault(key, []).append(g)
        return Partition.from_blocks(n, list(blocks.values()))

    expectations = [
        ("z2", fixtures.cyclic_group(2)),
        ("z3", fixtures.cyclic_group(3)),
        ("z4", fixtures.cyclic_group(4)),
        ("z2z2", fixtures.klein_group()),
        ("s3", fixtures.sym3()),
    ]
    for name, alg in expectations:
        t0 = time.time()
        top = Partition.one_block(alg.size)
        tc = algebras.commutator(alg, top, top)
        oracle = group_commutator_partition(alg)
        result.add(
            "commutator-oracle-%s" % name,
            "term-condition [1,1] equals the commutator-subgroup congruence on %s" % name,
            tc == oracle,
            witness={"tc": tc.blocks(), "oracle": oracle.blocks()},
            started=t0,
        )

    # every diamond configuration of atoms in a congruence lattice is
    # abelian over its bottom, and with a difference term the atoms permute
    t0 = time.time()
    violations = []
    permute_violations = []
    for name, alg, d in fixtures.standard_algebras():
        con = algebras.con_lattice(alg)
        wdt_ok, _ = algebras.check_weak_difference_term(alg, d)
        for (o, x, y, z, i) in m3_configurations(con.lattice):
            delta = con.congruences[o]
            for atom in (x, y, z):
                theta = con.congruences[atom]
                comm = algebras.commutator(alg, theta, theta)
                if not p_leq(comm, delta):
                    violations.append({"algebra": name, "atom": atom})
            if wdt_ok:
                for u, v in ((x, y), (x, z), (y, z)):
                    if not permutes(con.congruences[u], con.congruences[v]):
                        permute_violations.append({"algebra": name, "pair": (u, v)})
    result.add(
        "commutator-diamond-abelian",
        "diamond atoms in fixture congruence lattices have square commutator below the bottom",
        not violations,
        witness={"violations": violations},
        started=t0,
    )
    result.add(
        "commutator-diamond-permute",
        "with a verified difference term, diamond atom congruences permute",
        not permute_violations,
        witness={"violations": permute_violations},
        started=t0,
    )
    return result


def suite_embedding(seed=0):
    """The power construction, the membership decision, and the counts."""
    result = SuiteResult("embedding", seed)

    t0 = time.time()
    rep = algebras.verify_embedding_construction(
        fixtures.cyclic_group(2), Partition.one_block(2), 2
    )
    iso = find_sublattice(rep.ln, fixtures.m3())
    result.add(
        "embedding-z2-n2",
        "the square construction over the 2-element group yields the diamond",
        rep.passed and rep.interval_size == 5 and iso is not None,
        witness={"checks": rep.checks, "size": rep.interval_size},
        started=t0,
    )

    t0 = time.time()
    rep = algebras.verify_embedding_construction(
        fixtures.cyclic_group(2), Partition.one_block(2), 3
    )
    sub32 = subspaces.subspace_lattice(3, 2)
    iso = find_sublattice(rep.ln, sub32.lattice)
    result.add(
        "embedding-z2-n3",
        "the cube construction yields the 16-element subspace lattice",
        rep.passed and rep.interval_size == 16 and iso is not None,
        witness={"checks": rep.checks, "size": rep.interval_size},
        started=t0,
    )

    t0 = time.time()
    rep = algebras.verify_embedding_construction(
        fixtures.cyclic_group(3), Partition.one_block(3), 2
    )
    sub23 = subspaces.subspace_lattice(2, 3)
    iso = find_sublattice(rep.ln, sub23.lattice)
    result.add(
        "embedding-z3-n2",
        "the square construction over the 3-element group yields the 6-element line lattice",
        rep.passed and rep.interval_size == 6 and iso is not None,
        witness={"checks": rep.checks, "size": rep.interval_size},
        started=t0,
    )

    decisions = [
        ("m3", fixtures.m3(), True),
        ("kinf-a", fixtures.kinf_sample_a(), True),
        ("kinf-b", fixtures.kinf_sample_b(), True),
        ("sub-3-2", sub32.lattice, False),
        ("n5", fixtures.n5(), False),
    ]
    for name, lat, expected in decisions:
        t0 = time.time()
        verdict, cert = subspaces.k_infinity_member(lat)
        ok = verdict == expected
        if name == "sub-3-2":
            ok = ok and cert["reason"] == "not_2distributive" and cert["two_diamond"]
        if name == "n5":
            ok = ok and cert["reason"] == "not_modular"
        result.add(
            "kinf-%s" % name,
            "finite modular-2-distributive membership decision for %s" % name,
            ok,
            witness=_jsonable(cert),
            started=t0,
        )

    t0 = time.time()
    expected_counts = {(2, 2): 5, (3, 2): 16, (2, 3): 6, (4, 2): 67}
    got = {}
    for (dim, p), want in expected_counts.items():
        sl = subspaces.subspace_lattice(dim, p)
        oracle = _span_count_oracle(dim, p)
        got[(dim, p)] = (len(sl), oracle, want)
    ok = all(a == b == c for (a, b, c) in got.values())
    result.add(
        "counts-gaussian",
        "subspace lattice sizes match the independent span-enumeration oracle",
        ok,
        witness={str(k): v for k, v in got.items()},
        started=t0,
    )
    return result


def _span_count_oracle(dim, p):
    """Count subspaces of GF(p)^dim by enumerating row spans as vector sets.

    Independent of echelon forms: every k x dim matrix over GF(p) (k <=
    dim) is expanded to its span by brute-force linear combinations.
    """
    import itertools as it

    vectors = list(it.product(range(p), repeat=dim))
    spans = set()
    for k in range(dim + 1):
        for rows in it.product(vectors, repeat=k):
            span = set()
            for coeffs in it.product(range(p), repeat=k):
                v = tuple(
                    sum(c * r[i] for c, r in zip(coeffs, rows)) % p for i in range(dim)
                )
                span.add(v)
            spans.add(frozenset(span))
    return len(spans)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def run_suite(name, seed=0, instances=10_000, sampled_count=10**6, budget=None):
    if name == "idequiv":
        return [suite_idequiv(seed, sampled_count=sampled_count, budget=budget)]
    if name == "dnperm":
        return [suite_dnperm(seed, instances=instances)]
    if name == "abx":
        return [suite_abx(seed)]
    if name == "m3proj":
        return [suite_m3proj(seed)]
    if name == "commutator":
        return [suite_commutator(seed)]
    if name == "embedding":
        return [suite_embedding(seed)]
    if name == "all":
        return [
            suite_idequiv(seed, sampled_count=sampled_count, budget=budget),
            suite_dnperm(seed, instances=instances),
            suite_abx(seed),
            suite_m3proj(seed),
            suite_commutator(seed),
            suite_embedding(seed),
        ]
    raise ValueError("unknown suite %r; choose from %s or 'all'" % (name, SUITES))

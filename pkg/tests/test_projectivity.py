import json

import pytest

from congforge import fixtures
from congforge.algebras import con_lattice
from congforge.lattice import LatticeHom, find_sublattice, is_modular
from congforge.projectivity import (
    ImageMismatchError,
    NotModularError,
    NotSurjectiveError,
    abx_check,
    m3_witness,
)


def test_abx_on_modular_fixtures(m3, sub22, sub32, m3x2):
    for lat in (m3, sub22.lattice, sub32.lattice, m3x2):
        ok, witness = abx_check(lat)
        assert ok and witness is None


def test_abx_requires_modularity(n5):
    with pytest.raises(NotModularError):
        abx_check(n5)


def test_identity_pipeline(m3):
    hom = LatticeHom(m3, m3, range(5))
    rep = m3_witness(m3, hom, 1, 2, 3)
    assert rep.success and rep.m == 0
    assert rep.final_triple == (1, 2, 3)
    assert (rep.bottom, rep.top) == (0, 4)
    payload = json.loads(rep.to_json())
    assert set(payload["stages"]) == {
        "stabilize", "adjoin_meet", "prime", "double_prime", "verify",
    }


def test_product_projection_pipeline(m3, m3x2):
    # elements of the product are (i, j) -> 2*i + j; preimages of the
    # atoms: (a,1), (b,0), (c,1)
    proj = LatticeHom(m3x2, m3, [i // 2 for i in range(10)])
    rep = m3_witness(m3x2, proj, 3, 4, 7)
    assert rep.success and rep.m == 0
    # hand execution: the first side absorbs the chain coordinate
    assert rep.adjusted_triple == (3, 5, 7)
    assert rep.final_triple == (3, 5, 7)
    assert (rep.bottom, rep.top) == (1, 9)
    assert all(stage["ok"] for stage in rep.stages.values())


def test_pipeline_on_congruence_lattice_of_klein_group(m3):
    con = con_lattice(fixtures.klein_group())
    hom = find_sublattice(con.lattice, m3)
    inverse = [0] * 5
    for src, img in enumerate(hom.map):
        inverse[img] = src
    iso = LatticeHom(con.lattice, m3, inverse)
    triple = tuple(iso.map.index(a) for a in (1, 2, 3))
    rep = m3_witness(con.lattice, iso, *triple)
    assert rep.success
    assert all(stage["ok"] for stage in rep.stages.values())
    # the working interval the third stage projects into is modular,
    # which is what licenses the classical double-primed landing
    from congforge.lattice import interval

    lat = con.lattice
    a, b, c = triple
    lo = lat.join[lat.meet[a, b], lat.meet[a, c]]
    hi = lat.join[b, c]
    sub, _ = interval(lat, int(lo), int(hi))
    assert is_modular(sub)[0]


def test_nonmodular_fixture_fails_at_verify():
    lat, hom, (a, b, c) = fixtures.m3_quotient_nonmodular_fixture()
    assert not is_modular(lat)[0]
    assert hom.surjective
    rep = m3_witness(lat, hom, a, b, c)
    assert not rep.success
    assert rep.failure_stage == "verify"
    # earlier stages all clean, including image preservation
    for stage in ("stabilize", "adjoin_meet", "prime", "double_prime"):
        assert rep.stages[stage]["ok"]
    # the double-primed triple has a common meet but split joins
    detail = rep.stages["verify"]["detail"]
    assert len(detail["meets"]) == 1 and len(detail["joins"]) == 2
    # the lattice still contains a diamond elsewhere (any finite lattice
    # mapping onto one does); the pipeline output is what fails
    assert find_sublattice(lat, fixtures.m3()) is not None


def test_hom_preconditions(m3, n5):
    not_onto = LatticeHom(fixtures.chain(2), m3, [0, 4])
    with pytest.raises(NotSurjectiveError):
        m3_witness(fixtures.chain(2), not_onto, 0, 0, 0)
    hom = LatticeHom(m3, m3, range(5))
    with pytest.raises(ImageMismatchError):
        m3_witness(m3, hom, 2, 1, 3)  # alpha must sit over the first atom
    with pytest.raises(ValueError):
        m3_witness(n5, LatticeHom(n5, n5, range(5)), 1, 2, 3)


def test_pipeline_succeeds_on_every_modular_fixture_with_surjection(m3, lattice_corpus):
    # wherever a surjection onto the diamond exists at all, the pipeline
    # must land on a diamond
    for name, lat in lattice_corpus:
        if not is_modular(lat)[0]:
            continue
        emb = find_sublattice(lat, m3)
        if emb is None or lat.size == 5:
            continue
        # build a surjection by collapsing onto the embedded copy where
        # possible: only the product fixture admits an easy one
        if name != "m3x2":
            continue
        proj = LatticeHom(lat, m3, [i // 2 for i in range(10)])
        rep = m3_witness(lat, proj, 3, 4, 7)
        assert rep.success, name


def test_stagewise_images_recorded(m3x2, m3):
    proj = LatticeHom(m3x2, m3, [i // 2 for i in range(10)])
    rep = m3_witness(m3x2, proj, 3, 4, 7)
    for x, atom in zip(rep.final_triple, (1, 2, 3)):
        assert proj(x) == atom

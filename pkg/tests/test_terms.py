import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from congforge import fixtures, subspaces
from congforge.lattice import LatticeHom
from congforge.terms import (
    BudgetExceededError,
    Identity,
    InvalidNError,
    Join,
    Meet,
    QuasiIdentity,
    TermSyntaxError,
    UnboundVariableError,
    Var,
    evaluate,
    generate_2distributive,
    generate_dn,
    generate_dn_star,
    generate_modular,
    generate_sd,
    holds,
    parse,
    substitute,
    to_str,
)


def test_parse_meet_join():
    assert parse("x0 * (x1 + x2)") == Meet(Var("x0"), Join(Var("x1"), Var("x2")))


def test_parse_quasi_identity():
    assert parse("x*y = x*z -> x*y = x*(y+z)") == generate_sd("meet")


def test_parse_error_offset():
    with pytest.raises(TermSyntaxError) as err:
        parse("x0 + (")
    assert err.value.offset == 7


def test_parse_inequation_kind():
    phi = parse("x <= x + y")
    assert isinstance(phi, Identity) and phi.kind == "le"


def test_2distributive_printed_form():
    assert to_str(generate_2distributive()) == "u*(x+y+z) = u*(x+y) + u*(x+z) + u*(y+z)"


def test_dn_star_structure():
    phi = generate_dn_star(3)
    assert sorted(phi.variables()) == ["x0", "x0'", "x1", "x1'", "x2", "x2'"]
    y1 = Meet(Join(Var("x1"), Var("x2")), Join(Var("x1'"), Var("x2'")))
    y2 = Meet(Join(Var("x2"), Var("x0")), Join(Var("x2'"), Var("x0'")))
    cross = Join(
        Var("x1"), Meet(Join(Var("x0'"), Var("x1'")), Join(y1, y2))
    )
    assert phi.rhs == Join(Var("x0'"), Meet(Var("x0"), cross))
    assert phi.kind == "le"


def test_dn_rejects_small_n():
    with pytest.raises(InvalidNError):
        generate_dn(2)
    with pytest.raises(InvalidNError):
        generate_dn_star(2)


_names = st.sampled_from(["x", "y", "z", "x0", "x0'", "u_1"])


def _term_strategy():
    return st.recursive(
        _names.map(Var),
        lambda sub: st.builds(Join, sub, sub) | st.builds(Meet, sub, sub),
        max_leaves=12,
    )


@settings(max_examples=200, deadline=None)
@given(_term_strategy())
def test_print_parse_roundtrip_terms(term):
    assert parse(to_str(term)) == term


@settings(max_examples=100, deadline=None)
@given(_term_strategy(), _term_strategy(), st.sampled_from(["eq", "le"]))
def test_print_parse_roundtrip_identities(lhs, rhs, kind):
    phi = Identity(lhs, rhs, kind)
    assert parse(to_str(phi)) == phi


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(_term_strategy(), _term_strategy()), min_size=2, max_size=4))
def test_print_parse_roundtrip_quasi(idents):
    premises = tuple(Identity(a, b) for a, b in idents[:-1])
    phi = QuasiIdentity(premises, Identity(*idents[-1]))
    assert parse(to_str(phi)) == phi


def test_premise_free_quasi_prints_as_its_conclusion():
    conc = Identity(Var("x"), Var("y"))
    assert parse(to_str(QuasiIdentity((), conc))) == conc


def test_evaluate_basics(m3):
    two = fixtures.chain(2)
    assert evaluate(Join(Var("x"), Var("y")), two, {"x": 0, "y": 1}) == 1
    assert evaluate(Meet(Var("x"), Var("x")), m3, {"x": 2}) == 2
    with pytest.raises(UnboundVariableError):
        evaluate(Var("w"), m3, {"x": 0})


def test_evaluate_2dist_witness_in_sub32(sub32):
    from congforge.subspaces import Subspace

    idx = sub32.index
    u = idx[Subspace.from_vectors(2, 3, [(1, 1, 1)])]
    x = idx[Subspace.from_vectors(2, 3, [(1, 0, 0)])]
    y = idx[Subspace.from_vectors(2, 3, [(0, 1, 0)])]
    z = idx[Subspace.from_vectors(2, 3, [(0, 0, 1)])]
    phi = generate_2distributive()
    env = {"u": u, "x": x, "y": y, "z": z}
    assert evaluate(phi.lhs, sub32.lattice, env) == u
    assert evaluate(phi.rhs, sub32.lattice, env) == sub32.lattice.bottom


def _oracle_first_counterexample(lat, phi):
    """Straightforward nested-loop scan in the same enumeration order."""
    names = sorted(phi.variables())
    prem, conc = (
        (phi.premises, phi.conclusion)
        if isinstance(phi, QuasiIdentity)
        else ((), phi)
    )

    def truth(ident, env):
        l = evaluate(ident.lhs, lat, env)
        r = evaluate(ident.rhs, lat, env)
        return l == r if ident.kind == "eq" else lat.join[l, r] == r

    for values in itertools.product(range(lat.size), repeat=len(names)):
        env = dict(zip(names, values))
        if all(truth(p, env) for p in prem) and not truth(conc, env):
            return env
    return None


def test_holds_modular_law(m3, n5):
    verdict = holds(n5, generate_modular())
    assert verdict.status == "fails"
    assert verdict.assignment == _oracle_first_counterexample(n5, generate_modular())
    assert holds(m3, generate_modular()).status == "holds"


def test_holds_2dist(m3, sub32):
    assert holds(m3, generate_2distributive()).status == "holds"
    verdict = holds(sub32.lattice, generate_2distributive())
    assert verdict.status == "fails"
    assert verdict.assignment == _oracle_first_counterexample(
        sub32.lattice, generate_2distributive()
    )


def test_holds_semidistributive(m3):
    assert holds(fixtures.chain(4), generate_sd("meet")).status == "holds"
    verdict = holds(m3, generate_sd("join"))
    assert verdict.status == "fails"
    assert verdict.assignment == _oracle_first_counterexample(m3, generate_sd("join"))


def test_budget_and_sampling(sub32):
    phi = generate_dn_star(3)
    with pytest.raises(BudgetExceededError):
        holds(sub32.lattice, phi)  # 16**6 assignments blow the default budget
    v1 = holds(sub32.lattice, phi, mode="sampled", samples=2000, seed=11)
    v2 = holds(sub32.lattice, phi, mode="sampled", samples=2000, seed=11)
    assert v1 == v2
    with pytest.raises(ValueError):
        holds(sub32.lattice, phi, mode="sampled")  # seed is mandatory


def test_dn_star_substitution_fails_in_n5(n5):
    # sending the head variable to x, the other plain variables to y + z
    # and all primed variables to y * z turns the companion inequality
    # into a modularity consequence, which the pentagon refutes
    x, y, z = Var("x"), Var("y"), Var("z")
    for n in (3, 4):
        phi = generate_dn_star(n)
        mapping = {"x0": x}
        for i in range(n):
            if i > 0:
                mapping["x%d" % i] = Join(y, z)
            mapping["x%d'" % i] = Meet(y, z)
        inst = Identity(
            substitute(phi.lhs, mapping), substitute(phi.rhs, mapping), "le"
        )
        assert holds(n5, inst).status == "fails"


def test_dn_equals_dn_star_per_assignment_small(m3):
    # modular fixture: the two inequalities agree assignment by assignment
    dn, ds = generate_dn(3), generate_dn_star(3)
    names = sorted(dn.variables())
    for values in itertools.product(range(m3.size), repeat=2):
        # spot-check a slice of the full space: first two variables vary,
        # rest pinned to atoms
        env = dict(zip(names, values + (1, 2, 3, 0)))
        t1 = m3.join[evaluate(dn.lhs, m3, env), evaluate(dn.rhs, m3, env)] == evaluate(
            dn.rhs, m3, env
        )
        t2 = m3.join[evaluate(ds.lhs, m3, env), evaluate(ds.rhs, m3, env)] == evaluate(
            ds.rhs, m3, env
        )
        assert t1 == t2


def test_evaluate_respects_homomorphisms(m3, m3x2):
    proj = LatticeHom(m3x2, m3, [i // 2 for i in range(10)])
    phi = generate_2distributive()
    for values in itertools.product(range(0, 10, 3), repeat=4):
        env = dict(zip(sorted(phi.variables()), values))
        mapped = {k: proj(v) for k, v in env.items()}
        assert proj(evaluate(phi.lhs, m3x2, env)) == evaluate(phi.lhs, m3, mapped)
        assert proj(evaluate(phi.rhs, m3x2, env)) == evaluate(phi.rhs, m3, mapped)

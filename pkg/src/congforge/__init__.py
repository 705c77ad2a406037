"""congforge: finite-scale lattice theory and universal algebra toolkit.

Finite lattices with full operation tables, a small language of lattice
identities and quasi-identities (including the higher Arguesian families),
equivalence-relation and subspace lattices, the term-condition commutator
on finite algebras, the diamond-recovery pipeline for surjections onto
the five-element modular lattice, and a verification suite tying the
pieces together.
"""

from .algebras import (
    ConLattice,
    FiniteAlgebra,
    Operation,
    TOp,
    TVar,
    abelian_interval,
    check_weak_difference_term,
    commutator,
    con_lattice,
    centrality,
    construct_delta,
    is_congruence,
    is_solvable_interval,
    principal_congruence,
    solvable_series,
    verify_embedding_construction,
)
from .lattice import (
    FiniteLattice,
    LatticeHom,
    NotALatticeError,
    NotAPartialOrderError,
    NotComparableError,
    beta_gamma_iteration,
    check_semidistributivity,
    direct_product,
    find_sublattice,
    from_cover_relation,
    interval,
    is_modular,
    m3_configurations,
    sublattice_closure,
)
from .limits import SizeLimitError, size_cap
from .partitions import (
    EqRelLattice,
    Partition,
    abelian_coset_partitions,
    closed_sublattice,
    full_partition_lattice,
    p_join,
    p_leq,
    p_meet,
    permutes,
    verify_dn_permuting,
)
from .projectivity import M3WitnessReport, abx_check, m3_witness
from .subspaces import (
    Subspace,
    SubspaceLattice,
    embed_search,
    find_two_diamond,
    gaussian_binomial,
    k_infinity_member,
    s_intersect,
    s_sum,
    subspace_lattice,
)
from .terms import (
    Identity,
    Join,
    Meet,
    QuasiIdentity,
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

__version__ = "0.1.0"

__all__ = [
    "ConLattice", "FiniteAlgebra", "Operation", "TOp", "TVar",
    "abelian_interval", "check_weak_difference_term", "commutator",
    "con_lattice", "centrality", "construct_delta", "is_congruence",
    "is_solvable_interval", "principal_congruence", "solvable_series",
    "verify_embedding_construction",
    "FiniteLattice", "LatticeHom", "NotALatticeError",
    "NotAPartialOrderError", "NotComparableError", "beta_gamma_iteration",
    "check_semidistributivity", "direct_product", "find_sublattice",
    "from_cover_relation", "interval", "is_modular", "m3_configurations",
    "sublattice_closure",
    "SizeLimitError", "size_cap",
    "EqRelLattice", "Partition", "abelian_coset_partitions",
    "closed_sublattice", "full_partition_lattice", "p_join", "p_leq",
    "p_meet", "permutes", "verify_dn_permuting",
    "M3WitnessReport", "abx_check", "m3_witness",
    "Subspace", "SubspaceLattice", "embed_search", "find_two_diamond",
    "gaussian_binomial", "k_infinity_member", "s_intersect", "s_sum",
    "subspace_lattice",
    "Identity", "Join", "Meet", "QuasiIdentity", "Var", "evaluate",
    "generate_2distributive", "generate_dn", "generate_dn_star",
    "generate_modular", "generate_sd", "holds", "parse", "substitute",
    "to_str",
]

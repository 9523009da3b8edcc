"""Finite algebras: Boolean algebras, semilattices, semimodules and vector spaces."""

from .algebra import (
    FinAlgebra,
    bare,
    FinSemiring,
    FreeAlgebra,
    KindError,
    boolean_semiring,
    chain3_semiring,
    check_algebra,
    filters,
    find_isomorphism,
    finite_field,
    free_algebra,
    free_module,
    from_meet_order,
    hom_to_subset,
    homs,
    homs_bruteforce,
    ideals,
    is_hom,
    powerset_ba,
    powerset_jsl,
    powerset_msl,
    semiring,
    two,
    ultrafilters,
    vector_space,
    z3_semiring,
)
from .catalog import (
    AlgebraCatalog,
    CatalogError,
    canonical_label,
    enumerate_catalog,
    lattice_orders_bruteforce,
    read_catalog,
    write_catalog,
)
from .linear import double_dual_map, dual_space, hom_algebra, pointwise, power, vector_space_ops
from .relations import (
    all_relations,
    extension,
    graph,
    random_relation,
    rel_compose,
    rel_identity,
    rel_kleisli_category,
    rel_transpose,
)

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codensity.families import compatible_families, naive_families
from codensity.fincat import full_subcategory, validate
from codensity.monad import check_monad_laws
from codensity.setdiag import (
    canonical_colimit_holds,
    codensity_at,
    codensity_monad,
    colimit,
    colimit_oracle,
    comma_objects,
    factor_through,
    idempotent_diagram,
    is_cone,
    isbell_conjugates,
    kan_factor,
    limit,
    limit_oracle,
    natural_transformations,
    random_diagram,
    representable,
    right_kan_extension,
    set_category,
    set_fragment,
    truncated_codensity,
    validate_diagram,
)
from helpers import poset_cat, posets_up_to_iso


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_limit_and_colimit_match_oracles(seed):
    D = random_diagram(random.Random(seed), max_objects=5, max_size=3, max_arrows=5)
    assert validate_diagram(D).ok
    assert list(limit(D).apex) == sorted(limit_oracle(D))
    assert colimit(D).classes == colimit_oracle(D).classes


def test_empty_diagram_limit_is_point():
    from codensity.fincat import discrete_category
    from codensity.setdiag import SetValuedFunctor

    D = SetValuedFunctor(discrete_category([]), (), ())
    assert len(limit(D)) == 1
    # an empty carrier with no arrows has no families
    D0 = random_diagram(random.Random(0), max_objects=1, max_size=0, max_arrows=0)
    assert len(limit(D0)) == 0


def test_idempotent_limit_and_colimit():
    # e = (0, 0, 2, 2): fixed points {0, 2}
    D = idempotent_diagram((0, 0, 2, 2))
    assert len(limit(D)) == 2
    assert len(colimit(D)) == 2
    with pytest.raises(ValueError):
        idempotent_diagram((1, 2, 0))


def test_cone_factorisation():
    D = random_diagram(random.Random(3), max_objects=4, max_size=3)
    cone = limit(D)
    legs = [cone.projection(a) for a in range(len(D.sizes))]
    assert is_cone(D, legs)
    f = factor_through(cone, legs)
    assert f == tuple(range(len(cone)))


def test_search_agrees_with_naive_product():
    edges = [(0, 1, (1, 0, 1)), (1, 2, (0, 0)), (2, 0, (2, 1))]
    assert compatible_families([3, 2, 2], edges) == naive_families([3, 2, 2], edges)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_codensity_of_small_sets_is_identity_sized(n):
    value = codensity_at(set_fragment(3), n)
    assert len(value) == n
    assert sorted(value.unit) == list(range(n))


def test_codensity_below_carrier_is_larger():
    # sets of size <= 2 do not see a 3-element set; the value is cross-checked by product filtering
    frag = set_fragment(2)
    value = codensity_at(frag, 3)
    objs = comma_objects(frag, 3)
    where = {o: i for i, o in enumerate(objs)}
    edges = []
    for a, b, t in frag.arrows:
        for i, (a2, f) in enumerate(objs):
            if a2 == a:
                edges.append((i, where[(b, tuple(t[y] for y in f))], t))
    naive = naive_families([frag.sizes[a] for a, _ in objs], edges)
    assert len(value) == len(naive) == 8


def test_codensity_monad_laws_on_small_sets():
    _, U = set_category(3)
    M = codensity_monad(U, [0, 1, 2, 3])
    assert check_monad_laws(M).ok


def test_truncation_chain_stabilises():
    chain = truncated_codensity(lambda k: set_fragment(k), 2, 4)
    assert chain.cardinalities[-1] == 2
    assert chain.bijective(len(chain.levels) - 1)


def test_right_kan_along_identity_is_original():
    C, U = set_category(2)
    _, J = full_subcategory(C, range(C.n_objects))
    ran = right_kan_extension(U, J)
    assert ran.functor.sizes == U.sizes
    # the universal property: the identity on U factors uniquely
    alpha = [tuple(range(s)) for s in U.sizes]
    comps = kan_factor(ran, U, alpha)
    assert all(None not in c for c in comps)


def test_right_kan_along_inclusion_is_codensity():
    C, U = set_category(3)
    sub, J = full_subcategory(C, [1, 2])
    F = type(U)(sub, tuple(U.sizes[o] for o in J.obj_map), tuple(U.action[m] for m in J.mor_map))
    ran = right_kan_extension(F, J)
    # pointwise Ran through comma categories agrees with the comma-free codensity limit
    expected = tuple(len(codensity_at(set_fragment(2, min_size=1), n)) for n in range(4))
    assert ran.functor.sizes == expected
    assert ran.functor.sizes[1:3] == (1, 2)


def test_canonical_colimits_for_dense_inclusion():
    C, _ = set_category(3)
    _, G = full_subcategory(C, [1])
    assert all(canonical_colimit_holds(G, b) for b in range(C.n_objects))
    _, G0 = full_subcategory(C, [0])
    assert not all(canonical_colimit_holds(G0, b) for b in range(C.n_objects))


def test_yoneda_count():
    # Nat(C(c, -), F) has |F c| elements
    C, U = set_category(2)
    for c in range(C.n_objects):
        _, fams = natural_transformations(representable(C, c), U)
        assert len(fams) == U.sizes[c]


def test_isbell_unit_on_chain():
    C = poset_cat(2, {(0, 0), (1, 1), (0, 1)})
    from codensity.setdiag import corepresentable_presheaf

    X = corepresentable_presheaf(C, 1)
    O, S, unit = isbell_conjugates(C, X)
    assert S.diagram.sizes == X.sizes
    assert all(sorted(u) == list(range(len(u))) for u in unit)


def test_poset_enumeration_counts():
    # unlabelled posets: 1, 1, 2, 5, 16
    assert [len(posets_up_to_iso(n)) for n in range(5)] == [1, 1, 2, 5, 16]


def test_canonical_density_colimit_recovers_three_points():
    from codensity.setdiag import canonical_comparison, density_diagram

    C, U = set_category(2)
    D, objs = density_diagram(C, U, 3)
    cocone = colimit(D)
    assert cocone.classes == colimit_oracle(D).classes
    assert sorted(canonical_comparison(cocone, objs, 3)) == [0, 1, 2]

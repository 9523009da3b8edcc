import pytest

from codensity.fintop import (
    all_topologies,
    complete_ideals,
    continuous_maps,
    discrete,
    filter_monad_top,
    from_subbase,
    homeomorphic,
    indiscrete,
    is_coarser,
    is_continuous,
    lower_vietoris,
    lower_vietoris_representation,
    opens_algebra,
    preorder_count,
    sierpinski,
    sobrification,
    t0_quotient,
    topological_monad,
    vietoris_finite_stone,
)
from codensity.monad import check_monad_laws


def test_topology_counts_match_preorders():
    for n in range(4):
        assert len(all_topologies(n)) == preorder_count(n)
    # frozen from the preorder oracle
    assert [preorder_count(n) for n in range(4)] == [1, 1, 4, 29]


def test_every_enumerated_family_is_a_topology():
    assert all(X.check() == [] for X in all_topologies(3))


def test_subbase_generation():
    X = from_subbase(3, [0b011, 0b110])
    assert set(X.opens) == {0, 0b010, 0b011, 0b110, 0b111}


def test_sierpinski_specialisation():
    S = sierpinski()
    assert S.is_t0()
    # the closed point 0 lies below the open point 1
    assert S.specialization(0, 1) != S.specialization(1, 0)


def test_continuity():
    S = sierpinski()
    assert is_continuous(S, S, (0, 1))
    assert not is_continuous(S, S, (1, 0))
    assert len(continuous_maps(discrete(2), indiscrete(2))) == 4


@pytest.mark.parametrize("X", all_topologies(3))
def test_maps_into_sierpinski_are_opens(X):
    assert len(continuous_maps(X, sierpinski())) == len(X.opens)


@pytest.mark.parametrize("X", all_topologies(3))
def test_sobrification_is_t0_quotient_and_idempotent(X):
    S, unit = sobrification(X)
    Q, _ = t0_quotient(X)
    assert homeomorphic(S, Q)
    S2, _ = sobrification(S)
    assert homeomorphic(S2, S)
    assert is_continuous(X, S, unit)


@pytest.mark.parametrize("X", all_topologies(3))
def test_lower_vietoris_matches_complete_ideals(X):
    rep = lower_vietoris_representation(X)
    assert sorted(rep.values()) == sorted(complete_ideals(opens_algebra(X, "jsl")))
    assert len(set(rep.values())) == len(rep)


def test_filter_space_sizes():
    assert len(filter_monad_top(discrete(2))[1]) == 4
    assert len(filter_monad_top(sierpinski())[1]) == 3
    assert len(filter_monad_top(discrete(0))[1]) == 1


def test_lower_vietoris_sizes():
    V, closed = lower_vietoris(sierpinski())
    assert V.n == len(closed) == 3
    assert lower_vietoris(discrete(2))[0].n == 4


def test_vietoris_on_finite_discrete():
    V, subsets = vietoris_finite_stone(discrete(2))
    assert V == discrete(4)
    L, _ = lower_vietoris(discrete(2))
    assert is_coarser(L, V)
    with pytest.raises(ValueError):
        vietoris_finite_stone(sierpinski())


@pytest.mark.parametrize("name", ["filter-top", "lower-vietoris", "sobrification"])
def test_topological_monads_laws(name):
    assert check_monad_laws(topological_monad(name, max_points=2)).ok

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codensity.finalg import (
    CatalogError,
    canonical_label,
    check_algebra,
    double_dual_map,
    enumerate_catalog,
    extension,
    filters,
    find_isomorphism,
    free_algebra,
    free_module,
    from_meet_order,
    hom_to_subset,
    homs,
    homs_bruteforce,
    ideals,
    is_hom,
    lattice_orders_bruteforce,
    powerset_ba,
    powerset_jsl,
    powerset_msl,
    random_relation,
    read_catalog,
    rel_compose,
    rel_identity,
    rel_transpose,
    semiring,
    two,
    ultrafilters,
    vector_space,
    write_catalog,
)
from codensity.finalg.relations import graph


@pytest.mark.parametrize("name", ["bool", "z3", "chain3"])
def test_semirings_are_semirings(name):
    S = semiring(name)
    r = range(S.size)
    assert all(S.add[a][S.add[b][c]] == S.add[S.add[a][b]][c] for a in r for b in r for c in r)
    assert all(S.mul[a][S.add[b][c]] == S.add[S.mul[a][b]][S.mul[a][c]] for a in r for b in r for c in r)
    assert all(S.mul[S.zero][a] == S.zero and S.mul[S.one][a] == a for a in r)


@pytest.mark.parametrize("A", [powerset_ba(2), powerset_msl(3), powerset_jsl(2), two("dlat"), free_module(semiring("z3"), 2), vector_space(2, 2)])
def test_standard_algebras_satisfy_axioms(A):
    assert check_algebra(A) == []


def test_broken_table_is_reported():
    A = powerset_msl(2)
    meet = [list(row) for row in A.binary["meet"]]
    meet[1][2] = 1  # no longer commutative
    bad = type(A)("msl", A.size, A.consts, {}, {"meet": tuple(tuple(r) for r in meet)})
    assert check_algebra(bad)


def test_lattice_catalog_counts_match_bruteforce():
    # isomorphism classes of lattices of size n, from the brute-force order oracle
    for n in range(1, 5):
        labels = {canonical_label(from_meet_order(leq)) for leq in lattice_orders_bruteforce(n)}
        assert enumerate_catalog("msl", n).by_size()[n] == len(labels)


def test_catalog_counts():
    # frozen after the brute-force agreement above: lattices of size 1..6
    counts = enumerate_catalog("msl", 6).by_size()
    assert [counts[n] for n in range(1, 7)] == [1, 1, 1, 2, 5, 15]
    assert sorted(enumerate_catalog("ba", 16).by_size()) == [1, 2, 4, 8, 16]


def test_catalog_is_order_independent():
    a = enumerate_catalog("msl", 6)
    b = enumerate_catalog("msl", 6, order="shuffled", seed=7)
    assert a.labels == b.labels


def test_catalog_cap():
    with pytest.raises(CatalogError):
        enumerate_catalog("msl", 9)


def test_catalog_round_trip(tmp_path):
    cat = enumerate_catalog("jsl", 5)
    p = tmp_path / "jsl.json"
    write_catalog(cat, p)
    first = p.read_bytes()
    again = read_catalog(p)
    assert again.labels == cat.labels
    assert all(x == y for x, y in zip(again.representatives, cat.representatives))
    write_catalog(again, p)
    assert p.read_bytes() == first


def test_corrupt_catalog_rejected(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"schema": "codensity.catalog", "version": 1}')
    with pytest.raises((CatalogError, KeyError, ValueError)):
        read_catalog(p)


def test_locate_finds_representative():
    cat = enumerate_catalog("msl", 8)
    A = powerset_msl(3).relabel([3, 1, 4, 0, 7, 5, 2, 6])
    i, iso = cat.locate(A)
    assert cat.representatives[i].size == 8
    assert is_hom(A, cat.representatives[i], iso)


@pytest.mark.parametrize("kind,max_size", [("msl", 6), ("jsl", 6), ("ba", 8)])
def test_homs_into_two_match_bruteforce(kind, max_size):
    T = two(kind)
    for A in enumerate_catalog(kind, max_size).representatives:
        assert sorted(homs(A, T)) == sorted(homs_bruteforce(A, T))


def test_homs_general_match_bruteforce():
    for A in enumerate_catalog("msl", 4).representatives:
        for B in enumerate_catalog("msl", 4).representatives:
            assert sorted(homs(A, B)) == sorted(homs_bruteforce(A, B))


def test_filters_are_principal_in_finite_semilattices():
    for M in enumerate_catalog("msl", 6).representatives:
        fs = filters(M)
        assert len(fs) == M.size
        assert {hom_to_subset(h) for h in homs(M, two("msl"))} == set(fs)


def test_ideals_and_ultrafilters():
    for J in enumerate_catalog("jsl", 5).representatives:
        assert len(ideals(J)) == J.size
    for k in range(4):
        assert len(ultrafilters(powerset_ba(k))) == k


def test_free_algebra_extension():
    F = free_algebra("msl", 2)
    T = two("msl")
    for a in range(2):
        for b in range(2):
            h = F.extend(T, [a, b])
            assert h[F.insertion[0]] == a and h[F.insertion[1]] == b


def test_isomorphism_search():
    A = powerset_ba(2)
    assert find_isomorphism(A, A.relabel([2, 0, 3, 1])) is not None
    assert find_isomorphism(powerset_msl(2), two("msl")) is None


@pytest.mark.parametrize("dim", [0, 1, 2, 3])
def test_double_dual_bijective(dim):
    t = double_dual_map(vector_space(2, dim))
    assert sorted(t) == list(range(2**dim))


def test_gf4_double_dual():
    t = double_dual_map(vector_space(4, 1))
    assert sorted(t) == list(range(4))


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_relation_transpose_laws(seed):
    rng = random.Random(seed)
    a, b, c = (rng.randint(0, 4) for _ in range(3))
    f, g = random_relation(rng, a, b), random_relation(rng, b, c)
    assert rel_transpose(rel_transpose(f, b), a) == tuple(f)
    assert rel_transpose(rel_compose(g, f), c) == rel_compose(rel_transpose(f, b), rel_transpose(g, c))
    assert rel_compose(f, rel_identity(a)) == tuple(f)


def test_extension_of_graph_is_image():
    h = (1, 1, 0)
    ext = extension(graph(h), 3)
    assert ext[0b101] == 0b11
    assert ext[0] == 0

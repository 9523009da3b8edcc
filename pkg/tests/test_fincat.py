import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codensity.dualize import catalog_category
from codensity.fincat import (
    FinFunctor,
    SchemaError,
    check_dense,
    check_equivalence,
    comma_category,
    comma_under,
    discrete_category,
    from_json,
    full_subcategory,
    fully_faithful,
    generating_morphisms,
    identity_functor,
    monoid_category,
    opposite,
    poset_category,
    pseudo_inverse,
    to_json,
    validate,
)
from codensity.finalg import enumerate_catalog
from codensity.setdiag import set_category
from helpers import labelled_posets, poset_cat, walking_iso


def test_discrete_and_monoid_validate():
    assert validate(discrete_category(["x", "y", "z"])).ok
    # Z/2 as a one-object category
    assert validate(monoid_category(["e", "s"], [[0, 1], [1, 0]])).ok


def test_broken_monoid_reports_violation():
    # s.s = s but e is not a unit for s on the right
    bad = monoid_category(["e", "s"], [[0, 0], [1, 1]])
    rep = validate(bad)
    assert not rep.ok
    assert rep.lines()


def test_opposite_is_involutive_on_sets():
    C, _ = set_category(2)
    assert opposite(opposite(C)) == C
    assert validate(opposite(C)).ok


def test_json_round_trip():
    C, _ = set_category(2)
    doc = json.loads(json.dumps(to_json(C)))
    assert from_json(doc) == C
    F = identity_functor(C)
    assert from_json(to_json(F)) == F


def test_json_rejects_other_schema():
    C, _ = set_category(1)
    doc = to_json(C)
    doc["schema"] = "nope"
    with pytest.raises(SchemaError):
        from_json(doc)
    doc = to_json(C)
    doc["version"] = 99
    with pytest.raises(SchemaError):
        from_json(doc)


def test_walking_iso_skeleton_is_equivalence():
    C = walking_iso()
    assert validate(C).ok
    _, inc = full_subcategory(C, [0])
    rep = check_equivalence(inc)
    assert rep.is_equivalence
    inv = pseudo_inverse(inc, rep)
    assert validate(inv).ok


def test_non_full_inclusion_is_not_equivalence():
    C = walking_iso()
    D = discrete_category(["a", "b"])
    F = FinFunctor(D, C, (0, 1), (0, 1))
    rep = check_equivalence(F)
    assert rep.faithful and not rep.full


def test_comma_sizes_on_sets():
    # F = inclusion of sets <= 2 into itself, objects of F | 2 are maps a -> 2
    C, _ = set_category(2)
    F = identity_functor(C)
    assert len(comma_category(F, 2)) == 1 + 2 + 4
    # X | F at X = 1: maps 1 -> a
    assert len(comma_under(F, 1)) == 0 + 1 + 2


def test_generating_morphisms_generate():
    C, _ = set_category(3)
    gens = set(generating_morphisms(C))
    reach = set(gens) | set(C.identity)
    changed = True
    while changed:
        changed = False
        for g in list(reach):
            for f in list(reach):
                if C.cod[f] == C.dom[g]:
                    h = C.compose(g, f)
                    if h not in reach:
                        reach.add(h)
                        changed = True
    assert reach == set(range(C.n_morphisms))
    assert len(gens) < C.n_morphisms


@pytest.mark.parametrize("objs,dense", [([1], True), ([0], False), ([0, 1], True), ([2], True), ([0, 3], True)])
def test_set_density(objs, dense):
    C, _ = set_category(3)
    _, inc = full_subcategory(C, objs)
    assert fully_faithful(inc)
    assert check_dense(inc).dense is dense
    assert check_dense(inc, shortcut=False).dense is dense


@pytest.mark.parametrize("kind,max_size", [("ba", 8), ("msl", 4)])
def test_shortcut_agrees_with_direct(kind, max_size):
    cat = enumerate_catalog(kind, max_size)
    C = catalog_category(cat)
    for k in range(1, C.n_objects + 1):
        _, inc = full_subcategory(C, range(k))
        assert check_dense(inc).dense == check_dense(inc, shortcut=False).dense


def test_whole_category_is_dense():
    C, _ = set_category(2)
    assert check_dense(identity_functor(C)).dense


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_random_posets_validate(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    rel = rng.choice(labelled_posets(n))
    C = poset_cat(n, rel)
    assert validate(C).ok
    assert opposite(opposite(C)) == C
    assert C.n_morphisms == len(rel)


def test_poset_category_counts_arrows():
    C = poset_category(["0", "1", "2"], lambda a, b: a <= b)
    assert C.n_morphisms == 6

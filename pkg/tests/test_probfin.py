import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codensity.probfin import (
    Dist,
    FinAddMeasure,
    FinDistribution,
    characteristic,
    characteristic_embedding,
    check_distribution_laws,
    check_effect_hom,
    discrete_of,
    fault_evaluators,
    fmap,
    functional_of,
    measure_of,
    measure_of_functional,
    mult,
    point_mass,
    random_distribution,
    rat01,
    uniform,
    unit,
)


def test_rat01_is_exact():
    assert rat01("1/3") == Fraction(1, 3)
    with pytest.raises(TypeError):
        rat01(0.5)
    with pytest.raises(ValueError):
        rat01(Fraction(3, 2))


def test_dist_normalises_and_merges():
    d = Dist.of([("a", Fraction(1, 2)), ("b", Fraction(1, 4)), ("a", Fraction(1, 4))])
    assert d.weight("a") == Fraction(3, 4)
    with pytest.raises(ValueError):
        Dist.of([("a", Fraction(1, 2))])


def test_flattening_point_masses_gives_uniform():
    n = 3
    dd = Dist.of((point_mass(n, x).as_dist(), Fraction(1, n)) for x in range(n))
    assert mult(dd) == uniform(n).as_dist()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_distribution_monad_laws(n):
    rep = check_distribution_laws(n, samples=60)
    assert rep.ok, rep.failures


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=10**6))
def test_measure_round_trips(n, seed):
    d = random_distribution(random.Random(seed), n)
    p = measure_of(d)
    assert discrete_of(p) == d
    assert measure_of_functional(functional_of(p), n) == p


def test_non_additive_table_rejected():
    with pytest.raises(ValueError):
        FinAddMeasure(2, (0, Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)))


def test_expectation_is_linear_on_characteristics():
    p = measure_of(FinDistribution(3, (Fraction(1, 2), Fraction(1, 3), Fraction(1, 6))))
    f = functional_of(p)
    assert f(characteristic(3, 0b101)) == Fraction(2, 3)
    assert f((Fraction(1, 2),) * 3) == Fraction(1, 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_expectation_functionals_are_effect_module_homs(n):
    for seed in range(5):
        p = measure_of(random_distribution(random.Random(seed), n))
        assert check_effect_hom(functional_of(p), n, mode="module").ok


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_faults_are_caught(n):
    p = measure_of(random_distribution(random.Random(n), n))
    for name, bad in fault_evaluators(p).items():
        assert not check_effect_hom(bad, n, mode="module").ok, name


def test_boolean_source_measures_are_effect_algebra_homs():
    p = measure_of(FinDistribution(2, (Fraction(1, 3), Fraction(2, 3))))
    assert check_effect_hom(p.table, 2, mode="algebra", source="boolean").ok
    assert check_effect_hom(characteristic_embedding(2), 2, mode="algebra", source="boolean").ok


def test_probe_arguments_validated():
    p = measure_of(uniform(2))
    with pytest.raises(ValueError):
        check_effect_hom(functional_of(p), 2, budget=0)
    with pytest.raises(ValueError):
        check_effect_hom(p.table, 2, mode="module", source="boolean")


def test_fmap_pushes_forward():
    d = uniform(4).as_dist()
    assert fmap(lambda x: x % 2, d) == uniform(2).as_dist()
    assert mult(unit(d)) == d

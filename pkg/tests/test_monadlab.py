import pytest

from codensity.monad import UniverseClosureError, all_functions, check_monad_laws, identity_monad, powerset_monad, with_fault
from codensity.monadlab import (
    comparison_harness,
    filter_spec,
    identity_on,
    monad_from_dual_adjunction,
    monad_isomorphism,
    preset,
    ultrafilter_spec,
)


def test_identity_and_powerset_laws():
    assert check_monad_laws(identity_monad(3)).ok
    assert check_monad_laws(powerset_monad(2)).ok


@pytest.mark.parametrize("n,size", [(0, 1), (1, 2), (2, 4), (3, 8)])
def test_filter_cardinality(n, size):
    M = preset("filter", 3)
    assert M.size(M.obj(n)) == size


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_ultrafilter_is_identity_sized(n):
    M = preset("ultrafilter", 3)
    assert M.size(M.obj(n)) == n
    assert sorted(M.unit(n)) == list(range(n))


@pytest.mark.parametrize("semiring,q", [("bool", 2), ("z3", 3), ("chain3", 3)])
def test_measure_cardinality(semiring, q):
    M = preset("m_s", 2, semiring_name=semiring)
    assert [M.size(M.obj(n)) for n in range(3)] == [q**n for n in range(3)]


def test_neighbourhood_cardinality():
    M = preset("neighbourhood", 2)
    assert [M.size(M.obj(n)) for n in range(3)] == [2, 4, 16]


@pytest.mark.parametrize("name", ["filter", "ultrafilter", "vietoris-finite"])
def test_set_presets_satisfy_laws(name):
    rep = check_monad_laws(preset(name, 2))
    assert rep.ok, rep.failures


def test_vietoris_finite_is_powerset():
    assert monad_isomorphism(preset("vietoris-finite", 2), powerset_monad(2)) is not None
    # on finite sets every filter is principal, so the filter monad is powerset as well
    assert monad_isomorphism(preset("filter", 2), powerset_monad(2)) is not None
    assert monad_isomorphism(preset("ultrafilter", 2), powerset_monad(2)) is None


def test_fault_injection_breaks_laws():
    M = preset("filter", 2)
    bad = with_fault(M, 1, 0, 1, which="mult")
    assert not check_monad_laws(bad).ok
    bad_unit = with_fault(M, 1, 0, 1 - M.unit(1)[0], which="unit")
    assert not check_monad_laws(bad_unit).ok


def test_guard_refuses_huge_carriers():
    M = preset("neighbourhood", 3)
    with pytest.raises(UniverseClosureError):
        M.mult(2)


def test_triangle_identities_for_set_presets():
    for spec in (filter_spec(), ultrafilter_spec()):
        M = monad_from_dual_adjunction(spec, [0, 1, 2])
        A, _, _ = spec.L(2)
        assert spec.triangle_identities([0, 1, 2], [A]) == []


def test_double_dual_presets_are_identity():
    for name in ("msl-double-dual", "vect-double-dual"):
        M = preset(name, 1)
        assert check_monad_laws(M).ok
        from codensity.finalg import homs

        ident = identity_on(M.universe, lambda X, Y: homs(X, Y))
        assert monad_isomorphism(M, ident) is not None


def test_comparison_for_measure_bundle():
    from codensity.dualize import measure_bundle

    b = measure_bundle("bool", 2)
    for n in range(3):
        rep = comparison_harness(b, n, 2)
        assert rep.ok
        assert rep.monad_size == 2**n


def test_expectation_preset_refused():
    with pytest.raises(ValueError):
        preset("expectation-finite", 1)
    with pytest.raises(KeyError):
        preset("nonsense", 1)


def test_all_functions_count():
    assert len(all_functions(3, 2)) == 8
    assert all_functions(0, 0) == [()]

import pytest

from codensity.dualize import (
    atoms,
    birkhoff,
    corrupt_square,
    filter_bundle,
    filter_kleisli_bundle,
    measure_bundle,
    msl_self_duality,
    rel_self_duality,
    triangle_identities,
    ultrafilter_bundle,
    verify_setting,
)
from codensity.fincat import check_equivalence, validate
from codensity.finalg import enumerate_catalog, powerset_ba
from codensity.monadlab import comparison_harness


def test_atoms_of_powerset():
    assert sorted(atoms(powerset_ba(3))) == [1, 2, 4]
    assert atoms(powerset_ba(0)) == []


def test_birkhoff_is_duality():
    d = birkhoff(max_size=8)
    assert validate(d.forward).ok and validate(d.backward).ok
    assert check_equivalence(d.forward).is_equivalence
    assert triangle_identities(d) == []


def test_msl_self_duality_small():
    d = msl_self_duality(max_size=4)
    assert check_equivalence(d.forward).is_equivalence
    assert triangle_identities(d) == []


def test_relation_self_duality():
    d = rel_self_duality(2)
    assert check_equivalence(d.forward).is_equivalence
    assert triangle_identities(d) == []


@pytest.mark.parametrize(
    "make",
    [
        lambda: filter_bundle(4),
        lambda: filter_kleisli_bundle(2),
        lambda: measure_bundle("bool", 2),
        lambda: ultrafilter_bundle(3, 16),
    ],
    ids=["filter4", "filter-kleisli", "m_s", "ultrafilter"],
)
def test_settings_verify_and_compare(make):
    b = make()
    rep = verify_setting(b)
    assert rep.ok, rep.as_dict()
    for n in (0, 1, 2):
        cmp = comparison_harness(b, n, max(b.levels))
        assert cmp.ok, cmp.as_dict()


def test_too_small_ultrafilter_fragment_is_not_dense():
    # Boolean algebras up to size 4 are not dense among those up to size 8
    rep = verify_setting(ultrafilter_bundle(2, 8, carriers=(0, 1, 2)))
    assert rep.verdicts["density"] is False
    assert rep.verdicts["square"] and rep.verdicts["equivalence"]


def test_corrupted_square_is_caught():
    b = corrupt_square(measure_bundle("bool", 2))
    rep = verify_setting(b)
    assert rep.verdicts["square"] is False
    assert rep.square


def test_bundle_rejects_wrong_catalog():
    with pytest.raises(ValueError):
        filter_bundle(cat=enumerate_catalog("ba", 4))
    with pytest.raises(ValueError):
        ultrafilter_bundle(cat=enumerate_catalog("msl", 4))


def test_report_is_plain_data():
    import json

    rep = verify_setting(measure_bundle("bool", 1, carriers=(0, 1)))
    text = json.dumps(rep.as_dict(), sort_keys=True)
    assert json.loads(text)["verdicts"]["adjunction"] is True

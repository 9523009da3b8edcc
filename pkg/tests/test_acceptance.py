"""Acceptance criteria 1-8, each reported as one PASS/FAIL line."""

import itertools
import json
import random
import time

import pytest

from codensity import dualize
from codensity.cli import RunConfig, compute_report, run_verify
from codensity.fincat import check_equivalence
from codensity.finalg import double_dual_map, enumerate_catalog, random_relation, rel_compose, rel_transpose, vector_space, write_catalog
from codensity.fintop import (
    all_topologies,
    complete_ideals,
    continuous_maps,
    homeomorphic,
    lower_vietoris_representation,
    opens_algebra,
    preorder_count,
    sierpinski,
    sobrification,
    t0_quotient,
    topological_monad,
)
from codensity.monad import check_monad_laws, identity_monad, powerset_monad
from codensity.monadlab import comparison_harness, identity_on, monad_isomorphism, preset
from codensity.probfin import (
    check_distribution_laws,
    check_effect_hom,
    discrete_of,
    fault_evaluators,
    functional_of,
    measure_of,
    measure_of_functional,
    random_distribution,
)
from codensity.setdiag import (
    codensity_at,
    codensity_monad,
    colimit,
    colimit_oracle,
    corepresentable_presheaf,
    idempotent_diagram,
    is_natural,
    isbell_conjugates,
    limit,
    limit_oracle,
    random_diagram,
    representable,
    set_category,
    set_fragment,
)
from helpers import poset_cat, posets_up_to_iso

RESULTS: list[str] = []


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_1_filter_setting():
    t0 = time.perf_counter()
    b = dualize.filter_bundle(6, carriers=(0, 1, 2))
    rep = dualize.verify_setting(b)
    cmps = [comparison_harness(b, n, max(b.levels)) for n in range(3)]
    elapsed = time.perf_counter() - t0
    ok = rep.ok and all(c.first_bijective is not None and c.unit_preserved and c.mult_preserved for c in cmps) and elapsed <= 300
    detail = f"verdicts {rep.verdicts}, bijective at levels {[c.first_bijective for c in cmps]}, {elapsed:.0f}s"
    record(1, ok, detail)


def test_criterion_2_ultrafilter_degeneration():
    frag = set_fragment(3)
    sizes, units = [], []
    for n in range(4):
        v = codensity_at(frag, n)
        sizes.append(len(v))
        units.append(sorted(v.unit) == list(range(len(v))))
    _, U = set_category(3)
    laws = check_monad_laws(codensity_monad(U, [0, 1, 2, 3]))
    ok = sizes == [0, 1, 2, 3] and all(units) and laws.ok and not laws.skipped
    record(2, ok, f"apex sizes {sizes}, laws checked {sum(laws.checked.values())}")


def test_criterion_3_cardinalities():
    rows = []
    checks = [
        ("filter", {}, lambda n: 2**n),
        ("neighbourhood", {}, lambda n: 2 ** (2**n)),
        ("vietoris-finite", {}, lambda n: 2**n),
        ("m_s", {"semiring_name": "bool"}, lambda n: 2**n),
        ("m_s", {"semiring_name": "z3"}, lambda n: 3**n),
        ("m_s", {"semiring_name": "chain3"}, lambda n: 3**n),
    ]
    ok = True
    for name, kw, expect in checks:
        M = preset(name, 3, **kw)
        got = [M.size(M.obj(n)) for n in range(4)]
        ok &= got == [expect(n) for n in range(4)]
        rows.append(f"{name}{kw.get('semiring_name', '')}={got}")
    iso = monad_isomorphism(preset("vietoris-finite", 3), powerset_monad(3))
    ok &= iso is not None
    record(3, ok, "; ".join(rows) + f"; vietoris iso powerset: {iso is not None}")


def test_criterion_4_dualities():
    b = dualize.birkhoff(max_size=16)
    birk = check_equivalence(b.forward).is_equivalence and check_equivalence(b.backward).is_equivalence and not dualize.triangle_identities(b)
    m = dualize.msl_self_duality(max_size=6)
    msl = check_equivalence(m.forward).is_equivalence and not dualize.triangle_identities(m)
    rng = random.Random(0)
    bad = 0
    for _ in range(200):
        a, c, e = (rng.randint(0, 4) for _ in range(3))
        f, g = random_relation(rng, a, c), random_relation(rng, c, e)
        bad += rel_transpose(rel_transpose(f, c), a) != tuple(f)
        bad += rel_transpose(rel_compose(g, f), e) != rel_compose(rel_transpose(f, c), rel_transpose(g, e))
    vect = all(sorted(double_dual_map(vector_space(2, d))) == list(range(2**d)) for d in range(4))
    ok = birk and msl and bad == 0 and vect
    record(4, ok, f"birkhoff {birk}, msl {msl} on {m.forward.source.n_objects} objects, relation failures {bad}, vect {vect}")


def test_criterion_5_topology():
    spaces = all_topologies(3)
    count_ok = len(spaces) == preorder_count(3) == 29
    sob = idem = lv = sier = 0
    for X in spaces:
        S, _ = sobrification(X)
        sob += homeomorphic(S, t0_quotient(X)[0])
        idem += homeomorphic(sobrification(S)[0], S)
        rep = lower_vietoris_representation(X)
        lv += sorted(rep.values()) == sorted(complete_ideals(opens_algebra(X, "jsl")))
        sier += len(continuous_maps(X, sierpinski())) == len(X.opens)
    n = len(spaces)
    ok = count_ok and sob == idem == lv == sier == n
    record(5, ok, f"{n} topologies; sober=T0 {sob}, idempotent {idem}, lower Vietoris {lv}, Sierpinski {sier}")


def test_criterion_6_probability():
    trips = homs_ok = faults_caught = faults_total = 0
    for n in range(1, 5):
        rng = random.Random(100 + n)
        for _ in range(100):
            d = random_distribution(rng, n)
            p = measure_of(d)
            trips += discrete_of(p) == d and measure_of_functional(functional_of(p), n) == p
            homs_ok += check_effect_hom(functional_of(p), n, mode="module").ok
        for bad in fault_evaluators(measure_of(random_distribution(rng, n))).values():
            faults_total += 1
            faults_caught += not check_effect_hom(bad, n, mode="module").ok
    laws = all(check_distribution_laws(n, samples=50).ok for n in range(1, 5))
    ok = trips == 400 and homs_ok == 400 and faults_caught == faults_total == 12 and laws
    record(6, ok, f"round trips {trips}/400, functionals {homs_ok}/400, faults caught {faults_caught}/{faults_total}")


def _yoneda_iso(C, D, O):
    # O(yD)(c) -> C(D, c): evaluate at the identity of D
    pos = O.variables.index((D, C.local_index(C.identity[D])))
    comps = [tuple(fam[pos] for fam in O.elements[c]) for c in range(C.n_objects)]
    rep = representable(C, D)
    bij = all(sorted(comps[c]) == list(range(rep.sizes[c])) for c in range(C.n_objects))
    return bij and O.diagram.sizes == rep.sizes and is_natural(O.diagram, rep, comps)


def test_criterion_7_isbell():
    total = good = 0
    for n in range(5):
        for rel in posets_up_to_iso(n):
            C = poset_cat(n, rel)
            for D in range(C.n_objects):
                X = corepresentable_presheaf(C, D)
                O, S, unit = isbell_conjugates(C, X)
                iso_unit = all(sorted(u) == list(range(S.diagram.sizes[c])) for c, u in enumerate(unit))
                total += 1
                good += _yoneda_iso(C, D, O) and iso_unit and is_natural(X, S.diagram, unit)
    record(7, good == total and total > 0, f"{good}/{total} representables over 25 posets")


def _all_monads():
    yield identity_monad(3)
    yield powerset_monad(2)
    for name in ("ultrafilter", "filter", "vietoris-finite"):
        yield preset(name, 3)
    yield preset("neighbourhood", 2)
    for s in ("bool", "z3", "chain3"):
        yield preset("m_s", 2, semiring_name=s)
    yield preset("msl-double-dual", 2)
    yield preset("vect-double-dual", 2)
    for name in ("filter-top", "lower-vietoris", "sobrification"):
        yield topological_monad(name, max_points=3)
    _, U = set_category(3)
    yield codensity_monad(U, [0, 1, 2, 3])


def test_criterion_8_oracles_laws_reproducibility(tmp_path):
    rng = random.Random(8)
    diagrams = [random_diagram(rng, max_objects=6, max_size=4, max_arrows=7) for _ in range(400)]
    for k in range(5):
        for t in itertools.product(range(k), repeat=k):
            if tuple(t[x] for x in t) == t:
                diagrams.append(idempotent_diagram(t))
    diagrams.append(set_category(3)[1])
    agree = sum(list(limit(D).apex) == sorted(limit_oracle(D)) and colimit(D).classes == colimit_oracle(D).classes for D in diagrams)
    laws = {}
    for M in _all_monads():
        r = check_monad_laws(M)
        laws[M.name] = r.ok
    laws["distribution"] = check_distribution_laws(3, samples=40).ok
    blobs = []
    for _ in range(2):
        rep, _ = run_verify(RunConfig(bundle="m_s", max_carrier=2, seed=5))
        comp = compute_report("filter", 3)
        blobs.append(json.dumps(rep, sort_keys=True) + json.dumps(comp, sort_keys=True))
    cat_bytes = []
    for name in ("a.json", "b.json"):
        write_catalog(enumerate_catalog("msl", 6), tmp_path / name)
        cat_bytes.append((tmp_path / name).read_bytes())
    repro = blobs[0] == blobs[1] and cat_bytes[0] == cat_bytes[1]
    ok = agree == len(diagrams) and all(laws.values()) and repro
    failed = [k for k, v in laws.items() if not v]
    record(8, ok, f"oracle agreement {agree}/{len(diagrams)}, {len(laws)} monads lawful except {failed}, reproducible {repro}")

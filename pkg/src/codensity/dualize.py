"""Finite dualities as equivalences of materialised categories, and setting bundles.

A bundle packages the top functor ``F: C0 -> Set``, the duality
``E: C0 -> D0^op``, the dense inclusion ``G: D0 -> D``, the dual adjunction
and the square isomorphism ``psi: R G E => F``; :func:`verify_setting`
checks the four conditions independently.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from .fincat import (
    FinCategory,
    FinFunctor,
    NatTransformation,
    check_dense,
    check_equivalence,
    opposite,
    validate,
)
from .finalg import (
    AlgebraCatalog,
    FinAlgebra,
    enumerate_catalog,
    extension,
    find_isomorphism,
    free_module,
    hom_algebra,
    homs,
    powerset_ba,
    powerset_msl,
    rel_compose,
    rel_kleisli_category,
    rel_transpose,
    semiring,
    two,
)
from .finalg.catalog import canonical_label
from .monad import Table, compose_tables
from .monadlab import DualAdjunctionSpec, filter_spec, measure_spec, ultrafilter_spec
from .setdiag import Fragment, SetValuedFunctor, set_category


def algebra_category(algebras: Sequence[FinAlgebra], names: Sequence[str]) -> FinCategory:
    """All homomorphisms between the given algebras; morphism data are the hom tables."""
    hs = {(i, j): homs(A, B) for i, A in enumerate(algebras) for j, B in enumerate(algebras)}
    return FinCategory.of_function_tables(names, [A.size for A in algebras], hs)


def catalog_category(cat: AlgebraCatalog) -> FinCategory:
    return algebra_category(cat.representatives, cat.names())


def mor_id(C: FinCategory, a: int, b: int, table: Sequence[int]) -> int:
    table = tuple(table)
    for m in C.hom(a, b):
        if C.data[m] == table:
            return m
    raise KeyError(f"no morphism {C.objects[a]} -> {C.objects[b]} with the given table")


def invert(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for x, y in enumerate(perm):
        inv[y] = x
    return tuple(inv)


@dataclass(eq=False)
class DualityFunctor:
    """An equivalence ``forward: C -> D`` with ``backward: D -> C``, unit and counit."""

    name: str
    forward: FinFunctor
    backward: FinFunctor
    unit: NatTransformation  # Id_C => backward . forward
    counit: NatTransformation  # forward . backward => Id_D


def triangle_identities(d: DualityFunctor) -> list[str]:
    F, G = d.forward, d.backward
    C, D = F.source, F.target
    bad = []
    for a in range(C.n_objects):
        # eps_{F a} . F(eta_a) = id_{F a}
        m = D.compose(d.counit.components[F.obj_map[a]], F.mor_map[d.unit.components[a]])
        if m != D.identity[F.obj_map[a]]:
            bad.append(f"{d.name}: counit . F(unit) is not the identity at {C.objects[a]}")
    for b in range(D.n_objects):
        m = C.compose(G.mor_map[d.counit.components[b]], d.unit.components[G.obj_map[b]])
        if m != C.identity[G.obj_map[b]]:
            bad.append(f"{d.name}: G(counit) . unit G is not the identity at {D.objects[b]}")
    return bad


def _functor_with_nats(C, D, obj_map, mor_map, back_obj, back_mor, unit_comp, counit_comp, name):
    F = FinFunctor(C, D, obj_map, mor_map)
    G = FinFunctor(D, C, back_obj, back_mor)
    from .fincat import compose_functors, identity_functor

    unit = NatTransformation(identity_functor(C), compose_functors(G, F), unit_comp)
    counit = NatTransformation(compose_functors(F, G), identity_functor(D), counit_comp)
    return DualityFunctor(name, F, G, unit, counit)


# Birkhoff duality for finite Boolean algebras


def atoms(B: FinAlgebra) -> list[int]:
    bot = B.consts["bottom"]
    return [x for x in range(B.size) if x != bot and all(y in (x, bot) for y in range(B.size) if B.leq(y, x))]


def birkhoff(cat: AlgebraCatalog | None = None, max_size: int = 16) -> DualityFunctor:
    """Boolean algebras ``->`` finite sets (opposite), by atoms; back by powersets."""
    cat = cat or enumerate_catalog("ba", max_size)
    B = catalog_category(cat)
    reps = cat.representatives
    atom_lists = [atoms(A) for A in reps]
    n_max = max(len(a) for a in atom_lists)
    S, _ = set_category(n_max)
    Sop = opposite(S)
    size_to_obj = {len(a): i for i, a in enumerate(atom_lists)}
    # isos theta_i: powerset_ba(k) -> rep_i
    theta = [find_isomorphism(powerset_ba(len(a)), A) for a, A in zip(atom_lists, reps)]
    obj_map = [len(a) for a in atom_lists]  # set object index = size
    mor_map = []
    for m in range(B.n_morphisms):
        i, j = B.dom[m], B.cod[m]
        h = B.data[m]
        # atom b of rep_j goes to the unique atom a of rep_i with b <= h(a)
        fn = []
        for b in atom_lists[j]:
            (a,) = [k for k, a in enumerate(atom_lists[i]) if reps[j].leq(b, h[a])]
            fn.append(a)
        mor_map.append(mor_id(S, obj_map[j], obj_map[i], fn))
    back_obj = [size_to_obj[n] for n in range(n_max + 1)]
    back_mor = []
    for m in range(S.n_morphisms):
        # g: p -> q in Set is a morphism q -> p in Set^op, sent to the preimage 2^q -> 2^p
        p, q = S.dom[m], S.cod[m]
        g = S.data[m]
        i, j = back_obj[q], back_obj[p]
        ti, tj = invert(theta[i]), theta[j]
        pre = []
        for x in range(reps[i].size):
            s = ti[x]
            pre.append(tj[sum(1 << y for y in range(p) if s >> g[y] & 1)])
        back_mor.append(mor_id(B, i, j, pre))
    unit_comp = []
    for i, A in enumerate(reps):
        # x |-> theta(set of atoms below x); rep_i is its own double image
        tab = []
        for x in range(A.size):
            s = sum(1 << k for k, a in enumerate(atom_lists[i]) if A.leq(a, x))
            tab.append(theta[i][s])
        unit_comp.append(mor_id(B, i, back_obj[obj_map[i]], tab))
    counit_comp = []
    for n in range(n_max + 1):
        i = back_obj[n]
        # atoms of rep_i correspond to singletons of 2^n; counit in Set^op is a function n -> atoms
        fn = [atom_lists[i].index(theta[i][1 << x]) for x in range(n)]
        counit_comp.append(mor_id(S, n, obj_map[i], fn))
    return _functor_with_nats(B, Sop, obj_map, mor_map, back_obj, back_mor, unit_comp, counit_comp, "birkhoff")


# self-duality of finite meet-semilattices


@dataclass(eq=False)
class MSLDual:
    """Per catalog entry: the filter algebra, the iso onto its representative, and evaluation."""

    index: int
    filters: list[Table]  # homs(M, 2)
    target: int  # catalog index of the representative
    iso: Table  # filter algebra -> representative


def msl_duals(cat: AlgebraCatalog) -> list[MSLDual]:
    out = []
    for i, M in enumerate(cat.representatives):
        FA, hs = hom_algebra(M, two("msl"))
        j, iso = cat.locate(FA)
        out.append(MSLDual(i, hs, j, iso))
    return out


def msl_self_duality(cat: AlgebraCatalog | None = None, max_size: int = 6) -> DualityFunctor:
    """``M |-> MSL(M, 2)`` with pointwise meet (filter intersection) and top the whole of ``M``."""
    cat = cat or enumerate_catalog("msl", max_size)
    C = catalog_category(cat)
    Cop = opposite(C)
    duals = msl_duals(cat)
    obj_map = [d.target for d in duals]
    mor_map = []
    for m in range(C.n_morphisms):
        i, j = C.dom[m], C.cod[m]
        h = C.data[m]
        di, dj = duals[i], duals[j]
        where_i = {f: k for k, f in enumerate(di.filters)}
        inv_j = invert(dj.iso)
        # E(h): rep(E M_j) -> rep(E M_i), phi |-> phi . h
        tab = []
        for y in range(len(dj.filters)):
            phi = dj.filters[inv_j[y]]
            tab.append(di.iso[where_i[tuple(phi[h[x]] for x in range(len(h)))]])
        mor_map.append(mor_id(C, dj.target, di.target, tab))
    unit_comp = []
    for i, M in enumerate(cat.representatives):
        d1 = duals[i]
        d2 = duals[d1.target]
        inv1 = invert(d1.iso)
        where2 = {f: k for k, f in enumerate(d2.filters)}
        tab = []
        for x in range(M.size):
            ev = tuple(d1.filters[inv1[y]][x] for y in range(len(d1.filters)))
            tab.append(d2.iso[where2[ev]])
        unit_comp.append(mor_id(C, i, d2.target, tab))
    # counit at M in C^op is a C-morphism M -> E E M: again evaluation
    counit_comp = list(unit_comp)
    return _functor_with_nats(C, Cop, obj_map, mor_map, obj_map, mor_map, unit_comp, counit_comp, "msl-self-duality")


# self-duality of finite relations


def rel_self_duality(bound: int = 3) -> DualityFunctor:
    if bound > 4:
        raise ValueError("relation categories above size 4 are not materialised")
    R = rel_kleisli_category(bound)
    Rop = opposite(R)
    sizes = [int(o) for o in R.objects]
    mor_map = []
    for m in range(R.n_morphisms):
        a, b = R.dom[m], R.cod[m]
        mor_map.append(mor_id(R, b, a, rel_transpose(R.data[m], sizes[b])))
    ids = [R.identity[a] for a in range(R.n_objects)]
    objs = list(range(R.n_objects))
    return _functor_with_nats(R, Rop, objs, mor_map, objs, mor_map, ids, ids, "relation-transpose")


# bundles


@dataclass(eq=False)
class CodensitySettingBundle:
    name: str
    F: SetValuedFunctor  # on C0
    E: FinFunctor  # C0 -> D0^op
    G: FinFunctor  # D0 -> D
    D_algebras: list[FinAlgebra]
    adjunction: DualAdjunctionSpec
    square: list[Table]  # per C0 object: homs(G E c, T) index -> F c element
    level_of: list[int]  # per C0 object, its size for truncation
    levels: list[int]
    carriers: list = field(default_factory=lambda: [0, 1, 2])

    def __post_init__(self):
        self._square_cache: dict = {}

    @property
    def C0(self) -> FinCategory:
        return self.F.index

    def GE(self, c: int) -> int:
        return self.G.obj_map[self.E.obj_map[c]]

    def square_data(self, c: int):
        if c not in self._square_cache:
            A = self.D_algebras[self.GE(c)]
            hs, where = self.adjunction.R(A)
            psi = self.square[c]
            psi_inv = {v: k for k, v in enumerate(psi)}
            self._square_cache[c] = (A, hs, where, psi, psi_inv)
        return self._square_cache[c]

    def fragment(self, k: int) -> Fragment:
        full = Fragment.of_functor(self.F)
        return full.restrict([c for c in range(self.C0.n_objects) if self.level_of[c] <= k])

    def with_square(self, square: list[Table]) -> "CodensitySettingBundle":
        return CodensitySettingBundle(
            self.name, self.F, self.E, self.G, self.D_algebras, self.adjunction, square, self.level_of, self.levels, self.carriers
        )


@dataclass
class SettingReport:
    bundle: str
    adjunction: list[str]
    equivalence: list[str]
    density: list[str]
    square: list[str]
    skipped: list[str] = field(default_factory=list)

    @property
    def verdicts(self) -> dict[str, bool]:
        return {
            "adjunction": not self.adjunction,
            "equivalence": not self.equivalence,
            "density": not self.density,
            "square": not self.square,
        }

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def as_dict(self) -> dict:
        return {
            "bundle": self.bundle,
            "verdicts": self.verdicts,
            "witnesses": {
                "adjunction": self.adjunction[:20],
                "equivalence": self.equivalence[:20],
                "density": self.density[:20],
                "square": self.square[:20],
            },
            "skipped": self.skipped,
        }


def check_square(b: CodensitySettingBundle) -> list[str]:
    """Componentwise bijectivity and naturality of ``psi: R G E => F``."""
    bad = []
    C0, D0, D = b.C0, b.G.source, b.G.target
    for c in range(C0.n_objects):
        A, hs, where, psi, _ = b.square_data(c)
        if len(psi) != len(hs) or sorted(psi) != list(range(b.F.sizes[c])):
            bad.append(f"square component at {C0.objects[c]} is not a bijection")
    if bad:
        return bad
    for h in range(C0.n_morphisms):
        c, c2 = C0.dom[h], C0.cod[h]
        k = b.E.mor_map[h]  # in D0: E c2 -> E c
        gk = D.data[b.G.mor_map[k]]
        _, hs, _, psi, _ = b.square_data(c)
        _, hs2, where2, psi2, _ = b.square_data(c2)
        Fh = b.F.action[h]
        for i, phi in enumerate(hs):
            pulled = where2[tuple(phi[gk[y]] for y in range(len(gk)))]
            if Fh[psi[i]] != psi2[pulled]:
                bad.append(f"square not natural along {C0.mor_names[h]} at element {i}")
                break
    return bad


def verify_setting(b: CodensitySettingBundle, density: bool = True) -> SettingReport:
    C0, D0 = b.C0, b.G.source
    if b.E.source != C0:
        raise ValueError("E does not start at the source of F")
    if b.E.target.objects != D0.objects or b.E.target.n_morphisms != D0.n_morphisms:
        raise ValueError("E does not land in the opposite of the source of G")
    if len(b.D_algebras) != b.G.target.n_objects:
        raise ValueError("one algebra per object of D is required")
    skipped: list[str] = []
    adj = b.adjunction.triangle_identities(b.carriers, b.D_algebras, skipped)
    for ent in (b.E, b.G):
        r = validate(ent)
        adj_or = [f"functor invalid: {l}" for l in r.lines()]
        if adj_or:
            return SettingReport(b.name, adj, adj_or, [], [])
    eq = check_equivalence(b.E)
    dens = check_dense(b.G) if density else None
    return SettingReport(
        b.name,
        adj,
        list(eq.witnesses) if not eq.is_equivalence else [],
        (list(dens.failures) or ["not dense"]) if dens is not None and not dens.dense else [],
        check_square(b),
        skipped,
    )


def _fragment_from_category(C: FinCategory, sizes: Sequence[int]) -> SetValuedFunctor:
    return SetValuedFunctor(C, tuple(sizes), tuple(C.data))


def filter_bundle(
    max_size: int = 6, extra: Sequence[FinAlgebra] = (), carriers=(0, 1, 2), cat: AlgebraCatalog | None = None
) -> CodensitySettingBundle:
    """Forgetful functor on the finite meet-semilattice catalog, with its self-duality."""
    cat = cat or enumerate_catalog("msl", max_size)
    if cat.kind != "msl":
        raise ValueError(f"the filter bundle needs a meet-semilattice catalog, not {cat.kind}")
    max_size = cat.max_size
    duality = msl_self_duality(cat)
    C0 = duality.forward.source
    F = _fragment_from_category(C0, [A.size for A in cat.representatives])
    D_algs = list(cat.representatives) + list(extra or [powerset_msl(3)])
    names = cat.names() + [f"extra{i}" for i in range(len(D_algs) - len(cat.representatives))]
    D = algebra_category(D_algs, names)
    G = FinFunctor(C0, D, tuple(range(C0.n_objects)), tuple(range(C0.n_morphisms)))
    # inclusion: D's first block of objects is C0, and morphism ids agree on that block
    mor = []
    for m in range(C0.n_morphisms):
        mor.append(mor_id(D, C0.dom[m], C0.cod[m], C0.data[m]))
    G = FinFunctor(C0, D, tuple(range(C0.n_objects)), tuple(mor))
    duals = msl_duals(cat)
    spec = filter_spec()
    square = []
    for c, M in enumerate(cat.representatives):
        d = duals[c]
        A = D_algs[d.target]
        hs, where = spec.R(A)
        inv = invert(d.iso)
        psi = [None] * len(hs)
        for x in range(M.size):
            # evaluation at x, moved onto the representative of the filter algebra
            ev = tuple(d.filters[inv[y]][x] for y in range(A.size))
            psi[where[ev]] = x
        square.append(tuple(psi))
    return CodensitySettingBundle(
        "filter",
        F,
        duality.forward,
        G,
        D_algs,
        spec,
        square,
        [A.size for A in cat.representatives],
        list(range(1, max_size + 1)),
        list(carriers),
    )


def ultrafilter_bundle(
    max_set: int = 3, max_ba: int = 16, carriers=(0, 1, 2, 3), cat: AlgebraCatalog | None = None
) -> CodensitySettingBundle:
    """Finite sets, Boolean algebras by powerset, and the ultrafilter dual adjunction."""
    C0, F = set_category(max_set)
    cat = cat or enumerate_catalog("ba", max_ba)
    if cat.kind != "ba":
        raise ValueError(f"the ultrafilter bundle needs a Boolean algebra catalog, not {cat.kind}")
    d = birkhoff(cat)
    # D0: Boolean algebras of size <= 2^max_set, D: the whole catalog
    d0_objs = [i for i, A in enumerate(cat.representatives) if A.size <= 1 << max_set]
    from .fincat import full_subcategory

    D = d.forward.source
    D0, G = full_subcategory(D, d0_objs)
    D0op = opposite(D0)
    back = d.backward  # Set^op -> BA; restricted to sets <= max_set gives E
    pos = {o: i for i, o in enumerate(d0_objs)}
    obj_map, mor_map = [], []
    Sfull = back.source
    for n in range(C0.n_objects):
        obj_map.append(pos[back.obj_map[n]])
    G_inv = {m: i for i, m in enumerate(G.mor_map)}
    for m in range(C0.n_morphisms):
        p, q = C0.dom[m], C0.cod[m]
        sm = mor_id(Sfull, q, p, C0.data[m])
        mor_map.append(G_inv[back.mor_map[sm]])
    E = FinFunctor(C0, D0op, tuple(obj_map), tuple(mor_map))
    spec = ultrafilter_spec()
    reps = cat.representatives
    square = []
    for n in range(C0.n_objects):
        i = back.obj_map[n]
        A = reps[i]
        theta = find_isomorphism(powerset_ba(n), A)
        hs, where = spec.R(A)
        tinv = invert(theta)
        psi = [None] * len(hs)
        for x in range(n):
            ev = tuple(int(tinv[y] >> x & 1) for y in range(A.size))
            psi[where[ev]] = x
        square.append(tuple(psi))
    return CodensitySettingBundle(
        "ultrafilter",
        F,
        E,
        G,
        list(reps),
        spec,
        square,
        list(range(max_set + 1)),
        list(range(0, max_set + 1)),
        list(carriers),
    )


def filter_kleisli_bundle(bound: int = 3, extra_max: int = 4, carriers=(0, 1, 2)) -> CodensitySettingBundle:
    """Finite relations with union-extensions into meet-semilattices ``(P X, union, empty)``."""
    dual = rel_self_duality(bound)
    R = dual.forward.source
    sizes = [int(o) for o in R.objects]
    F = SetValuedFunctor(R, tuple(1 << n for n in sizes), tuple(extension(R.data[m], sizes[R.dom[m]]) for m in range(R.n_morphisms)))
    free = [powerset_msl(n, meet="or") for n in sizes]
    extra = list(enumerate_catalog("msl", extra_max).representatives)
    D_algs = free + extra
    D = algebra_category(D_algs, [f"P{n}" for n in sizes] + [f"msl{A.size}.{i}" for i, A in enumerate(extra)])
    mor = [mor_id(D, R.dom[m], R.cod[m], F.action[m]) for m in range(R.n_morphisms)]
    G = FinFunctor(R, D, tuple(range(R.n_objects)), tuple(mor))
    spec = filter_spec()
    square = []
    for n in sizes:
        A = D_algs[n]
        hs, where = spec.R(A)
        psi = [None] * len(hs)
        for S in range(1 << n):
            chi = tuple(int(a & S == 0) for a in range(1 << n))
            psi[where[chi]] = S
        square.append(tuple(psi))
    return CodensitySettingBundle(
        "filter-kleisli", F, dual.forward, G, D_algs, spec, square, sizes, list(range(0, bound + 1)), list(carriers)
    )


def _kleisli_semiring_category(S, bound: int) -> FinCategory:
    """Finite sets with ``S``-matrices ``X -> S^Y``; data is ``(|Y|, rows indexed by X)``."""
    sizes = list(range(bound + 1))

    def homs_(a, b):
        return [(sizes[b], rows) for rows in itertools.product(itertools.product(range(S.size), repeat=sizes[b]), repeat=sizes[a])]

    def comp(g, f):
        cols, grows = g
        out = []
        for row in f[1]:
            acc = [S.zero] * cols
            for y, s in enumerate(row):
                for z in range(cols):
                    acc[z] = S.add[acc[z]][S.mul[s][grows[y][z]]]
            out.append(tuple(acc))
        return (cols, tuple(out))

    def ident(a):
        n = sizes[a]
        return (n, tuple(tuple(S.one if i == j else S.zero for j in range(n)) for i in range(n)))

    return FinCategory.from_homs([str(n) for n in sizes], homs_, comp, ident)


def measure_bundle(scalars: str = "bool", bound: int = 2, carriers=(0, 1, 2)) -> CodensitySettingBundle:
    """Free semimodules: Kleisli maps of ``S^(-)``, transpose duality, dual adjunction into ``S``."""
    S = semiring(scalars)
    K = _kleisli_semiring_category(S, bound)
    Kop = opposite(K)
    sizes = list(range(bound + 1))
    vecs = {n: list(itertools.product(range(S.size), repeat=n)) for n in sizes}
    where_v = {n: {v: i for i, v in enumerate(vecs[n])} for n in sizes}

    def ext(f, a, b):
        # v |-> sum_x v_x . f(x)
        f = f[1]
        out = []
        for v in vecs[a]:
            acc = [S.zero] * b
            for x, s in enumerate(v):
                for z in range(b):
                    acc[z] = S.add[acc[z]][S.mul[s][f[x][z]]]
            out.append(where_v[b][tuple(acc)])
        return tuple(out)

    F = SetValuedFunctor(K, tuple(S.size**n for n in sizes), tuple(ext(K.data[m], K.dom[m], K.cod[m]) for m in range(K.n_morphisms)))
    # transpose: f: a -> S^b gives f^T: b -> S^a, a morphism of K^op from a to b
    E_mor = []
    for m in range(K.n_morphisms):
        a, b = K.dom[m], K.cod[m]
        f = K.data[m][1]
        ft = (a, tuple(tuple(f[x][y] for x in range(a)) for y in range(b)))
        E_mor.append(mor_id(K, b, a, ft))
    E = FinFunctor(K, Kop, tuple(range(K.n_objects)), tuple(E_mor))
    D_algs = [free_module(S, n) for n in sizes]
    D = algebra_category(D_algs, [f"S^{n}" for n in sizes])
    G = FinFunctor(K, D, tuple(range(K.n_objects)), tuple(mor_id(D, K.dom[m], K.cod[m], F.action[m]) for m in range(K.n_morphisms)))
    spec = measure_spec(scalars)
    square = []
    for n in sizes:
        A = D_algs[n]
        hs, where = spec.R(A)
        # phi |-> (phi(e_x))_x
        units = [where_v[n][tuple(S.one if i == x else S.zero for i in range(n))] for x in range(n)]
        psi = [where_v[n][tuple(phi[u] for u in units)] for phi in hs]
        square.append(tuple(psi))
    return CodensitySettingBundle(
        f"m_s({scalars})", F, E, G, D_algs, spec, square, sizes, list(range(0, bound + 1)), list(carriers)
    )


BUNDLES = {
    "filter": filter_bundle,
    "filter-kleisli": filter_kleisli_bundle,
    "ultrafilter": ultrafilter_bundle,
    "m_s": measure_bundle,
}


def corrupt_square(b: CodensitySettingBundle, c: int | None = None) -> CodensitySettingBundle:
    """Swap two values of one square component (fault injection)."""
    sq = [list(t) for t in b.square]
    if c is None:
        c = next(i for i, t in enumerate(sq) if len(t) >= 2)
    sq[c][0], sq[c][1] = sq[c][1], sq[c][0]
    return b.with_square([tuple(t) for t in sq])

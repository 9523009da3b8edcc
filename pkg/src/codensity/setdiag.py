"""Set-valued diagrams on finite categories: limits, colimits, Kan extensions, codensity.

Elements of a carrier of size ``n`` are ``0 .. n-1``.  Limits are computed
as the set of compatible families, each canonicalised as a coordinate tuple
over a fixed ordering of the index objects, so equality of limits is plain
tuple equality.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .families import compatible_families, naive_families
from .fincat import (
    FinCategory,
    FinFunctor,
    ValidationReport,
    Violation,
    comma_category,
    comma_under,
    opposite,
)
from .monad import ConcreteMonad, Table, UniverseClosureError, all_functions

# diagrams


@dataclass(frozen=True, eq=False)
class SetValuedFunctor:
    index: FinCategory
    sizes: tuple[int, ...]
    action: tuple[Table, ...]

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        object.__setattr__(self, "action", tuple(tuple(int(x) for x in t) for t in self.action))

    def edges(self) -> list[tuple[int, int, Table]]:
        C = self.index
        return [(C.dom[m], C.cod[m], self.action[m]) for m in range(C.n_morphisms) if not C.is_identity(m)]

    def apply(self, m: int, x: int) -> int:
        return self.action[m][x]


def validate_diagram(D: SetValuedFunctor) -> ValidationReport:
    rep = ValidationReport()
    C = D.index
    if len(D.sizes) != C.n_objects or len(D.action) != C.n_morphisms:
        rep.structural.append("carrier or action table does not match the index category")
        return rep
    for m in range(C.n_morphisms):
        t = D.action[m]
        if len(t) != D.sizes[C.dom[m]] or any(not 0 <= y < D.sizes[C.cod[m]] for y in t):
            rep.structural.append(f"action of {C.mor_names[m]} is not a function between the carriers")
    if rep.structural:
        return rep
    for a in range(C.n_objects):
        if D.action[C.identity[a]] != tuple(range(D.sizes[a])):
            rep.violations.append(Violation("preserves identity", (C.objects[a],)))
    for g, f, h in C.compose_triples():
        if tuple(D.action[g][y] for y in D.action[f]) != D.action[h]:
            rep.violations.append(Violation("preserves composition", (C.mor_names[g], C.mor_names[f])))
    return rep


def compose_diagram(D: SetValuedFunctor, J: FinFunctor) -> SetValuedFunctor:
    """``D . J`` for ``J`` into the index of ``D``."""
    return SetValuedFunctor(J.source, tuple(D.sizes[o] for o in J.obj_map), tuple(D.action[m] for m in J.mor_map))


def representable(C: FinCategory, c: int) -> SetValuedFunctor:
    """``C(c, -)`` as a covariant diagram; elements index ``C.hom(c, d)``."""
    sizes = tuple(len(C.hom(c, d)) for d in range(C.n_objects))
    action = []
    for m in range(C.n_morphisms):
        d, d2 = C.dom[m], C.cod[m]
        action.append(tuple(C.local_index(C.compose(m, x)) for x in C.hom(c, d)))
    return SetValuedFunctor(C, sizes, tuple(action))


def corepresentable_presheaf(C: FinCategory, c: int, Cop: FinCategory | None = None) -> SetValuedFunctor:
    """``C(-, c)`` as a diagram on ``C^op``; elements index ``C.hom(d, c)``."""
    Cop = Cop or opposite(C)
    sizes = tuple(len(C.hom(d, c)) for d in range(C.n_objects))
    action = []
    for m in range(C.n_morphisms):
        # m: d -> d2 in C acts C(d2, c) -> C(d, c)
        d, d2 = C.dom[m], C.cod[m]
        action.append(tuple(C.local_index(C.compose(x, m)) for x in C.hom(d2, c)))
    return SetValuedFunctor(Cop, sizes, tuple(action))


# limits


@dataclass(frozen=True, eq=False)
class LimitCone:
    diagram: SetValuedFunctor
    apex: tuple[tuple[int, ...], ...]

    def projection(self, a: int) -> Table:
        return tuple(t[a] for t in self.apex)

    def index_of(self, family: Sequence[int]) -> int | None:
        try:
            return self._lookup[tuple(family)]
        except AttributeError:
            object.__setattr__(self, "_lookup", {t: i for i, t in enumerate(self.apex)})
            return self._lookup.get(tuple(family))
        except KeyError:
            return None

    def __len__(self) -> int:
        return len(self.apex)


def limit(D: SetValuedFunctor) -> LimitCone:
    """Compatible families; the empty diagram has the one-point limit ``{()}``."""
    return LimitCone(D, tuple(compatible_families(D.sizes, D.edges())))


def limit_oracle(D: SetValuedFunctor) -> list[tuple[int, ...]]:
    return naive_families(D.sizes, D.edges())


def is_cone(D: SetValuedFunctor, legs: Sequence[Table]) -> bool:
    """Whether legs ``apex -> D a`` commute with every action."""
    for u, v, table in D.edges():
        if any(table[x] != y for x, y in zip(legs[u], legs[v])):
            return False
    return True


def factor_through(cone: LimitCone, legs: Sequence[Table]) -> Table | None:
    """The unique map into the limit apex reproducing ``legs``, if the legs form a cone."""
    if not cone.diagram.sizes:
        return None
    n = len(legs[0])
    out = []
    for e in range(n):
        i = cone.index_of(tuple(leg[e] for leg in legs))
        if i is None:
            return None
        out.append(i)
    return tuple(out)


# colimits


@dataclass(frozen=True, eq=False)
class ColimitCocone:
    diagram: SetValuedFunctor
    classes: tuple[tuple[tuple[int, int], ...], ...]
    injections: tuple[Table, ...]

    def __len__(self) -> int:
        return len(self.classes)


def _classes_to_cocone(D: SetValuedFunctor, root_of: Callable[[tuple[int, int]], Hashable]) -> ColimitCocone:
    groups: dict = {}
    for a, n in enumerate(D.sizes):
        for x in range(n):
            groups.setdefault(root_of((a, x)), []).append((a, x))
    classes = sorted(tuple(sorted(g)) for g in groups.values())
    where = {p: i for i, c in enumerate(classes) for p in c}
    inj = tuple(tuple(where[(a, x)] for x in range(n)) for a, n in enumerate(D.sizes))
    return ColimitCocone(D, tuple(classes), inj)


def colimit(D: SetValuedFunctor) -> ColimitCocone:
    """Disjoint union of carriers modulo the zig-zag closure, by union-find."""
    parent = {(a, x): (a, x) for a, n in enumerate(D.sizes) for x in range(n)}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for u, v, table in D.edges():
        for x, y in enumerate(table):
            ru, rv = find((u, x)), find((v, y))
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    return _classes_to_cocone(D, find)


def colimit_oracle(D: SetValuedFunctor) -> ColimitCocone:
    """Naive fixed point: grow the relation until reflexive, symmetric, transitive."""
    points = [(a, x) for a, n in enumerate(D.sizes) for x in range(n)]
    rel = {(p, p) for p in points}
    for u, v, table in D.edges():
        for x, y in enumerate(table):
            rel.add(((u, x), (v, y)))
    while True:
        new = set(rel)
        new |= {(q, p) for p, q in rel}
        new |= {(p, r) for p, q in rel for q2, r in rel if q == q2}
        if new == rel:
            break
        rel = new
    return _classes_to_cocone(D, lambda p: min(q for r, q in rel if r == p))


# random diagrams


def free_category_on_dag(n_objects: int, arrows: Sequence[tuple[int, int]]) -> FinCategory:
    """Paths in an acyclic multigraph; arrows must go from lower to higher objects."""
    for s, t in arrows:
        if not s < t:
            raise ValueError("arrows must increase object index")
    paths: dict[tuple[int, int], list[tuple[int, ...]]] = {(a, a): [()] for a in range(n_objects)}
    for a in range(n_objects - 1, -1, -1):
        for e, (s, t) in enumerate(arrows):
            if s != a:
                continue
            for b in range(n_objects):
                for p in paths.get((t, b), []):
                    paths.setdefault((a, b), []).append((e,) + p)
    names = [f"o{i}" for i in range(n_objects)]

    def comp(g, f):
        return f + g

    return FinCategory.from_homs(
        names,
        lambda a, b: [(a, b, p) for p in paths.get((a, b), [])],
        lambda g, f: (f[0], g[1], f[2] + g[2]),
        lambda a: (a, a, ()),
        mor_name=lambda a, b, d: "id_" + names[a] if not d[2] else ".".join(f"e{e}" for e in reversed(d[2])),
    )


def diagram_on_free_category(C: FinCategory, arrows: Sequence[tuple[int, int]], sizes: Sequence[int], tables: Sequence[Table]) -> SetValuedFunctor:
    """Extend arrow tables to all paths by composition."""
    action = []
    for m in range(C.n_morphisms):
        a, _, path = C.data[m]
        t = tuple(range(sizes[a]))
        for e in path:
            t = tuple(tables[e][x] for x in t)
        action.append(t)
    return SetValuedFunctor(C, tuple(sizes), tuple(action))


def random_diagram(rng: random.Random, max_objects: int = 6, max_size: int = 4, max_arrows: int = 7) -> SetValuedFunctor:
    n = rng.randint(1, max_objects)
    pairs = [(s, t) for s in range(n) for t in range(s + 1, n)]
    arrows = [rng.choice(pairs) for _ in range(rng.randint(0, max_arrows))] if pairs else []
    arrows.sort()
    sizes = [rng.randint(0, max_size) for _ in range(n)]
    # an arrow out of a nonempty set needs a nonempty codomain
    for s, t in arrows:
        if sizes[s] and not sizes[t]:
            sizes[t] = 1
    tables = [tuple(rng.randrange(sizes[t]) for _ in range(sizes[s])) for s, t in arrows]
    C = free_category_on_dag(n, arrows)
    return diagram_on_free_category(C, arrows, sizes, tables)


def idempotent_diagram(table: Sequence[int]) -> SetValuedFunctor:
    """One object, one idempotent ``e`` acting by an idempotent function."""
    table = tuple(table)
    if tuple(table[x] for x in table) != table:
        raise ValueError("table is not idempotent")
    from .fincat import monoid_category

    C = monoid_category(["1", "e"], [[0, 1], [1, 1]])
    return SetValuedFunctor(C, (len(table),), (tuple(range(len(table))), table))


# natural transformations between set-valued functors


def natural_transformations(H: SetValuedFunctor, K: SetValuedFunctor) -> tuple[list[tuple[int, int]], list[tuple[int, ...]]]:
    """All natural ``H => K``; each is a tuple over the variables ``(object, element of H)``."""
    C = H.index
    variables = [(a, x) for a in range(C.n_objects) for x in range(H.sizes[a])]
    where = {v: i for i, v in enumerate(variables)}
    edges = []
    for m in range(C.n_morphisms):
        if C.is_identity(m):
            continue
        a, b = C.dom[m], C.cod[m]
        for x in range(H.sizes[a]):
            edges.append((where[(a, x)], where[(b, H.action[m][x])], K.action[m]))
    fams = compatible_families([K.sizes[a] for a, _ in variables], edges)
    return variables, fams


def components(variables: Sequence[tuple[int, int]], family: Sequence[int], n_objects: int) -> list[list[int]]:
    comp: list[list[int]] = [[] for _ in range(n_objects)]
    for (a, _), v in zip(variables, family):
        comp[a].append(v)
    return comp


def is_natural(H: SetValuedFunctor, K: SetValuedFunctor, comps: Sequence[Sequence[int]]) -> bool:
    C = H.index
    for m in range(C.n_morphisms):
        a, b = C.dom[m], C.cod[m]
        for x in range(H.sizes[a]):
            if K.action[m][comps[a][x]] != comps[b][H.action[m][x]]:
                return False
    return True


# right Kan extensions


@dataclass(frozen=True, eq=False)
class KanValue:
    anchor: int
    comma: object
    cone: LimitCone

    def __len__(self) -> int:
        return len(self.cone)


@dataclass(frozen=True, eq=False)
class RightKan:
    """``Ran_J F`` at every object of the target of ``J``, with its counit."""

    F: SetValuedFunctor
    J: FinFunctor
    values: tuple[KanValue, ...]
    functor: SetValuedFunctor
    counit: tuple[Table, ...]


def right_kan_extension(F: SetValuedFunctor, J: FinFunctor, X: int | None = None):
    """Pointwise ``Ran_J F``: the limit of ``F . pi`` over ``X | J``.

    With ``X`` given returns ``(LimitCone, counit components)`` for that
    object; without, returns the whole :class:`RightKan` as a diagram on the
    target of ``J``.
    """
    B = J.target
    values = []
    for b in range(B.n_objects):
        cc = comma_under(J, b)
        D = compose_diagram(F, cc.projection)
        values.append(KanValue(b, cc, limit(D)))
    where = [{o: i for i, o in enumerate(v.comma.objects)} for v in values]
    action = []
    for k in range(B.n_morphisms):
        x, x2 = B.dom[k], B.cod[k]
        src, dst = values[x], values[x2]
        cols = [where[x][(a, B.compose(f2, k))] for a, f2 in dst.comma.objects]
        action.append(tuple(dst.cone.index_of(tuple(t[c] for c in cols)) for t in src.cone.apex))
    R = SetValuedFunctor(B, tuple(len(v) for v in values), tuple(action))
    counit = []
    for a in range(J.source.n_objects):
        Ja = J.obj_map[a]
        c = where[Ja][(a, B.identity[Ja])]
        counit.append(values[Ja].cone.projection(c))
    ran = RightKan(F, J, tuple(values), R, tuple(counit))
    if X is None:
        return ran
    return values[X].cone, tuple(counit)


def kan_factor(ran: RightKan, H: SetValuedFunctor, alpha: Sequence[Sequence[int]]) -> list[list[int]]:
    """The transformation ``H => Ran`` induced by ``alpha: H . J => F``."""
    J, B = ran.J, ran.J.target
    out = []
    for b in range(B.n_objects):
        v = ran.values[b]
        comp = []
        for y in range(H.sizes[b]):
            fam = tuple(alpha[a][H.action[f][y]] for a, f in v.comma.objects)
            comp.append(v.cone.index_of(fam))
        out.append(comp)
    return out


# codensity


@dataclass(frozen=True)
class Fragment:
    """A concrete functor into finite sets presented by labelled objects and arrows.

    Only arrows are needed for limits, so composition is not stored.  Labels
    must be stable across the levels of a truncation chain.
    """

    labels: tuple[str, ...]
    sizes: tuple[int, ...]
    arrows: tuple[tuple[int, int, Table], ...]

    @classmethod
    def of_functor(cls, D: SetValuedFunctor) -> "Fragment":
        return cls(D.index.objects, D.sizes, tuple(D.edges()))

    def restrict(self, keep: Sequence[int]) -> "Fragment":
        pos = {o: i for i, o in enumerate(keep)}
        return Fragment(
            tuple(self.labels[o] for o in keep),
            tuple(self.sizes[o] for o in keep),
            tuple((pos[a], pos[b], t) for a, b, t in self.arrows if a in pos and b in pos),
        )


def set_fragment(max_size: int, min_size: int = 0) -> Fragment:
    """All functions between the sets ``min_size .. max_size``."""
    sizes = tuple(range(min_size, max_size + 1))
    arrows = []
    for i, a in enumerate(sizes):
        for j, b in enumerate(sizes):
            for t in all_functions(a, b):
                if i == j and t == tuple(range(a)):
                    continue
                arrows.append((i, j, t))
    return Fragment(tuple(str(s) for s in sizes), sizes, tuple(arrows))


def set_category(max_size: int, min_size: int = 0) -> tuple[FinCategory, SetValuedFunctor]:
    """Hom-closed fragment of finite sets with its inclusion into sets."""
    sizes = list(range(min_size, max_size + 1))
    homs = {(i, j): all_functions(a, b) for i, a in enumerate(sizes) for j, b in enumerate(sizes)}
    C = FinCategory.of_function_tables([str(s) for s in sizes], sizes, homs)
    return C, SetValuedFunctor(C, tuple(sizes), tuple(C.data))


@dataclass(frozen=True, eq=False)
class CodensityValue:
    """The limit of ``F pi`` over ``X | F`` for a finite set ``X`` of size ``n``."""

    fragment: Fragment
    n: int
    objects: tuple[tuple[int, Table], ...]
    apex: tuple[tuple[int, ...], ...]
    unit: Table
    empty_comma: bool = False

    @property
    def keys(self) -> tuple[tuple[str, Table], ...]:
        return tuple((self.fragment.labels[a], f) for a, f in self.objects)

    def projection_index(self) -> dict[tuple[int, Table], int]:
        return {o: i for i, o in enumerate(self.objects)}

    def index_of(self, family: Sequence[int]) -> int | None:
        try:
            lookup = self._lookup
        except AttributeError:
            lookup = {t: i for i, t in enumerate(self.apex)}
            object.__setattr__(self, "_lookup", lookup)
        return lookup.get(tuple(family))

    def __len__(self) -> int:
        return len(self.apex)


def comma_objects(fragment: Fragment, n: int, maps: Callable[[int, int], Iterable[Table]] | None = None):
    maps = maps or (lambda n, a: all_functions(n, fragment.sizes[a]))
    return [(a, tuple(f)) for a in range(len(fragment.sizes)) for f in maps(n, a)]


def codensity_at(
    fragment: Fragment | SetValuedFunctor,
    n: int,
    maps: Callable[[int, int], Iterable[Table]] | None = None,
) -> CodensityValue:
    """``lim_{f: X -> F a} F a`` for ``|X| = n``, with the unit ``X -> value``.

    ``maps(n, a)`` enumerates the admissible maps ``X -> F a`` (all
    functions by default).  If no such maps exist and ``X`` is nonempty the
    value is the one-point limit and ``empty_comma`` is set.
    """
    if isinstance(fragment, SetValuedFunctor):
        fragment = Fragment.of_functor(fragment)
    objs = comma_objects(fragment, n, maps)
    where = {o: i for i, o in enumerate(objs)}
    by_object: dict[int, list[int]] = {}
    for i, (a, _) in enumerate(objs):
        by_object.setdefault(a, []).append(i)
    edges = []
    for a, b, table in fragment.arrows:
        for i in by_object.get(a, ()):
            f = objs[i][1]
            target = (b, tuple(table[y] for y in f))
            j = where.get(target)
            if j is None:
                raise ValueError(f"map enumeration not closed under the arrow {fragment.labels[a]} -> {fragment.labels[b]}")
            edges.append((i, j, table))
    sizes = [fragment.sizes[a] for a, _ in objs]
    # larger comma objects tend to be more constrained once fixed
    priority = sorted(range(len(objs)), key=lambda i: (sizes[i], i))
    apex = tuple(compatible_families(sizes, edges, priority))
    lookup = {t: i for i, t in enumerate(apex)}
    unit = tuple(lookup[tuple(f[x] for _, f in objs)] for x in range(n))
    return CodensityValue(fragment, n, tuple(objs), apex, unit, empty_comma=(not objs and n > 0))


def codensity_fmap(src: CodensityValue, dst: CodensityValue, h: Sequence[int]) -> Table:
    """Action on ``h: X -> Y``: ``(T h t)_f = t_{f . h}``."""
    where = src.projection_index()
    cols = [where[(a, tuple(f[x] for x in h))] for a, f in dst.objects]
    return tuple(dst.index_of(tuple(t[c] for c in cols)) for t in src.apex)


def codensity_mult(value: CodensityValue, outer: CodensityValue) -> Table:
    """``mu`` at ``X``: ``(mu W)_f = W_{pi_f}``, where ``outer`` is the value at ``T X``."""
    where = outer.projection_index()
    cols = []
    for i, (a, f) in enumerate(value.objects):
        pi_f = tuple(t[i] for t in value.apex)
        cols.append(where[(a, pi_f)])
    return tuple(value.index_of(tuple(W[c] for c in cols)) for W in outer.apex)


def codensity_monad(
    fragment: Fragment | SetValuedFunctor,
    universe: Sequence[int],
    max_size: int | None = None,
    name: str = "codensity",
) -> ConcreteMonad:
    """The codensity monad of a concrete fragment on finite sets (carriers are sizes).

    The value at ``n`` is computed on demand; asking for a carrier larger
    than ``max_size`` raises :class:`UniverseClosureError` naming it.
    """
    if isinstance(fragment, SetValuedFunctor):
        fragment = Fragment.of_functor(fragment)
    cap = max(universe) if max_size is None else max_size
    cache: dict[int, CodensityValue] = {}

    def value(n):
        if n > cap:
            raise UniverseClosureError(f"{name}: the carrier of size {n} is outside the universe (cap {cap})")
        if n not in cache:
            cache[n] = codensity_at(fragment, n)
        return cache[n]

    M = ConcreteMonad(
        name,
        list(universe),
        obj=lambda n: len(value(n)),
        fmap=lambda X, Y, h: codensity_fmap(value(X), value(Y), h),
        unit=lambda n: value(n).unit,
        mult=lambda n: codensity_mult(value(n), value(len(value(n)))),
        size=lambda n: n,
        maps=all_functions,
        max_size=cap,
    )
    M.value = value
    return M


# truncation


@dataclass
class TruncationChain:
    n: int
    levels: list[int]
    cardinalities: list[int]
    restrictions: list[Table | None]
    stabilized_at: int | None
    values: list[CodensityValue] = field(repr=False, default_factory=list)

    def bijective(self, i: int) -> bool:
        r = self.restrictions[i]
        return r is not None and len(set(r)) == len(r) == self.cardinalities[i - 1]

    def surjective(self, i: int) -> bool:
        r = self.restrictions[i]
        return r is not None and len(set(r)) == self.cardinalities[i - 1]

    def as_dict(self) -> dict:
        return {
            "carrier": self.n,
            "levels": list(self.levels),
            "cardinalities": list(self.cardinalities),
            "restriction_bijective": [None] + [self.bijective(i) for i in range(1, len(self.levels))],
            "stabilized_at": self.stabilized_at,
        }


def restriction_map(fine: CodensityValue, coarse: CodensityValue) -> Table:
    """Forget the coordinates of ``fine`` whose comma keys are absent from ``coarse``."""
    where = {k: i for i, k in enumerate(fine.keys)}
    cols = [where[k] for k in coarse.keys]
    out = []
    for t in fine.apex:
        i = coarse.index_of(tuple(t[c] for c in cols))
        if i is None:
            raise ValueError("restricted family is not compatible at the coarser level")
        out.append(i)
    return tuple(out)


def truncated_codensity(
    family: Callable[[int], Fragment],
    n: int,
    k_max: int,
    levels: Sequence[int] | None = None,
    maps_for: Callable[[Fragment], Callable] | None = None,
) -> TruncationChain:
    """Codensity limits over growing fragments and the restriction maps between them.

    Levels whose fragment has the same objects as the previous level are
    dropped, so a repeated fragment cannot fake stabilisation.
    """
    levels = list(levels) if levels is not None else list(range(1, k_max + 1))
    kept, values, restrictions = [], [], []
    prev_labels = None
    for k in levels:
        if k > k_max:
            break
        frag = family(k)
        if frag.labels == prev_labels:
            continue
        prev_labels = frag.labels
        v = codensity_at(frag, n, maps_for(frag) if maps_for else None)
        restrictions.append(restriction_map(v, values[-1]) if values else None)
        kept.append(k)
        values.append(v)
    chain = TruncationChain(n, kept, [len(v) for v in values], restrictions, None, values)
    for i in range(1, len(kept) - 1):
        if chain.bijective(i) and chain.bijective(i + 1):
            chain.stabilized_at = kept[i]
            break
    return chain


# density as colimits


def density_diagram(fragment_cat: FinCategory, U: SetValuedFunctor, n: int) -> tuple[SetValuedFunctor, list[tuple[int, Table]]]:
    """``U . pi`` over ``U | X`` for a finite set ``X`` of size ``n``.

    Objects are ``(a, f: U a -> X)``; arrows ``h`` with ``f = f' . U h``.
    """
    objs = [(a, f) for a in range(fragment_cat.n_objects) for f in all_functions(U.sizes[a], n)]
    C = fragment_cat

    def homs(i, j):
        (a, f), (a2, f2) = objs[i], objs[j]
        return [h for h in C.hom(a, a2) if tuple(f2[y] for y in U.action[h]) == f]

    K = FinCategory.from_homs(
        [f"({C.objects[a]}, {f})" for a, f in objs],
        homs,
        lambda g, f: C.compose(g, f),
        lambda i: C.identity[objs[i][0]],
        mor_name=lambda i, j, h: C.mor_names[h],
    )
    D = SetValuedFunctor(K, tuple(U.sizes[a] for a, _ in objs), tuple(U.action[h] for h in K.data))
    return D, objs


def canonical_comparison(cocone: ColimitCocone, objs: Sequence[tuple[int, Table]], n: int) -> Table:
    """Colimit apex ``-> X``, sending the class of ``(a, f), y`` to ``f(y)``."""
    out = []
    for cls in cocone.classes:
        vals = {objs[a][1][y] for a, y in cls}
        if len(vals) != 1:
            raise ValueError("canonical cocone is not well defined on a class")
        out.append(vals.pop())
    return tuple(out)


def canonical_colimit_holds(G: FinFunctor, b: int) -> bool:
    """Whether ``b`` is the colimit of ``G . pi`` over ``G | b`` with the canonical cocone.

    Tested against every object ``c``: postcomposition must be a bijection
    from ``B(b, c)`` onto the cocones over the diagram with vertex ``c``.
    """
    B = G.target
    cc = comma_category(G, b)
    objs = cc.objects
    K = cc.category
    for c in range(B.n_objects):
        doms = [B.hom(G.obj_map[a], c) for a, _ in objs]
        local = [{m: i for i, m in enumerate(d)} for d in doms]
        edges = []
        for h in range(K.n_morphisms):
            if K.is_identity(h):
                continue
            i, j = K.dom[h], K.cod[h]
            gh = G.mor_map[K.data[h]]
            # leg_i = leg_j . G h
            edges.append((j, i, tuple(local[i][B.compose(k, gh)] for k in doms[j])))
        cocones = set(compatible_families([len(d) for d in doms], edges))
        induced = []
        for k in B.hom(b, c):
            induced.append(tuple(local[i][B.compose(k, f)] for i, (_, f) in enumerate(objs)))
        if len(set(induced)) != len(induced) or set(induced) != cocones:
            return False
    return True


# Isbell conjugation


@dataclass(frozen=True, eq=False)
class Conjugate:
    """A diagram whose elements are natural transformations, kept alongside the diagram."""

    diagram: SetValuedFunctor
    elements: tuple[tuple[tuple[int, ...], ...], ...]  # per object, the naturals as family tuples
    variables: tuple[tuple[int, int], ...]


def _nat_index(families):
    return {f: i for i, f in enumerate(families)}


def isbell_O(C: FinCategory, X: SetValuedFunctor, Cop: FinCategory | None = None) -> Conjugate:
    """``O(X)(c) = Nat(X, C(-, c))`` as a covariant diagram on ``C``."""
    Cop = Cop or X.index
    reps = [corepresentable_presheaf(C, c, Cop) for c in range(C.n_objects)]
    variables = None
    elements = []
    for c in range(C.n_objects):
        variables, fams = natural_transformations(X, reps[c])
        elements.append(tuple(fams))
    variables = [(a, x) for a in range(C.n_objects) for x in range(X.sizes[a])]
    lookups = [_nat_index(e) for e in elements]
    action = []
    for k in range(C.n_morphisms):
        c, c2 = C.dom[k], C.cod[k]
        # postcompose with k: C(d, c) -> C(d, c2)
        tab = []
        for fam in elements[c]:
            new = tuple(C.local_index(C.compose(k, C.hom(a, c)[v])) for (a, _), v in zip(variables, fam))
            tab.append(lookups[c2][new])
        action.append(tuple(tab))
    D = SetValuedFunctor(C, tuple(len(e) for e in elements), tuple(action))
    return Conjugate(D, tuple(elements), tuple(variables))


def isbell_spec(C: FinCategory, A: SetValuedFunctor, Cop: FinCategory | None = None) -> Conjugate:
    """``Spec(A)(c) = Nat(A, C(c, -))`` as a presheaf (diagram on ``C^op``)."""
    Cop = Cop or opposite(C)
    reps = [representable(C, c) for c in range(C.n_objects)]
    elements = []
    for c in range(C.n_objects):
        _, fams = natural_transformations(A, reps[c])
        elements.append(tuple(fams))
    variables = [(a, x) for a in range(C.n_objects) for x in range(A.sizes[a])]
    lookups = [_nat_index(e) for e in elements]
    action = []
    for m in range(C.n_morphisms):
        c2, c = C.dom[m], C.cod[m]  # m: c2 -> c acts Spec(A)(c) -> Spec(A)(c2) by precomposition
        tab = []
        for fam in elements[c]:
            new = tuple(C.local_index(C.compose(C.hom(c, a)[v], m)) for (a, _), v in zip(variables, fam))
            tab.append(lookups[c2][new])
        action.append(tuple(tab))
    D = SetValuedFunctor(Cop, tuple(len(e) for e in elements), tuple(action))
    return Conjugate(D, tuple(elements), tuple(variables))


def isbell_conjugates(C: FinCategory, X: SetValuedFunctor):
    """``O(X)``, ``Spec(O(X))`` and the unit ``X => Spec(O(X))`` as component tables."""
    Cop = X.index
    O = isbell_O(C, X, Cop)
    S = isbell_spec(C, O.diagram, Cop)
    lookups = [_nat_index(e) for e in S.elements]
    unit = []
    for c in range(C.n_objects):
        comp = []
        for x in range(X.sizes[c]):
            # alpha in O(X)(c2) goes to alpha_c(x) in C(c, c2)
            fam = []
            for c2, j in S.variables:
                alpha = O.elements[c2][j]
                pos = O.variables.index((c, x))
                fam.append(alpha[pos])
            comp.append(lookups[c][tuple(fam)])
        unit.append(tuple(comp))
    return O, S, tuple(unit)


def spec(C: FinCategory, A: SetValuedFunctor) -> Conjugate:
    return isbell_spec(C, A)

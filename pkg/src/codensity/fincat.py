"""Finite categories, functors and natural transformations stored extensionally.

Objects and morphisms are dense integers; display names live in side tables.
Composition is kept in blocks: for objects ``a, b, c`` the array
``blocks[(a, b, c)]`` has shape ``(|C(b,c)|, |C(a,b)|)`` and holds the global id
of ``g . f`` (``-1`` marks a missing entry).  Validation reports missing
entries as structural errors, separately from axiom violations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from .families import compatible_families

SCHEMA_VERSION = 1
SCHEMA_NAME = "codensity.fincat"


class SchemaError(ValueError):
    pass


class FinCategory:
    """A finite category with a total composition table."""

    def __init__(
        self,
        objects: Sequence[str],
        morphisms: Sequence[tuple[str, int, int]],
        identity: Sequence[int],
        compose: Mapping[tuple[int, int], int],
        data: Sequence[Hashable] | None = None,
    ):
        self.objects = tuple(str(o) for o in objects)
        self.mor_names = tuple(str(m[0]) for m in morphisms)
        self.dom = tuple(int(m[1]) for m in morphisms)
        self.cod = tuple(int(m[2]) for m in morphisms)
        self.identity = tuple(int(i) for i in identity)
        self.data = tuple(data) if data is not None else None
        self._index_homs()
        blocks = self._empty_blocks()
        for (g, f), h in compose.items():
            a, b, c = self.dom[f], self.cod[f], self.cod[g]
            if self.dom[g] != b:
                continue
            blocks[(a, b, c)][self._local[g], self._local[f]] = h
        self._blocks = self._freeze(blocks)

    # construction helpers

    @classmethod
    def _raw(cls, objects, mor_names, dom, cod, identity, blocks, data=None) -> "FinCategory":
        self = cls.__new__(cls)
        self.objects = tuple(objects)
        self.mor_names = tuple(mor_names)
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.identity = tuple(identity)
        self.data = tuple(data) if data is not None else None
        self._index_homs()
        self._blocks = self._freeze(blocks)
        return self

    @classmethod
    def from_homs(
        cls,
        objects: Sequence[str],
        homs: Callable[[int, int], Sequence[Hashable]],
        compose: Callable[[Hashable, Hashable], Hashable],
        identity: Callable[[int], Hashable],
        mor_name: Callable[[int, int, Hashable], str] | None = None,
    ) -> "FinCategory":
        """Materialise a hom-closed fragment from hom-set and composition callables.

        Morphisms are identified by ``(dom, cod, data)``; ``compose`` must
        return data already present in the target hom-set.
        """
        n = len(objects)
        names, dom, cod, data = [], [], [], []
        lookup: dict[tuple[int, int], dict[Hashable, int]] = {}
        for a in range(n):
            for b in range(n):
                idx = {}
                for d in homs(a, b):
                    if d in idx:
                        continue
                    idx[d] = len(data)
                    names.append(mor_name(a, b, d) if mor_name else f"{objects[a]}->{objects[b]}#{len(idx) - 1}")
                    dom.append(a)
                    cod.append(b)
                    data.append(d)
                lookup[(a, b)] = idx
        ident = []
        for a in range(n):
            d = identity(a)
            if d not in lookup[(a, a)]:
                raise ValueError(f"identity of {objects[a]} missing from its hom-set")
            ident.append(lookup[(a, a)][d])
        self = cls._raw(objects, names, dom, cod, ident, {}, data)
        blocks = self._empty_blocks()
        for (a, b, c), arr in blocks.items():
            hab, hbc = self.hom(a, b), self.hom(b, c)
            target = lookup[(a, c)]
            for i, g in enumerate(hbc):
                for j, f in enumerate(hab):
                    d = compose(data[g], data[f])
                    if d not in target:
                        raise ValueError(f"fragment not hom-closed: composite of {names[g]} and {names[f]}")
                    arr[i, j] = target[d]
        self._blocks = self._freeze(blocks)
        return self

    @classmethod
    def of_function_tables(
        cls,
        objects: Sequence[str],
        sizes: Sequence[int],
        homs: Mapping[tuple[int, int], Sequence[tuple[int, ...]]],
    ) -> "FinCategory":
        """Concrete category whose morphisms are function tables between carriers.

        ``homs[(a, b)]`` lists tables of length ``sizes[a]`` with entries in
        ``range(sizes[b])``; identities must be present and the family must be
        closed under composition.
        """
        n = len(objects)
        names, dom, cod, data = [], [], [], []
        keyed: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}
        tables: dict[tuple[int, int], np.ndarray] = {}
        for a in range(n):
            for b in range(n):
                hs = list(dict.fromkeys(tuple(t) for t in homs.get((a, b), ())))
                start = len(data)
                for k, t in enumerate(hs):
                    names.append(f"{objects[a]}->{objects[b]}#{k}")
                    dom.append(a)
                    cod.append(b)
                    data.append(t)
                arr = np.array(hs, dtype=np.int64).reshape(len(hs), sizes[a])
                tables[(a, b)] = arr
                keys = _encode_rows(arr, sizes[b])
                order = np.argsort(keys, kind="stable")
                keyed[(a, b)] = (keys[order], np.arange(start, start + len(hs))[order])
        ident = []
        for a in range(n):
            idt = tuple(range(sizes[a]))
            ids = [i for i in range(len(data)) if dom[i] == a and cod[i] == a and data[i] == idt]
            if not ids:
                raise ValueError(f"identity of {objects[a]} missing")
            ident.append(ids[0])
        self = cls._raw(objects, names, dom, cod, ident, {}, data)
        blocks = self._empty_blocks()
        for (a, b, c), arr in blocks.items():
            if arr.size == 0:
                continue
            f_tab, g_tab = tables[(a, b)], tables[(b, c)]
            comp = g_tab[:, f_tab]  # (n_bc, n_ab, size_a)
            if sizes[a] == 0:
                keys = np.zeros(comp.shape[:2], dtype=np.int64)
            else:
                keys = _encode_rows(comp.reshape(-1, sizes[a]), sizes[c]).reshape(comp.shape[:2])
            sorted_keys, ids = keyed[(a, c)]
            pos = np.searchsorted(sorted_keys, keys)
            pos_c = np.minimum(pos, max(len(sorted_keys) - 1, 0))
            if len(sorted_keys) == 0 or not np.all(sorted_keys[pos_c] == keys):
                raise ValueError(f"fragment not closed under composition at {objects[a]}, {objects[b]}, {objects[c]}")
            arr[:, :] = ids[pos_c]
        self._blocks = self._freeze(blocks)
        return self

    def _index_homs(self) -> None:
        n = len(self.objects)
        homs: dict[tuple[int, int], list[int]] = {(a, b): [] for a in range(n) for b in range(n)}
        local = []
        for m, (a, b) in enumerate(zip(self.dom, self.cod)):
            if not (0 <= a < n and 0 <= b < n):
                local.append(-1)
                continue
            local.append(len(homs[(a, b)]))
            homs[(a, b)].append(m)
        self._homs = {k: tuple(v) for k, v in homs.items()}
        self._local = tuple(local)
        self._local_arr = np.array(local, dtype=np.int64) if local else np.zeros(0, dtype=np.int64)

    def _empty_blocks(self) -> dict[tuple[int, int, int], np.ndarray]:
        n = len(self.objects)
        return {
            (a, b, c): np.full((len(self._homs[(b, c)]), len(self._homs[(a, b)])), -1, dtype=np.int64)
            for a in range(n)
            for b in range(n)
            for c in range(n)
        }

    @staticmethod
    def _freeze(blocks):
        for arr in blocks.values():
            arr.flags.writeable = False
        return blocks

    # queries

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.dom)

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        return self._homs[(a, b)]

    def block(self, a: int, b: int, c: int) -> np.ndarray:
        return self._blocks[(a, b, c)]

    def local_index(self, m: int) -> int:
        return self._local[m]

    def compose(self, g: int, f: int) -> int:
        """Global id of ``g . f``; ``-1`` if the table has no entry."""
        if self.cod[f] != self.dom[g]:
            raise ValueError(f"{self.mor_names[g]} . {self.mor_names[f]} is not composable")
        a, b, c = self.dom[f], self.cod[f], self.cod[g]
        return int(self._blocks[(a, b, c)][self._local[g], self._local[f]])

    def compose_triples(self) -> list[tuple[int, int, int]]:
        out = []
        for (a, b, c), arr in sorted(self._blocks.items()):
            hbc, hab = self._homs[(b, c)], self._homs[(a, b)]
            for i, g in enumerate(hbc):
                for j, f in enumerate(hab):
                    if arr[i, j] >= 0:
                        out.append((g, f, int(arr[i, j])))
        return out

    def is_identity(self, m: int) -> bool:
        return self.identity[self.dom[m]] == m

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.mor_names == other.mor_names
            and self.dom == other.dom
            and self.cod == other.cod
            and self.identity == other.identity
            and self._blocks.keys() == other._blocks.keys()
            and all(np.array_equal(v, other._blocks[k]) for k, v in self._blocks.items())
        )

    def __hash__(self) -> int:
        return hash((self.objects, self.dom, self.cod, self.identity))

    def __repr__(self) -> str:
        return f"FinCategory({self.n_objects} objects, {self.n_morphisms} morphisms)"


def _encode_rows(arr: np.ndarray, base: int) -> np.ndarray:
    """Encode each row of a small non-negative int matrix as one integer."""
    if arr.ndim != 2:
        raise ValueError("expected a matrix")
    base = max(base, 1)
    if arr.shape[1] == 0:
        return np.zeros(arr.shape[0], dtype=np.int64)
    if base ** arr.shape[1] < 2**62:
        weights = base ** np.arange(arr.shape[1], dtype=np.int64)
        return arr.astype(np.int64) @ weights
    # wide rows: fall back to python ints, still sortable
    return np.array([sum(int(x) * base**i for i, x in enumerate(row)) for row in arr.tolist()], dtype=object)


def discrete_category(names: Sequence[str]) -> FinCategory:
    ids = [(f"id_{o}", i, i) for i, o in enumerate(names)]
    return FinCategory(names, ids, range(len(names)), {(i, i): i for i in range(len(names))})


def monoid_category(elements: Sequence[str], table: Sequence[Sequence[int]], unit: int = 0, name: str = "*") -> FinCategory:
    """One-object category; ``table[g][f]`` is the id of ``g . f``."""
    mors = [(e, 0, 0) for e in elements]
    comp = {(g, f): table[g][f] for g in range(len(elements)) for f in range(len(elements))}
    return FinCategory([name], mors, [unit], comp)


def poset_category(names: Sequence[str], leq: Callable[[int, int], bool]) -> FinCategory:
    """Thin category of a finite preorder (one arrow ``a -> b`` iff ``a <= b``)."""
    n = len(names)
    return FinCategory.from_homs(
        names,
        lambda a, b: [(a, b)] if leq(a, b) else [],
        lambda g, f: (f[0], g[1]),
        lambda a: (a, a),
        mor_name=lambda a, b, d: f"{names[a]}<={names[b]}",
    )


def opposite(C: FinCategory) -> FinCategory:
    """Same objects and morphism ids; domains and codomains swapped."""
    blocks = {}
    n = C.n_objects
    for a in range(n):
        for b in range(n):
            for c in range(n):
                # in C^op: f: a->b means f: b->a in C; g.f (op) = f.g (C)
                src = C.block(c, b, a)  # shape (|C(b,a)|, |C(c,b)|): entries f.g
                blocks[(a, b, c)] = np.array(src.T, dtype=np.int64)
    return FinCategory._raw(C.objects, C.mor_names, C.cod, C.dom, C.identity, blocks, C.data)


def full_subcategory(C: FinCategory, objs: Sequence[int]) -> tuple[FinCategory, "FinFunctor"]:
    """The full subcategory on ``objs`` together with its inclusion functor."""
    objs = list(objs)
    pos = {o: i for i, o in enumerate(objs)}
    keep = [m for m in range(C.n_morphisms) if C.dom[m] in pos and C.cod[m] in pos]
    new_id = {m: i for i, m in enumerate(keep)}
    names = [C.mor_names[m] for m in keep]
    dom = [pos[C.dom[m]] for m in keep]
    cod = [pos[C.cod[m]] for m in keep]
    ident = [new_id[C.identity[o]] for o in objs]
    data = [C.data[m] for m in keep] if C.data is not None else None
    sub = FinCategory._raw([C.objects[o] for o in objs], names, dom, cod, ident, {}, data)
    blocks = sub._empty_blocks()
    for (a, b, c), arr in blocks.items():
        src = C.block(objs[a], objs[b], objs[c])
        if src.size:
            arr[:, :] = np.vectorize(lambda x: new_id.get(int(x), -1), otypes=[np.int64])(src)
    sub._blocks = sub._freeze(blocks)
    inc = FinFunctor(sub, C, tuple(objs), tuple(keep))
    return sub, inc


@dataclass(frozen=True, eq=False)
class FinFunctor:
    source: FinCategory
    target: FinCategory
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "obj_map", tuple(int(x) for x in self.obj_map))
        object.__setattr__(self, "mor_map", tuple(int(x) for x in self.mor_map))

    def __eq__(self, other):
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.obj_map == other.obj_map
            and self.mor_map == other.mor_map
        )

    __hash__ = object.__hash__


def identity_functor(C: FinCategory) -> FinFunctor:
    return FinFunctor(C, C, tuple(range(C.n_objects)), tuple(range(C.n_morphisms)))


def compose_functors(G: FinFunctor, F: FinFunctor) -> FinFunctor:
    if G.source is not F.target and G.source != F.target:
        raise ValueError("functors not composable")
    return FinFunctor(F.source, G.target, tuple(G.obj_map[o] for o in F.obj_map), tuple(G.mor_map[m] for m in F.mor_map))


def opposite_functor(F: FinFunctor, source_op: FinCategory | None = None, target_op: FinCategory | None = None) -> FinFunctor:
    return FinFunctor(source_op or opposite(F.source), target_op or opposite(F.target), F.obj_map, F.mor_map)


@dataclass(frozen=True, eq=False)
class NatTransformation:
    source: FinFunctor
    target: FinFunctor
    components: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(int(x) for x in self.components))


# validation


@dataclass
class Violation:
    axiom: str
    witness: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.axiom}: {', '.join(self.witness)}"


@dataclass
class ValidationReport:
    structural: list[str] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.structural and not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def lines(self) -> list[str]:
        return [f"structural: {s}" for s in self.structural] + [str(v) for v in self.violations]


def validate(entity) -> ValidationReport:
    if isinstance(entity, FinCategory):
        return _validate_category(entity)
    if isinstance(entity, FinFunctor):
        return _validate_functor(entity)
    if isinstance(entity, NatTransformation):
        return _validate_nat(entity)
    raise TypeError(f"cannot validate {type(entity).__name__}")


def _validate_category(C: FinCategory) -> ValidationReport:
    rep = ValidationReport()
    n, nm = C.n_objects, C.n_morphisms
    names = C.mor_names
    for m in range(nm):
        if not (0 <= C.dom[m] < n and 0 <= C.cod[m] < n):
            rep.structural.append(f"morphism {names[m]} has domain/codomain outside the object list")
    if len(C.identity) != n:
        rep.structural.append(f"identity table has {len(C.identity)} entries for {n} objects")
    for a, i in enumerate(C.identity):
        if not 0 <= i < nm:
            rep.structural.append(f"identity of {C.objects[a]} is not a morphism id")
    for (a, b, c), arr in sorted(C._blocks.items()):
        bad = np.argwhere((arr < 0) | (arr >= nm))
        for i, j in bad.tolist():
            g, f = C.hom(b, c)[i], C.hom(a, b)[j]
            rep.structural.append(f"missing composite {names[g]} . {names[f]}")
    if rep.structural:
        return rep

    dom, cod = np.array(C.dom, dtype=np.int64), np.array(C.cod, dtype=np.int64)
    for a, i in enumerate(C.identity):
        if C.dom[i] != a or C.cod[i] != a:
            rep.violations.append(Violation("identity typing", (C.objects[a], names[i])))
    typed_ok = {}
    for (a, b, c), arr in sorted(C._blocks.items()):
        ok = (dom[arr] == a) & (cod[arr] == c) if arr.size else np.ones(arr.shape, bool)
        typed_ok[(a, b, c)] = bool(ok.all())
        for i, j in np.argwhere(~ok).tolist():
            g, f = C.hom(b, c)[i], C.hom(a, b)[j]
            rep.violations.append(Violation("composite typing", (names[g], names[f], names[int(arr[i, j])])))
    for m in range(nm):
        a, b = C.dom[m], C.cod[m]
        ia, ib = C.identity[a], C.identity[b]
        if C.dom[ia] != a or C.dom[ib] != b or C.cod[ib] != b:
            continue
        if C.compose(ib, m) != m:
            rep.violations.append(Violation("left unit", (names[ib], names[m])))
        if C.compose(m, ia) != m:
            rep.violations.append(Violation("right unit", (names[m], names[ia])))
    loc = C._local_arr
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if not typed_ok[(a, b, c)]:
                    continue
                gf = C.block(a, b, c)
                if gf.size == 0:
                    continue
                gf_loc = loc[gf]
                for d in range(n):
                    if not (typed_ok[(b, c, d)] and typed_ok[(a, b, d)] and typed_ok[(a, c, d)]):
                        continue
                    hg_blk, left, right = C.block(b, c, d), C.block(a, b, d), C.block(a, c, d)
                    if hg_blk.shape[0] == 0:
                        continue
                    hg_loc = loc[hg_blk]  # (n_cd, n_bc)
                    for h in range(hg_blk.shape[0]):
                        lhs = left[hg_loc[h][:, None], np.arange(gf.shape[1])[None, :]]
                        rhs = right[h][gf_loc]
                        bad = np.argwhere(lhs != rhs)
                        for i, j in bad.tolist():
                            hh, g, f = C.hom(c, d)[h], C.hom(b, c)[i], C.hom(a, b)[j]
                            rep.violations.append(Violation("associativity", (names[hh], names[g], names[f])))
    return rep


def _validate_functor(F: FinFunctor) -> ValidationReport:
    rep = ValidationReport()
    S, T = F.source, F.target
    if len(F.obj_map) != S.n_objects:
        rep.structural.append(f"object map has {len(F.obj_map)} entries for {S.n_objects} objects")
    if len(F.mor_map) != S.n_morphisms:
        rep.structural.append(f"morphism map has {len(F.mor_map)} entries for {S.n_morphisms} morphisms")
    if any(not 0 <= o < T.n_objects for o in F.obj_map):
        rep.structural.append("object map leaves the target category")
    if any(not 0 <= m < T.n_morphisms for m in F.mor_map):
        rep.structural.append("morphism map leaves the target category")
    if rep.structural:
        return rep
    typed = True
    for m in range(S.n_morphisms):
        fm = F.mor_map[m]
        if T.dom[fm] != F.obj_map[S.dom[m]] or T.cod[fm] != F.obj_map[S.cod[m]]:
            typed = False
            rep.violations.append(Violation("preserves domain/codomain", (S.mor_names[m], T.mor_names[fm])))
    for a in range(S.n_objects):
        if F.mor_map[S.identity[a]] != T.identity[F.obj_map[a]]:
            rep.violations.append(Violation("preserves identity", (S.objects[a],)))
    if not typed:
        return rep
    mm = np.array(F.mor_map, dtype=np.int64)
    tloc = T._local_arr
    n = S.n_objects
    for a in range(n):
        for b in range(n):
            for c in range(n):
                blk = S.block(a, b, c)
                if blk.size == 0 or (blk < 0).any():
                    continue
                lhs = mm[blk]
                g_img = tloc[mm[list(S.hom(b, c))]]
                f_img = tloc[mm[list(S.hom(a, b))]]
                tblk = T.block(F.obj_map[a], F.obj_map[b], F.obj_map[c])
                rhs = tblk[g_img[:, None], f_img[None, :]]
                for i, j in np.argwhere(lhs != rhs).tolist():
                    g, f = S.hom(b, c)[i], S.hom(a, b)[j]
                    rep.violations.append(Violation("preserves composition", (S.mor_names[g], S.mor_names[f])))
    return rep


def _validate_nat(alpha: NatTransformation) -> ValidationReport:
    rep = ValidationReport()
    F, G = alpha.source, alpha.target
    if F.source != G.source or F.target != G.target:
        rep.structural.append("source and target functors have different boundaries")
        return rep
    S, T = F.source, F.target
    if len(alpha.components) != S.n_objects:
        rep.structural.append("component table does not cover every object")
        return rep
    for a in range(S.n_objects):
        k = alpha.components[a]
        if not 0 <= k < T.n_morphisms or T.dom[k] != F.obj_map[a] or T.cod[k] != G.obj_map[a]:
            rep.violations.append(Violation("component typing", (S.objects[a],)))
    if rep.violations:
        return rep
    for m in range(S.n_morphisms):
        a, b = S.dom[m], S.cod[m]
        lhs = T.compose(G.mor_map[m], alpha.components[a])
        rhs = T.compose(alpha.components[b], F.mor_map[m])
        if lhs != rhs:
            rep.violations.append(Violation("naturality", (S.mor_names[m],)))
    return rep


# comma categories


@dataclass(frozen=True, eq=False)
class CommaCategory:
    """``F | B`` (``under=False``) or ``B | F`` (``under=True``)."""

    base: FinCategory
    functor: FinFunctor
    anchor: int
    category: FinCategory
    objects: tuple[tuple[int, int], ...]
    projection: FinFunctor
    under: bool = False

    def __len__(self) -> int:
        return len(self.objects)


def comma_category(F: FinFunctor, B: int) -> CommaCategory:
    """Objects ``(a, f: F a -> B)``; arrows ``h: a -> a'`` with ``f = f' . F h``."""
    T = F.target
    if not 0 <= B < T.n_objects:
        raise ValueError(f"anchor {B} is not an object of the target category")
    A = F.source
    objs = [(a, f) for a in range(A.n_objects) for f in T.hom(F.obj_map[a], B)]

    def homs(i, j):
        (a, f), (a2, f2) = objs[i], objs[j]
        return [h for h in A.hom(a, a2) if T.compose(f2, F.mor_map[h]) == f]

    cat = FinCategory.from_homs(
        [f"({A.objects[a]}, {T.mor_names[f]})" for a, f in objs],
        homs,
        lambda g, f: A.compose(g, f),
        lambda i: A.identity[objs[i][0]],
        mor_name=lambda i, j, h: A.mor_names[h],
    )
    proj = FinFunctor(cat, A, tuple(a for a, _ in objs), tuple(cat.data))
    return CommaCategory(A, F, B, cat, tuple(objs), proj)


def comma_under(J: FinFunctor, X: int) -> CommaCategory:
    """Objects ``(a, f: X -> J a)``; arrows ``h: a -> a'`` with ``f' = J h . f``."""
    T = J.target
    if not 0 <= X < T.n_objects:
        raise ValueError(f"anchor {X} is not an object of the target category")
    A = J.source
    objs = [(a, f) for a in range(A.n_objects) for f in T.hom(X, J.obj_map[a])]

    def homs(i, j):
        (a, f), (a2, f2) = objs[i], objs[j]
        return [h for h in A.hom(a, a2) if T.compose(J.mor_map[h], f) == f2]

    cat = FinCategory.from_homs(
        [f"({T.mor_names[f]}, {A.objects[a]})" for a, f in objs],
        homs,
        lambda g, f: A.compose(g, f),
        lambda i: A.identity[objs[i][0]],
        mor_name=lambda i, j, h: A.mor_names[h],
    )
    proj = FinFunctor(cat, A, tuple(a for a, _ in objs), tuple(cat.data))
    return CommaCategory(A, J, X, cat, tuple(objs), proj, under=True)


# equivalences


def find_isomorphism(C: FinCategory, x: int, y: int) -> tuple[int, int] | None:
    """First ``(m: x -> y, n: y -> x)`` with ``n . m = id`` and ``m . n = id``."""
    for m in C.hom(x, y):
        for n in C.hom(y, x):
            if C.compose(n, m) == C.identity[x] and C.compose(m, n) == C.identity[y]:
                return m, n
    return None


@dataclass
class EquivalenceReport:
    faithful: bool
    full: bool
    essentially_surjective: bool
    witnesses: list[str] = field(default_factory=list)
    # target object -> (source object, iso t -> E a, iso E a -> t)
    iso_witnesses: dict[int, tuple[int, int, int]] = field(default_factory=dict)

    @property
    def fully_faithful(self) -> bool:
        return self.faithful and self.full

    @property
    def is_equivalence(self) -> bool:
        return self.faithful and self.full and self.essentially_surjective

    def __bool__(self) -> bool:
        return self.is_equivalence


def check_equivalence(E: FinFunctor) -> EquivalenceReport:
    S, T = E.source, E.target
    faithful = full = True
    witnesses = []
    for a in range(S.n_objects):
        for b in range(S.n_objects):
            images = [E.mor_map[h] for h in S.hom(a, b)]
            if len(set(images)) != len(images):
                faithful = False
                witnesses.append(f"not faithful on hom({S.objects[a]}, {S.objects[b]})")
            missing = set(T.hom(E.obj_map[a], E.obj_map[b])) - set(images)
            if missing:
                full = False
                m = min(missing)
                witnesses.append(f"not full: {T.mor_names[m]} has no preimage in hom({S.objects[a]}, {S.objects[b]})")
    iso = {}
    ess = True
    for t in range(T.n_objects):
        for a in range(S.n_objects):
            w = find_isomorphism(T, t, E.obj_map[a])
            if w is not None:
                iso[t] = (a, w[0], w[1])
                break
        else:
            ess = False
            witnesses.append(f"not essentially surjective: {T.objects[t]} is not isomorphic to any image object")
    return EquivalenceReport(faithful, full, ess, witnesses, iso)


def pseudo_inverse(E: FinFunctor, report: EquivalenceReport | None = None) -> FinFunctor:
    """Inverse equivalence assembled from the isomorphism witnesses."""
    report = report or check_equivalence(E)
    if not report.is_equivalence:
        raise ValueError("functor is not an equivalence")
    S, T = E.source, E.target
    pre: dict[int, int] = {}
    for h in range(S.n_morphisms):
        pre.setdefault(E.mor_map[h], h)
    obj_map = [report.iso_witnesses[t][0] for t in range(T.n_objects)]
    mor_map = []
    for k in range(T.n_morphisms):
        t, t2 = T.dom[k], T.cod[k]
        _, _, n_t = report.iso_witnesses[t]
        _, m_t2, _ = report.iso_witnesses[t2]
        mor_map.append(pre[T.compose(m_t2, T.compose(k, n_t))])
    return FinFunctor(T, S, tuple(obj_map), tuple(mor_map))


# density


@dataclass
class DensityReport:
    dense: bool
    faithful: bool
    full: bool
    failures: list[str] = field(default_factory=list)
    # first non-representable family found: (b, b2, family as tuple of morphism ids)
    exotic: tuple[int, int, tuple[int, ...]] | None = None
    # objects of a smaller full subcategory whose density settled the question
    via: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.dense


def generating_morphisms(C: FinCategory) -> tuple[int, ...]:
    """A set of non-identity morphisms whose composites give every morphism.

    Greedy: morphisms between small objects are tried first and kept only
    when not already a composite of those kept so far.
    """
    n = C.n_objects
    local = np.array(C._local, dtype=np.int64)
    inside = np.zeros(C.n_morphisms, dtype=bool)
    inside[list(C.identity)] = True
    gens = []
    order = sorted(range(C.n_morphisms), key=lambda m: (len(C.hom(C.dom[m], C.dom[m])) + len(C.hom(C.cod[m], C.cod[m])), m))

    def absorb(m):
        queue = [m]
        inside[m] = True
        while queue:
            x = queue.pop()
            a, b = C.dom[x], C.cod[x]
            lx = local[x]
            for c in range(n):
                # g . x for g: b -> c already inside, and x . f for f: c -> a
                hbc = np.array(C.hom(b, c), dtype=np.int64)
                if len(hbc):
                    left = C.block(a, b, c)[inside[hbc], lx]
                    fresh = left[~inside[left]]
                    if len(fresh):
                        fresh = np.unique(fresh)
                        inside[fresh] = True
                        queue.extend(fresh.tolist())
                hca = np.array(C.hom(c, a), dtype=np.int64)
                if len(hca):
                    right = C.block(c, a, b)[lx, inside[hca]]
                    fresh = right[~inside[right]]
                    if len(fresh):
                        fresh = np.unique(fresh)
                        inside[fresh] = True
                        queue.extend(fresh.tolist())

    for m in order:
        if not inside[m]:
            gens.append(m)
            absorb(m)
    return tuple(sorted(gens))


def nerve_naturals(
    G: FinFunctor, b: int, b2: int, gens: Sequence[int] | None = None
) -> tuple[list[tuple[int, int]], list[tuple[int, ...]]]:
    """Natural transformations ``B(G-, b) -> B(G-, b2)`` as tuples of morphism ids.

    Returns the variable list ``(a, x)`` (``x: G a -> b``) and every natural
    family, each giving the image ``G a -> b2`` of each variable.  Naturality
    is imposed along ``gens`` (all non-identity morphisms by default).
    """
    variables, search, doms = _nerve_search(G, b, b2, gens)
    fams = sorted(search.solutions())
    return variables, [tuple(doms[i][v] for i, v in enumerate(fam)) for fam in fams]


def _nerve_search(G: FinFunctor, b: int, b2: int, gens: Sequence[int] | None):
    from .families import FamilySearch

    A, B = G.source, G.target
    if gens is None:
        gens = [u for u in range(A.n_morphisms) if not A.is_identity(u)]
    local = np.array(B._local, dtype=np.int64)
    start, variables = [], []
    for a in range(A.n_objects):
        start.append(len(variables))
        variables.extend((a, x) for x in B.hom(G.obj_map[a], b))
    doms = [B.hom(G.obj_map[a], b2) for a, _ in variables]
    edges = []
    for u in gens:
        a2, a = A.dom[u], A.cod[u]  # u: a2 -> a, presheaf action goes a -> a2
        gu = G.mor_map[u]
        ga2, ga = G.obj_map[a2], G.obj_map[a]
        if not B.hom(ga, b) or not B.hom(ga, b2):
            continue
        lg = local[gu]
        xs = local[B.block(ga2, ga, b)[:, lg]]
        table = tuple(local[B.block(ga2, ga, b2)[:, lg]].tolist())
        for i, xi in enumerate(xs.tolist()):
            edges.append((start[a] + i, start[a2] + xi, table))
    return variables, FamilySearch([len(d) for d in doms], edges), doms


def fully_faithful(G: FinFunctor) -> bool:
    A, B = G.source, G.target
    for a in range(A.n_objects):
        for a2 in range(A.n_objects):
            image = {G.mor_map[m] for m in A.hom(a, a2)}
            if len(image) != len(A.hom(a, a2)) or len(image) != len(B.hom(G.obj_map[a], G.obj_map[a2])):
                return False
    return True


def check_dense(G: FinFunctor, shortcut: bool = True) -> DensityReport:
    """Full faithfulness of ``b |-> B(G-, b)`` by enumeration of naturals.

    With ``shortcut`` and ``G`` fully faithful, prefixes of the source
    objects are tried first: if ``G`` restricted to a full subcategory is
    dense then so is ``G`` (every ``G a`` is then a canonical colimit of the
    smaller diagram, which pins down any natural family).  Objects in the
    image are skipped (Yoneda) and naturality is imposed along generators.
    """
    if shortcut and fully_faithful(G):
        A = G.source
        for k in range(1, A.n_objects):
            sub, inc = full_subcategory(A, range(k))
            restricted = compose_functors(G, inc)
            rep = _check_dense_direct(restricted, set(restricted.obj_map), generating_morphisms(sub))
            if rep.dense:
                rep.via = tuple(range(k))
                return rep
        return _check_dense_direct(G, set(G.obj_map), generating_morphisms(A))
    return _check_dense_direct(G, set(), None)


def _check_dense_direct(G: FinFunctor, skip: set, gens) -> DensityReport:
    A, B = G.source, G.target
    faithful = full = True
    failures = []
    exotic = None
    local = np.array(B._local, dtype=np.int64)
    for b in range(B.n_objects):
        if b in skip:
            continue
        for b2 in range(B.n_objects):
            variables, search, doms = _nerve_search(G, b, b2, gens)
            induced = {}
            for k in B.hom(b, b2):
                lk = local[k]
                fam = []
                for a in range(A.n_objects):
                    ga = G.obj_map[a]
                    if B.hom(ga, b):
                        fam.extend(local[B.block(ga, b, b2)[lk, :]].tolist())
                induced.setdefault(tuple(fam), []).append(k)
            for fam, ks in induced.items():
                if len(ks) > 1:
                    faithful = False
                    failures.append(
                        f"not faithful: {', '.join(B.mor_names[k] for k in ks)} induce the same family into {B.objects[b2]}"
                    )
            for sol in search.solutions():
                if sol not in induced:
                    full = False
                    failures.append(f"not full: non-representable natural family {B.objects[b]} -> {B.objects[b2]}")
                    if exotic is None:
                        exotic = (b, b2, tuple(doms[i][v] for i, v in enumerate(sol)))
                    break
    return DensityReport(faithful and full, faithful, full, failures, exotic)


# JSON schema


def to_json(entity) -> dict:
    if isinstance(entity, FinCategory):
        return {
            "schema": SCHEMA_NAME,
            "version": SCHEMA_VERSION,
            "kind": "category",
            "objects": list(entity.objects),
            "morphisms": [[n, d, c] for n, d, c in zip(entity.mor_names, entity.dom, entity.cod)],
            "identity": list(entity.identity),
            "compose": [list(t) for t in entity.compose_triples()],
        }
    if isinstance(entity, FinFunctor):
        return {
            "schema": SCHEMA_NAME,
            "version": SCHEMA_VERSION,
            "kind": "functor",
            "source": to_json(entity.source),
            "target": to_json(entity.target),
            "obj_map": list(entity.obj_map),
            "mor_map": list(entity.mor_map),
        }
    if isinstance(entity, NatTransformation):
        return {
            "schema": SCHEMA_NAME,
            "version": SCHEMA_VERSION,
            "kind": "natural_transformation",
            "source": to_json(entity.source),
            "target": to_json(entity.target),
            "components": list(entity.components),
        }
    raise TypeError(f"cannot serialise {type(entity).__name__}")


def from_json(doc: dict):
    if doc.get("schema") != SCHEMA_NAME:
        raise SchemaError(f"unknown schema {doc.get('schema')!r}")
    if doc.get("version") != SCHEMA_VERSION:
        raise SchemaError(f"schema version {doc.get('version')!r} != {SCHEMA_VERSION}")
    kind = doc.get("kind")
    try:
        if kind == "category":
            return FinCategory(
                doc["objects"],
                [tuple(m) for m in doc["morphisms"]],
                doc["identity"],
                {(g, f): h for g, f, h in doc["compose"]},
            )
        if kind == "functor":
            return FinFunctor(from_json(doc["source"]), from_json(doc["target"]), doc["obj_map"], doc["mor_map"])
        if kind == "natural_transformation":
            return NatTransformation(from_json(doc["source"]), from_json(doc["target"]), doc["components"])
    except KeyError as exc:
        raise SchemaError(f"missing field {exc}") from None
    raise SchemaError(f"unknown kind {kind!r}")

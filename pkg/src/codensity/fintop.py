"""Finite topological spaces, their open-set lattices, and the topological monads.

A space on points ``0 .. n-1`` stores its opens as sorted bitmasks.  The
filter, lower Vietoris and sobrification monads all come from the same
double-hom recipe: opens are the continuous maps into the Sierpinski space,
and the points of ``T X`` are the homomorphisms from the opens (as a
meet-semilattice, join-semilattice or distributive lattice) into ``2``,
topologised as a subspace of a Sierpinski power.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .finalg import FinAlgebra, homs, two
from .finalg.linear import pointwise
from .monad import ConcreteMonad, Table
from .monadlab import DualAdjunctionSpec, monad_from_dual_adjunction


def bits(mask: int, n: int) -> list[int]:
    return [x for x in range(n) if mask >> x & 1]


def _union_closure(n: int, gens: Iterable[int]) -> tuple[int, ...]:
    out = {0, (1 << n) - 1}
    for g in set(gens):
        out |= {o | g for o in out}
    return tuple(sorted(out))


@dataclass(frozen=True)
class FinTopSpace:
    n: int
    opens: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "opens", tuple(sorted(set(self.opens))))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def check(self) -> list[str]:
        bad = []
        ops = set(self.opens)
        if 0 not in ops:
            bad.append("the empty set is not open")
        if self.full not in ops:
            bad.append("the whole space is not open")
        if any(o >> self.n for o in ops):
            bad.append("an open mentions a point outside the space")
        for u, v in itertools.combinations(self.opens, 2):
            if u | v not in ops:
                bad.append(f"union of {bits(u, self.n)} and {bits(v, self.n)} is not open")
            if u & v not in ops:
                bad.append(f"intersection of {bits(u, self.n)} and {bits(v, self.n)} is not open")
        return bad

    @cached_property
    def neighbourhood(self) -> tuple[int, ...]:
        """The least open containing each point."""
        out = []
        for x in range(self.n):
            m = self.full
            for o in self.opens:
                if o >> x & 1:
                    m &= o
            out.append(m)
        return tuple(out)

    def specialization(self, x: int, y: int) -> bool:
        """``x <= y`` iff every open containing ``x`` contains ``y``."""
        return bool(self.neighbourhood[x] >> y & 1)

    @property
    def closed(self) -> tuple[int, ...]:
        return tuple(sorted(self.full & ~o for o in self.opens))

    def is_t0(self) -> bool:
        return len(set(self.neighbourhood)) == self.n

    def describe(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, bits(o, self.n))) + "}" for o in self.opens) + "}"


def from_subbase(n: int, subbase: Iterable[int]) -> FinTopSpace:
    """The topology generated by ``subbase``: unions of finite intersections."""
    subbase = list(subbase)
    full = (1 << n) - 1
    nbhd = []
    for x in range(n):
        m = full
        for s in subbase:
            if s >> x & 1:
                m &= s
        nbhd.append(m)
    return FinTopSpace(n, _union_closure(n, nbhd))


def discrete(n: int) -> FinTopSpace:
    return FinTopSpace(n, tuple(range(1 << n)))


def indiscrete(n: int) -> FinTopSpace:
    return FinTopSpace(n, tuple({0, (1 << n) - 1}))


def sierpinski() -> FinTopSpace:
    """Points ``0, 1`` with opens ``{}, {1}, {0, 1}``."""
    return FinTopSpace(2, (0, 0b10, 0b11))


def all_topologies(n: int) -> list[FinTopSpace]:
    """Every topology on ``n`` labelled points, as families closed under union and intersection."""
    full = (1 << n) - 1
    middle = [s for s in range(1, full)]
    out = []
    for pick in range(1 << len(middle)):
        ops = {0, full} | {s for i, s in enumerate(middle) if pick >> i & 1}
        if all(u | v in ops and u & v in ops for u in ops for v in ops):
            out.append(FinTopSpace(n, tuple(ops)))
    return out


def preorder_count(n: int) -> int:
    """Number of preorders on ``n`` labelled points (oracle for :func:`all_topologies`)."""
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    count = 0
    for pick in range(1 << len(pairs)):
        rel = {(x, x) for x in range(n)} | {p for i, p in enumerate(pairs) if pick >> i & 1}
        if all((x, z) in rel for (x, y) in rel for (y2, z) in rel if y == y2):
            count += 1
    return count


def is_continuous(X: FinTopSpace, Y: FinTopSpace, f: Sequence[int]) -> bool:
    ops = set(X.opens)
    for v in Y.opens:
        pre = 0
        for x in range(X.n):
            if v >> f[x] & 1:
                pre |= 1 << x
        if pre not in ops:
            return False
    return True


def continuous_maps(X: FinTopSpace, Y: FinTopSpace) -> list[Table]:
    return [f for f in itertools.product(range(Y.n), repeat=X.n) if is_continuous(X, Y, f)]


def homeomorphisms(X: FinTopSpace, Y: FinTopSpace) -> Iterable[Table]:
    if X.n != Y.n or len(X.opens) != len(Y.opens):
        return
    for p in itertools.permutations(range(Y.n)):
        if is_continuous(X, Y, p) and is_continuous(Y, X, _inverse(p)):
            yield p


def homeomorphic(X: FinTopSpace, Y: FinTopSpace) -> bool:
    return next(iter(homeomorphisms(X, Y)), None) is not None


def _inverse(p: Sequence[int]) -> Table:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def t0_quotient(X: FinTopSpace) -> tuple[FinTopSpace, Table]:
    """Identify topologically indistinguishable points."""
    classes: dict[int, int] = {}
    q = []
    for x in range(X.n):
        q.append(classes.setdefault(X.neighbourhood[x], len(classes)))
    opens = []
    for o in X.opens:
        m = 0
        for x in bits(o, X.n):
            m |= 1 << q[x]
        opens.append(m)
    return FinTopSpace(len(classes), tuple(opens)), tuple(q)


# open-set lattices


def opens_algebra(X: FinTopSpace, kind: str = "msl") -> FinAlgebra:
    """The opens in sorted order as a meet-semilattice, join-semilattice or distributive lattice."""
    ops = X.opens
    where = {o: i for i, o in enumerate(ops)}
    meet = tuple(tuple(where[u & v] for v in ops) for u in ops)
    join = tuple(tuple(where[u | v] for v in ops) for u in ops)
    top, bottom = where[X.full], where[0]
    labels = tuple(str(bits(o, X.n)) for o in ops)
    if kind == "msl":
        return FinAlgebra("msl", len(ops), {"top": top}, {}, {"meet": meet}, labels=labels)
    if kind == "jsl":
        return FinAlgebra("jsl", len(ops), {"bottom": bottom}, {}, {"join": join}, labels=labels)
    if kind == "dlat":
        return FinAlgebra("dlat", len(ops), {"top": top, "bottom": bottom}, {}, {"meet": meet, "join": join}, labels=labels)
    raise ValueError(f"no open-set view of kind {kind}")


def sierpinski_subspace(points: Sequence[Sequence[int]]) -> FinTopSpace:
    """Points given as 0/1 vectors, with the subspace topology of the Sierpinski power."""
    n = len(points)
    width = len(points[0]) if points else 0
    subbase = [sum(1 << p for p in range(n) if points[p][a]) for a in range(width)]
    return from_subbase(n, subbase)


def _top_spec(name: str, kind: str) -> DualAdjunctionSpec:
    T = two(kind)

    def dual_maps(X: FinTopSpace):
        # continuous maps into the Sierpinski space are characteristic maps of opens
        return [tuple(o >> x & 1 for x in range(X.n)) for o in X.opens]

    return DualAdjunctionSpec(
        name,
        T,
        dual_maps=dual_maps,
        points=lambda X: X.n,
        carrier_of=lambda A, hs: sierpinski_subspace(hs),
        concrete_maps=continuous_maps,
        estimate=lambda X: len(X.opens),
    )


def filter_spec_top() -> DualAdjunctionSpec:
    return _top_spec("filter-top", "msl")


def lower_vietoris_spec() -> DualAdjunctionSpec:
    return _top_spec("lower-vietoris", "jsl")


def sobrification_spec() -> DualAdjunctionSpec:
    return _top_spec("sobrification", "dlat")


def _hom_space(X: FinTopSpace, kind: str) -> tuple[FinTopSpace, list[Table]]:
    hs = homs(opens_algebra(X, kind), two(kind))
    return sierpinski_subspace(hs), hs


def filter_monad_top(X: FinTopSpace) -> tuple[FinTopSpace, list[Table]]:
    """Filters of opens (as maps opens -> 2), topologised inside the Sierpinski power."""
    return _hom_space(X, "msl")


def sobrification(X: FinTopSpace) -> tuple[FinTopSpace, Table]:
    """Frame homomorphisms ``opens(X) -> 2`` with the unit ``x |-> (U |-> [x in U])``."""
    S, hs = _hom_space(X, "dlat")
    where = {h: i for i, h in enumerate(hs)}
    unit = tuple(where[tuple(o >> x & 1 for o in X.opens)] for x in range(X.n))
    return S, unit


def lower_vietoris(X: FinTopSpace) -> tuple[FinTopSpace, list[int]]:
    """Closed subsets with the topology generated by ``<>U = {C : C meets U}``."""
    closed = list(X.closed)
    n = len(closed)
    subbase = [sum(1 << i for i, c in enumerate(closed) if c & u) for u in X.opens]
    return from_subbase(n, subbase), closed


def complete_ideals(L: FinAlgebra) -> list[int]:
    """Down-closed, join-closed subsets containing the bottom, as bitmasks over ``L``."""
    bot = L.consts["bottom"]
    join = L.binary["join"]
    out = []
    for mask in range(1 << L.size):
        if not mask >> bot & 1:
            continue
        members = bits(mask, L.size)
        if any(L.leq(y, x) and not mask >> y & 1 for x in members for y in range(L.size)):
            continue
        if any(not mask >> join[x][y] & 1 for x in members for y in members):
            continue
        out.append(mask)
    return out


def lower_vietoris_representation(X: FinTopSpace) -> dict[int, int]:
    """Closed set ``C`` to the complete ideal ``{U : U does not meet C}`` of the opens."""
    return {c: sum(1 << i for i, u in enumerate(X.opens) if not u & c) for c in X.closed}


def vietoris_finite_stone(X: FinTopSpace) -> tuple[FinTopSpace, list[int]]:
    """Subsets of a finite discrete space with the hit-or-miss topology."""
    if X != discrete(X.n):
        raise ValueError("finite Stone spaces are discrete")
    subsets = list(range(1 << X.n))
    n = len(subsets)
    subbase = []
    for u in X.opens:
        subbase.append(sum(1 << i for i, c in enumerate(subsets) if c & u))  # hit
        subbase.append(sum(1 << i for i, c in enumerate(subsets) if c & ~u == 0))  # inside
    return from_subbase(n, subbase), subsets


def ideals_of_clopens(X: FinTopSpace) -> list[int]:
    """Ideals of the clopen join-semilattice ``2^X`` (all principal)."""
    return complete_ideals(opens_algebra(X, "jsl"))


def is_coarser(X: FinTopSpace, Y: FinTopSpace) -> bool:
    """Every open of ``X`` is open in ``Y`` (same points)."""
    return X.n == Y.n and set(X.opens) <= set(Y.opens)


TOPOLOGICAL_MONADS = {
    "filter-top": filter_spec_top,
    "lower-vietoris": lower_vietoris_spec,
    "sobrification": sobrification_spec,
}


def space_universe(max_points: int) -> list[FinTopSpace]:
    out = []
    for n in range(max_points + 1):
        out.extend(all_topologies(n))
    return out


def topological_monad(name: str, max_points: int = 2, max_size: int = 4096) -> ConcreteMonad:
    """One of the monads above on all labelled spaces with at most ``max_points`` points."""
    if name not in TOPOLOGICAL_MONADS:
        raise KeyError(f"unknown topological monad {name!r}")
    M = monad_from_dual_adjunction(TOPOLOGICAL_MONADS[name](), space_universe(max_points), max_size)
    return M

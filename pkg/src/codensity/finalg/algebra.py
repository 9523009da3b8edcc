"""Finite algebras as operation tables, with homomorphism search.

Every algebra has carrier ``range(size)`` and three families of operations:
constants, unary operations and binary operations.  Kinds fix the
signature:

* ``ba``: meet, join, neg, top, bottom
* ``msl``: meet, top
* ``jsl``: join, bottom
* ``module``: add, zero and one unary ``scale:<s>`` per semiring element
* ``vect``: as ``module`` over a finite field
* ``dlat``: meet, join, top, bottom (finite frames are these)
* ``set``: no operations
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

BinTable = tuple[tuple[int, ...], ...]

KINDS = ("ba", "msl", "jsl", "module", "vect", "dlat", "set")


class KindError(ValueError):
    pass


@dataclass(frozen=True)
class FinSemiring:
    name: str
    size: int
    add: BinTable
    mul: BinTable
    zero: int
    one: int
    labels: tuple[str, ...] = ()

    def elements(self) -> range:
        return range(self.size)

    def label(self, s: int) -> str:
        return self.labels[s] if self.labels else str(s)

    def check(self) -> list[str]:
        """Semiring axioms over all tuples; empty list when valid."""
        bad = []
        S = range(self.size)
        a, m = self.add, self.mul
        for x, y, z in itertools.product(S, repeat=3):
            if a[a[x][y]][z] != a[x][a[y][z]]:
                bad.append(f"addition not associative at {(x, y, z)}")
            if m[m[x][y]][z] != m[x][m[y][z]]:
                bad.append(f"multiplication not associative at {(x, y, z)}")
            if m[x][a[y][z]] != a[m[x][y]][m[x][z]]:
                bad.append(f"left distributivity fails at {(x, y, z)}")
            if m[a[x][y]][z] != a[m[x][z]][m[y][z]]:
                bad.append(f"right distributivity fails at {(x, y, z)}")
        for x in S:
            for y in S:
                if a[x][y] != a[y][x]:
                    bad.append(f"addition not commutative at {(x, y)}")
            if a[x][self.zero] != x:
                bad.append(f"zero is not additive unit at {x}")
            if m[x][self.one] != x or m[self.one][x] != x:
                bad.append(f"one is not multiplicative unit at {x}")
            if m[x][self.zero] != self.zero or m[self.zero][x] != self.zero:
                bad.append(f"zero does not annihilate {x}")
        return bad


def _table(n, fn) -> BinTable:
    return tuple(tuple(fn(x, y) for y in range(n)) for x in range(n))


def boolean_semiring() -> FinSemiring:
    return FinSemiring("bool", 2, _table(2, lambda x, y: x | y), _table(2, lambda x, y: x & y), 0, 1, ("0", "1"))


def z3_semiring() -> FinSemiring:
    return FinSemiring("z3", 3, _table(3, lambda x, y: (x + y) % 3), _table(3, lambda x, y: x * y % 3), 0, 1)


def chain3_semiring() -> FinSemiring:
    """``({0,1,2}, max, min)``: a distributive-lattice semiring with zero 0, one 2."""
    return FinSemiring("chain3", 3, _table(3, max), _table(3, min), 0, 2)


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    k = len(mod) - 1
    for d in range(len(out) - 1, k - 1, -1):
        c = out[d]
        if c:
            for i in range(k + 1):
                out[d - k + i] = (out[d - k + i] - c * mod[i]) % p
    return (out + [0] * k)[:k]


# monic irreducible polynomials, lowest coefficient first
_IRREDUCIBLE = {(2, 2): [1, 1, 1], (2, 3): [1, 1, 0, 1], (3, 2): [1, 0, 1]}


def finite_field(q: int) -> FinSemiring:
    """GF(q) for ``q`` in 2, 3, 4, 5, 7, 8, 9; elements are base-``p`` digit vectors."""
    for p in (2, 3, 5, 7):
        k, r = 0, q
        while r % p == 0:
            r //= p
            k += 1
        if r == 1 and k:
            break
    else:
        raise ValueError(f"{q} is not a supported prime power")
    if k == 1:
        return FinSemiring(f"GF({q})", q, _table(q, lambda x, y: (x + y) % q), _table(q, lambda x, y: x * y % q), 0, 1)
    if (p, k) not in _IRREDUCIBLE:
        raise ValueError(f"GF({q}) is above the supported cap")
    mod = _IRREDUCIBLE[(p, k)]

    def digits(x):
        return [(x // p**i) % p for i in range(k)]

    def num(ds):
        return sum(d * p**i for i, d in enumerate(ds))

    add = _table(q, lambda x, y: num([(a + b) % p for a, b in zip(digits(x), digits(y))]))
    mul = _table(q, lambda x, y: num(_poly_mulmod(digits(x), digits(y), mod, p)))
    return FinSemiring(f"GF({q})", q, add, mul, 0, 1)


SEMIRINGS = {"bool": boolean_semiring, "z3": z3_semiring, "chain3": chain3_semiring}


def semiring(name: str) -> FinSemiring:
    if name in SEMIRINGS:
        return SEMIRINGS[name]()
    if name.startswith("GF"):
        return finite_field(int(name.strip("GF()")))
    raise KeyError(f"unknown semiring {name!r}")


@dataclass(frozen=True, eq=False)
class FinAlgebra:
    kind: str
    size: int
    consts: dict[str, int] = field(default_factory=dict)
    unary: dict[str, tuple[int, ...]] = field(default_factory=dict)
    binary: dict[str, BinTable] = field(default_factory=dict)
    scalars: FinSemiring | None = None
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise KindError(f"unknown kind {self.kind!r}")

    @property
    def signature(self) -> tuple:
        return (
            self.kind,
            self.scalars.name if self.scalars else None,
            tuple(sorted(self.consts)),
            tuple(sorted(self.unary)),
            tuple(sorted(self.binary)),
        )

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def leq(self, x: int, y: int) -> bool:
        """The order: ``x <= y`` iff ``x meet y = x`` (or ``x join y = y``)."""
        if "meet" in self.binary:
            return self.binary["meet"][x][y] == x
        if "join" in self.binary:
            return self.binary["join"][x][y] == y
        raise KindError(f"{self.kind} carries no order")

    def same_tables(self, other: "FinAlgebra") -> bool:
        return (
            self.signature == other.signature
            and self.size == other.size
            and self.consts == other.consts
            and self.unary == other.unary
            and self.binary == other.binary
        )

    def __eq__(self, other):
        return isinstance(other, FinAlgebra) and self.same_tables(other)

    def __hash__(self):
        return hash((self.signature, self.size, tuple(sorted(self.consts.items())), tuple(sorted(self.binary.items()))))

    def relabel(self, perm: Sequence[int]) -> "FinAlgebra":
        """Isomorphic copy in which old element ``x`` becomes ``perm[x]``."""
        n = self.size
        inv = [0] * n
        for x, y in enumerate(perm):
            inv[y] = x
        consts = {k: perm[v] for k, v in self.consts.items()}
        unary = {k: tuple(perm[t[inv[y]]] for y in range(n)) for k, t in self.unary.items()}
        binary = {k: tuple(tuple(perm[t[inv[y]][inv[z]]] for z in range(n)) for y in range(n)) for k, t in self.binary.items()}
        labels = tuple(self.labels[inv[y]] for y in range(n)) if self.labels else None
        return FinAlgebra(self.kind, n, consts, unary, binary, self.scalars, labels)


def two(kind: str) -> FinAlgebra:
    """The two-element algebra of a lattice kind (``0 < 1``)."""
    if kind == "ba":
        return powerset_ba(1)
    if kind == "msl":
        return FinAlgebra("msl", 2, {"top": 1}, {}, {"meet": _table(2, min)})
    if kind == "jsl":
        return FinAlgebra("jsl", 2, {"bottom": 0}, {}, {"join": _table(2, max)})
    if kind == "dlat":
        return FinAlgebra("dlat", 2, {"top": 1, "bottom": 0}, {}, {"meet": _table(2, min), "join": _table(2, max)})
    if kind == "set":
        return bare(2)
    raise KindError(f"no two-element algebra for {kind}")


def bare(n: int) -> FinAlgebra:
    return FinAlgebra("set", n)


def powerset_ba(n: int) -> FinAlgebra:
    """``2^n`` as subsets (bitmasks) of ``range(n)``."""
    N = 1 << n
    full = N - 1
    return FinAlgebra(
        "ba",
        N,
        {"top": full, "bottom": 0},
        {"neg": tuple(full ^ x for x in range(N))},
        {"meet": _table(N, lambda x, y: x & y), "join": _table(N, lambda x, y: x | y)},
    )


def powerset_msl(n: int, meet: str = "and") -> FinAlgebra:
    """Subsets of ``range(n)`` with intersection (``meet="and"``) or union as the meet."""
    N = 1 << n
    if meet == "and":
        return FinAlgebra("msl", N, {"top": N - 1}, {}, {"meet": _table(N, lambda x, y: x & y)})
    return FinAlgebra("msl", N, {"top": 0}, {}, {"meet": _table(N, lambda x, y: x | y)})


def powerset_jsl(n: int) -> FinAlgebra:
    N = 1 << n
    return FinAlgebra("jsl", N, {"bottom": 0}, {}, {"join": _table(N, lambda x, y: x | y)})


def _vectors(S: FinSemiring, n: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(S.size), repeat=n))


def free_module(S: FinSemiring, n: int, kind: str = "module") -> FinAlgebra:
    """``S^n`` with pointwise operations; vectors indexed in product order."""
    vecs = _vectors(S, n)
    where = {v: i for i, v in enumerate(vecs)}
    add = tuple(tuple(where[tuple(S.add[a][b] for a, b in zip(u, v))] for v in vecs) for u in vecs)
    unary = {f"scale:{s}": tuple(where[tuple(S.mul[s][a] for a in u)] for u in vecs) for s in range(S.size)}
    labels = tuple("(" + ",".join(S.label(a) for a in v) + ")" for v in vecs)
    return FinAlgebra(kind, len(vecs), {"zero": where[(S.zero,) * n]}, unary, {"add": add}, S, labels)


def vector_space(q: int, dim: int, cap: int = 9) -> FinAlgebra:
    if q > cap:
        raise ValueError(f"field size {q} above cap {cap}")
    if dim > 3:
        raise ValueError("dimension above 3 is not supported")
    return free_module(finite_field(q), dim, kind="vect")


def from_meet_order(leq: Sequence[Sequence[bool]], kind: str = "msl") -> FinAlgebra:
    """Meet-semilattice with top (or join-semilattice with bottom) of a finite lattice order."""
    n = len(leq)

    def glb(x, y):
        lower = [z for z in range(n) if leq[z][x] and leq[z][y]]
        best = [z for z in lower if all(leq[w][z] for w in lower)]
        if len(best) != 1:
            raise ValueError(f"no meet of {x} and {y}")
        return best[0]

    def lub(x, y):
        upper = [z for z in range(n) if leq[x][z] and leq[y][z]]
        best = [z for z in upper if all(leq[z][w] for w in upper)]
        if len(best) != 1:
            raise ValueError(f"no join of {x} and {y}")
        return best[0]

    tops = [x for x in range(n) if all(leq[y][x] for y in range(n))]
    bots = [x for x in range(n) if all(leq[x][y] for y in range(n))]
    if kind == "msl":
        return FinAlgebra("msl", n, {"top": tops[0]}, {}, {"meet": _table(n, glb)})
    if kind == "jsl":
        return FinAlgebra("jsl", n, {"bottom": bots[0]}, {}, {"join": _table(n, lub)})
    raise KindError(kind)


# validity


def check_algebra(A: FinAlgebra) -> list[str]:
    """Per-kind axioms checked on all tuples; empty list when valid."""
    bad = []
    n = A.size
    R = range(n)
    expected = {
        "ba": ({"top", "bottom"}, {"neg"}, {"meet", "join"}),
        "msl": ({"top"}, set(), {"meet"}),
        "jsl": ({"bottom"}, set(), {"join"}),
        "dlat": ({"top", "bottom"}, set(), {"meet", "join"}),
        "set": (set(), set(), set()),
    }
    if A.kind in expected:
        c, u, b = expected[A.kind]
        if set(A.consts) != c or set(A.unary) != u or set(A.binary) != b:
            return [f"signature does not match kind {A.kind}"]
    for name, t in A.binary.items():
        if len(t) != n or any(len(r) != n or any(not 0 <= v < n for v in r) for r in t):
            return [f"table {name} is not total on the carrier"]

    def semilattice(op, unit, name):
        for x in R:
            if op[x][x] != x:
                bad.append(f"{name} not idempotent at {x}")
            if op[x][unit] != x:
                bad.append(f"{name} unit fails at {x}")
            for y in R:
                if op[x][y] != op[y][x]:
                    bad.append(f"{name} not commutative at {(x, y)}")
                for z in R:
                    if op[op[x][y]][z] != op[x][op[y][z]]:
                        bad.append(f"{name} not associative at {(x, y, z)}")

    if A.kind == "msl":
        semilattice(A.binary["meet"], A.consts["top"], "meet")
    elif A.kind == "jsl":
        semilattice(A.binary["join"], A.consts["bottom"], "join")
    elif A.kind == "set":
        pass
    elif A.kind == "dlat":
        m, j = A.binary["meet"], A.binary["join"]
        semilattice(m, A.consts["top"], "meet")
        semilattice(j, A.consts["bottom"], "join")
        for x in R:
            for y in R:
                if m[x][j[x][y]] != x or j[x][m[x][y]] != x:
                    bad.append(f"absorption fails at {(x, y)}")
                for z in R:
                    if m[x][j[y][z]] != j[m[x][y]][m[x][z]]:
                        bad.append(f"distributivity fails at {(x, y, z)}")
    elif A.kind == "ba":
        m, j, neg = A.binary["meet"], A.binary["join"], A.unary["neg"]
        top, bot = A.consts["top"], A.consts["bottom"]
        semilattice(m, top, "meet")
        semilattice(j, bot, "join")
        for x in R:
            if m[x][neg[x]] != bot or j[x][neg[x]] != top:
                bad.append(f"complement fails at {x}")
            for y in R:
                if m[x][j[x][y]] != x or j[x][m[x][y]] != x:
                    bad.append(f"absorption fails at {(x, y)}")
                for z in R:
                    if m[x][j[y][z]] != j[m[x][y]][m[x][z]]:
                        bad.append(f"distributivity fails at {(x, y, z)}")
    else:
        S = A.scalars
        if S is None:
            return ["module without scalars"]
        add, zero = A.binary["add"], A.consts["zero"]
        sc = [A.unary[f"scale:{s}"] for s in range(S.size)]
        for x in R:
            if add[x][zero] != x:
                bad.append(f"zero fails at {x}")
            if sc[S.one][x] != x:
                bad.append(f"unit scalar fails at {x}")
            if sc[S.zero][x] != zero:
                bad.append(f"zero scalar fails at {x}")
            for y in R:
                if add[x][y] != add[y][x]:
                    bad.append(f"addition not commutative at {(x, y)}")
                for z in R:
                    if add[add[x][y]][z] != add[x][add[y][z]]:
                        bad.append(f"addition not associative at {(x, y, z)}")
            for s in range(S.size):
                for t in range(S.size):
                    if sc[s][sc[t][x]] != sc[S.mul[s][t]][x]:
                        bad.append(f"scalar associativity fails at {(s, t, x)}")
                    if sc[S.add[s][t]][x] != add[sc[s][x]][sc[t][x]]:
                        bad.append(f"scalar distributivity fails at {(s, t, x)}")
                for y in R:
                    if sc[s][add[x][y]] != add[sc[s][x]][sc[s][y]]:
                        bad.append(f"vector distributivity fails at {(s, x, y)}")
        if A.kind == "vect":
            for x in R:
                if not any(add[x][y] == zero for y in R):
                    bad.append(f"no additive inverse of {x}")
    return bad


# homomorphisms


def is_hom(A: FinAlgebra, B: FinAlgebra, h: Sequence[int]) -> bool:
    if any(h[A.consts[c]] != B.consts[c] for c in A.consts):
        return False
    for name, t in A.unary.items():
        u = B.unary[name]
        if any(h[t[x]] != u[h[x]] for x in range(A.size)):
            return False
    for name, t in A.binary.items():
        u = B.binary[name]
        for x in range(A.size):
            for y in range(A.size):
                if h[t[x][y]] != u[h[x]][h[y]]:
                    return False
    return True


def generating_set(A: FinAlgebra) -> list[int]:
    """Greedy generators in ascending order: each new one is outside the closure so far."""
    gens: list[int] = []
    closed = _closure(A, [])
    for x in range(A.size):
        if x not in closed:
            gens.append(x)
            closed = _closure(A, gens)
    return gens


def _closure(A: FinAlgebra, gens: Sequence[int]) -> set[int]:
    seen = set(A.consts.values()) | set(gens)
    frontier = list(seen)
    while frontier:
        new = []
        for x in frontier:
            for t in A.unary.values():
                if t[x] not in seen:
                    seen.add(t[x])
                    new.append(t[x])
            for t in A.binary.values():
                for y in list(seen):
                    for z in (t[x][y], t[y][x]):
                        if z not in seen:
                            seen.add(z)
                            new.append(z)
        frontier = new
    return seen


def _extend(A: FinAlgebra, B: FinAlgebra, h: list[int], start: Sequence[int]) -> bool:
    """Propagate a partial assignment through every operation; False on conflict."""
    known = [x for x in range(A.size) if h[x] >= 0]
    queue = list(start)
    unary = [(A.unary[k], B.unary[k]) for k in A.unary]
    binary = [(A.binary[k], B.binary[k]) for k in A.binary]

    def put(z, v):
        if h[z] < 0:
            h[z] = v
            known.append(z)
            queue.append(z)
            return True
        return h[z] == v

    while queue:
        x = queue.pop()
        hx = h[x]
        for ta, tb in unary:
            if not put(ta[x], tb[hx]):
                return False
        for ta, tb in binary:
            for y in list(known):
                hy = h[y]
                if not put(ta[x][y], tb[hx][hy]) or not put(ta[y][x], tb[hy][hx]):
                    return False
    return True


def _homs_to_two(A: FinAlgebra, B: FinAlgebra) -> list[tuple[int, ...]]:
    """Homs from a finite lattice-kind algebra into a two-element one.

    The preimage of the top is a principal filter when meets are preserved,
    and the preimage of the bottom a principal ideal when only joins are, so
    checking those ``2 |A|`` candidates is complete.
    """
    lo, hi = (0, 1) if B.leq(0, 1) else (1, 0)
    order = np.array([[A.leq(x, y) for y in range(A.size)] for x in range(A.size)])
    cands = {tuple(np.where(order[a], hi, lo).tolist()) for a in range(A.size)}
    cands |= {tuple(np.where(order[:, a], lo, hi).tolist()) for a in range(A.size)}
    tabs = {k: np.array(t) for k, t in A.binary.items()}
    out = []
    for h in cands:
        if any(h[A.consts[c]] != B.consts[c] for c in A.consts):
            continue
        if any(h[A.unary[k][x]] != B.unary[k][h[x]] for k in A.unary for x in range(A.size)):
            continue
        hv = np.array(h)
        if all(np.array_equal(hv[t], np.array(B.binary[k])[hv[:, None], hv[None, :]]) for k, t in tabs.items()):
            out.append(h)
    return sorted(out)


def homs(A: FinAlgebra, B: FinAlgebra) -> list[tuple[int, ...]]:
    """Every homomorphism ``A -> B``, in lexicographic order of tables."""
    if A.signature != B.signature:
        raise KindError(f"cannot map {A.kind} to {B.kind}")
    if B.size == 2 and A.kind in ("msl", "jsl", "ba", "dlat") and A.size > 0:
        return _homs_to_two(A, B)
    h = [-1] * A.size
    for c, v in A.consts.items():
        if h[v] >= 0 and h[v] != B.consts[c]:
            return []
        h[v] = B.consts[c]
    if not _extend(A, B, h, [x for x in range(A.size) if h[x] >= 0]):
        return []
    gens = [g for g in generating_set(A) if h[g] < 0]
    out = []

    def go(i, h):
        if i == len(gens):
            if all(v >= 0 for v in h):
                out.append(tuple(h))
            return
        g = gens[i]
        if h[g] >= 0:
            go(i + 1, h)
            return
        for v in range(B.size):
            trial = list(h)
            trial[g] = v
            if _extend(A, B, trial, [g]):
                go(i + 1, trial)

    go(0, h)
    return sorted(out)


def homs_bruteforce(A: FinAlgebra, B: FinAlgebra) -> list[tuple[int, ...]]:
    """All maps filtered by :func:`is_hom`; the oracle for small carriers."""
    if A.signature != B.signature:
        raise KindError(f"cannot map {A.kind} to {B.kind}")
    return [h for h in itertools.product(range(B.size), repeat=A.size) if is_hom(A, B, h)]


def isomorphisms(A: FinAlgebra, B: FinAlgebra) -> Iterator[tuple[int, ...]]:
    if A.size != B.size or A.signature != B.signature:
        return
    for h in homs(A, B):
        if len(set(h)) == A.size:
            yield h


def find_isomorphism(A: FinAlgebra, B: FinAlgebra) -> tuple[int, ...] | None:
    return next(isomorphisms(A, B), None)


# order-theoretic subsets


def _subsets(n: int, cap: int = 16) -> range:
    if n > cap:
        raise ValueError(f"subset enumeration over {n} elements is above the cap {cap}")
    return range(1 << n)


def _members(mask: int, n: int) -> list[int]:
    return [x for x in range(n) if mask >> x & 1]


def filters(M: FinAlgebra) -> list[int]:
    """Nonempty, upward closed, meet-closed subsets (bitmasks)."""
    if "meet" not in M.binary:
        raise KindError("filters need a meet")
    n, meet = M.size, M.binary["meet"]
    out = []
    for s in _subsets(n):
        xs = _members(s, n)
        if not xs:
            continue
        if any(not (s >> y & 1) for x in xs for y in range(n) if M.leq(x, y)):
            continue
        if any(not (s >> meet[x][y] & 1) for x in xs for y in xs):
            continue
        out.append(s)
    return out


def ultrafilters(B: FinAlgebra) -> list[int]:
    """Proper filters containing exactly one of ``b`` and ``neg b`` for each ``b``."""
    if B.kind != "ba":
        raise KindError("ultrafilters need a Boolean algebra")
    neg = B.unary["neg"]
    return [
        s
        for s in filters(B)
        if not (s >> B.consts["bottom"] & 1) and all((s >> b & 1) != (s >> neg[b] & 1) for b in range(B.size))
    ]


def ideals(J: FinAlgebra) -> list[int]:
    """Nonempty, downward closed, join-closed subsets (bitmasks)."""
    if "join" not in J.binary:
        raise KindError("ideals need a join")
    n, join = J.size, J.binary["join"]
    out = []
    for s in _subsets(n):
        xs = _members(s, n)
        if not xs:
            continue
        if any(not (s >> y & 1) for x in xs for y in range(n) if J.leq(y, x)):
            continue
        if any(not (s >> join[x][y] & 1) for x in xs for y in xs):
            continue
        out.append(s)
    return out


def hom_to_subset(h: Sequence[int], one: int = 1) -> int:
    """``chi |-> chi^{-1}(1)`` as a bitmask."""
    return sum(1 << x for x, v in enumerate(h) if v == one)


# free algebras


@dataclass(frozen=True, eq=False)
class FreeAlgebra:
    algebra: FinAlgebra
    insertion: tuple[int, ...]  # generator -> element

    def extend(self, B: FinAlgebra, assignment: Sequence[int]) -> tuple[int, ...]:
        """The unique hom agreeing with ``assignment`` on generators."""
        found = [h for h in homs(self.algebra, B) if all(h[g] == v for g, v in zip(self.insertion, assignment))]
        if len(found) != 1:
            raise ValueError(f"{len(found)} extensions of the assignment")
        return found[0]


def free_algebra(kind: str, n: int, scalars: FinSemiring | None = None) -> FreeAlgebra:
    if kind == "ba":
        # elements: sets of valuations 2^n -> 2, as bitmasks over 2^n atoms
        atoms = 1 << n
        A = powerset_ba(atoms)
        gens = tuple(sum(1 << v for v in range(atoms) if v >> i & 1) for i in range(n))
        return FreeAlgebra(A, gens)
    if kind == "msl":
        # finite subsets of generators, meet = union, top = empty set
        return FreeAlgebra(powerset_msl(n, meet="or"), tuple(1 << i for i in range(n)))
    if kind == "jsl":
        return FreeAlgebra(powerset_jsl(n), tuple(1 << i for i in range(n)))
    if kind in ("module", "vect"):
        if scalars is None:
            raise KindError("free modules need a semiring")
        A = free_module(scalars, n, kind)
        vecs = _vectors(scalars, n)
        where = {v: i for i, v in enumerate(vecs)}
        gens = tuple(where[tuple(scalars.one if j == i else scalars.zero for j in range(n))] for i in range(n))
        return FreeAlgebra(A, gens)
    raise KindError(f"no finite free algebras of kind {kind}")

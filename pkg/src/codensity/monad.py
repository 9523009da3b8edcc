"""Monads presented concretely on a finite universe of carriers.

A carrier is any hashable object the monad knows how to measure; its
elements are ``range(size(X))`` and morphisms are function tables.  The
monad supplies its object map, functor action, unit and multiplication as
callables, all returning tables over element indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Sequence

Table = tuple[int, ...]


class UniverseClosureError(RuntimeError):
    """A law check needed a carrier beyond the configured size cap."""


def compose_tables(g: Sequence[int], f: Sequence[int]) -> Table:
    return tuple(g[x] for x in f)


def all_functions(n: int, m: int) -> list[Table]:
    return list(itertools.product(range(m), repeat=n))


@dataclass(eq=False)
class ConcreteMonad:
    name: str
    universe: list
    obj: Callable[[Hashable], Hashable]
    fmap: Callable[[Hashable, Hashable, Table], Table]
    unit: Callable[[Hashable], Table]
    mult: Callable[[Hashable], Table]
    size: Callable[[Hashable], int]
    maps: Callable[[Hashable, Hashable], Iterable[Table]]
    max_size: int = 4096
    describe: Callable[[Hashable, int], str] | None = None

    def __post_init__(self):
        self.obj = lru_cache(maxsize=None)(self.obj)
        self.unit = lru_cache(maxsize=None)(self.unit)
        self.mult = lru_cache(maxsize=None)(self.mult)
        self.fmap = lru_cache(maxsize=None)(self.fmap)

    def guard(self, X: Hashable, what: str) -> None:
        n = self.size(X)
        if n > self.max_size:
            raise UniverseClosureError(f"{self.name}: {what} has {n} elements, above the cap {self.max_size}")


def set_carriers(max_n: int) -> list[int]:
    return list(range(max_n + 1))


def identity_monad(max_n: int = 3) -> ConcreteMonad:
    return ConcreteMonad(
        "identity",
        set_carriers(max_n),
        obj=lambda n: n,
        fmap=lambda X, Y, h: tuple(h),
        unit=lambda n: tuple(range(n)),
        mult=lambda n: tuple(range(n)),
        size=lambda n: n,
        maps=all_functions,
    )


def powerset_monad(max_n: int = 3, max_size: int = 1 << 16) -> ConcreteMonad:
    """Finite powerset on finite sets; subsets of ``range(n)`` are bitmasks."""

    def fmap(X, Y, h):
        out = []
        for s in range(1 << X):
            img = 0
            for x in range(X):
                if s >> x & 1:
                    img |= 1 << h[x]
            out.append(img)
        return tuple(out)

    def mult(X):
        PX = 1 << X
        out = []
        for S in range(1 << PX):
            u = 0
            for s in range(PX):
                if S >> s & 1:
                    u |= s
            out.append(u)
        return tuple(out)

    return ConcreteMonad(
        "powerset",
        set_carriers(max_n),
        obj=lambda n: 1 << n,
        fmap=fmap,
        unit=lambda n: tuple(1 << x for x in range(n)),
        mult=mult,
        size=lambda n: n,
        maps=all_functions,
        max_size=max_size,
    )


@dataclass
class LawReport:
    monad: str
    checked: dict[str, int] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def bump(self, law: str, n: int = 1) -> None:
        self.checked[law] = self.checked.get(law, 0) + n

    def as_dict(self) -> dict:
        return {
            "monad": self.monad,
            "ok": self.ok,
            "checked": dict(sorted(self.checked.items())),
            "failures": list(self.failures),
            "skipped": list(self.skipped),
        }


def check_monad_laws(M: ConcreteMonad, strict: bool = False, naturality: bool = True, max_maps: int = 4096) -> LawReport:
    """Unit laws, associativity, functoriality and naturality on the universe.

    Checks needing a carrier above ``M.max_size`` are skipped and recorded,
    or raise :class:`UniverseClosureError` when ``strict``.
    """
    rep = LawReport(M.name)

    def attempt(label, fn):
        try:
            fn()
        except UniverseClosureError as exc:
            if strict:
                raise
            rep.skipped.append(f"{label}: {exc}")

    for X in M.universe:
        TX = M.obj(X)
        nTX = M.size(TX)

        def units(X=X, TX=TX, nTX=nTX):
            M.guard(TX, f"T({X})")
            TTX = M.obj(TX)
            M.guard(TTX, f"TT({X})")
            mu = M.mult(X)
            left = compose_tables(mu, M.unit(TX))
            right = compose_tables(mu, M.fmap(X, TX, M.unit(X)))
            for t in range(nTX):
                if left[t] != t:
                    rep.failures.append(f"left unit at {X}: mu(eta_T(t)) = {left[t]} for t = {t}")
                if right[t] != t:
                    rep.failures.append(f"right unit at {X}: mu(T eta(t)) = {right[t]} for t = {t}")
            rep.bump("unit", 2 * nTX)

        def assoc(X=X, TX=TX):
            TTX = M.obj(TX)
            M.guard(TTX, f"TT({X})")
            TTTX = M.obj(TTX)
            M.guard(TTTX, f"TTT({X})")
            mu = M.mult(X)
            lhs = compose_tables(mu, M.fmap(TTX, TX, mu))
            rhs = compose_tables(mu, M.mult(TX))
            for w in range(M.size(TTTX)):
                if lhs[w] != rhs[w]:
                    rep.failures.append(
                        f"associativity at {X}: element {w} of TTT({X}) goes to {lhs[w]} via T mu and {rhs[w]} via mu T"
                    )
            rep.bump("associativity", M.size(TTTX))

        def ident(X=X, TX=TX):
            M.guard(TX, f"T({X})")
            idt = tuple(range(M.size(X)))
            if M.fmap(X, X, idt) != tuple(range(M.size(TX))):
                rep.failures.append(f"functor identity at {X}")
            rep.bump("functor identity")

        attempt(f"unit laws at {X}", units)
        attempt(f"associativity at {X}", assoc)
        attempt(f"functor identity at {X}", ident)

    if naturality:
        for X, Y in itertools.product(M.universe, repeat=2):
            hs = list(itertools.islice(M.maps(X, Y), max_maps))

            def nat(X=X, Y=Y, hs=hs):
                TX, TY = M.obj(X), M.obj(Y)
                M.guard(TX, f"T({X})")
                M.guard(TY, f"T({Y})")
                etaX, etaY = M.unit(X), M.unit(Y)
                for h in hs:
                    Th = M.fmap(X, Y, h)
                    if compose_tables(Th, etaX) != compose_tables(etaY, h):
                        rep.failures.append(f"unit naturality for {X} -> {Y} along {h}")
                rep.bump("unit naturality", len(hs))
                TTX, TTY = M.obj(TX), M.obj(TY)
                M.guard(TTX, f"TT({X})")
                M.guard(TTY, f"TT({Y})")
                muX, muY = M.mult(X), M.mult(Y)
                for h in hs:
                    Th = M.fmap(X, Y, h)
                    TTh = M.fmap(TX, TY, Th)
                    if compose_tables(Th, muX) != compose_tables(muY, TTh):
                        rep.failures.append(f"multiplication naturality for {X} -> {Y} along {h}")
                rep.bump("multiplication naturality", len(hs))

            attempt(f"naturality {X} -> {Y}", nat)

        for X, Y, Z in itertools.product(M.universe, repeat=3):
            fs = list(itertools.islice(M.maps(X, Y), 16))
            gs = list(itertools.islice(M.maps(Y, Z), 16))

            def comp(X=X, Y=Y, Z=Z, fs=fs, gs=gs):
                for f in fs:
                    for g in gs:
                        gf = compose_tables(g, f)
                        if M.fmap(X, Z, gf) != compose_tables(M.fmap(Y, Z, g), M.fmap(X, Y, f)):
                            rep.failures.append(f"functor composition {X} -> {Y} -> {Z}")
                rep.bump("functor composition", len(fs) * len(gs))

            attempt(f"functor composition {X} -> {Y} -> {Z}", comp)
    return rep


def with_fault(M: ConcreteMonad, X: Hashable, element: int, value: int, which: str = "mult") -> ConcreteMonad:
    """Copy of ``M`` whose unit or multiplication at ``X`` is overwritten at one element."""
    base_unit, base_mult = M.unit, M.mult

    def unit(Y):
        t = list(base_unit(Y))
        if which == "unit" and Y == X:
            t[element] = value
        return tuple(t)

    def mult(Y):
        t = list(base_mult(Y))
        if which == "mult" and Y == X:
            t[element] = value
        return tuple(t)

    return ConcreteMonad(
        f"{M.name} (fault)", list(M.universe), M.obj, M.fmap, unit, mult, M.size, M.maps, M.max_size, M.describe
    )


def monad_isomorphism(M1: ConcreteMonad, M2: ConcreteMonad, max_maps: int = 256) -> dict | None:
    """A family of bijections ``T1 X -> T2 X`` commuting with units, multiplications and actions.

    Candidates at each carrier are constrained by the units first (images of
    unit elements are forced), then searched over bijections of the rest with
    naturality checked along universe morphisms.  ``None`` means no such
    family exists on the universe.
    """
    if list(M1.universe) != list(M2.universe):
        raise ValueError("monads are presented on different universes")
    comps: dict = {}
    universe = list(M1.universe)
    for X in universe:
        n1, n2 = M1.size(M1.obj(X)), M2.size(M2.obj(X))
        if n1 != n2:
            return None
    # enumerate per carrier, smallest first, keeping consistent choices
    order = sorted(universe, key=lambda X: M1.size(M1.obj(X)))

    def candidates(X):
        T1, T2 = M1.obj(X), M2.obj(X)
        n = M1.size(T1)
        e1, e2 = M1.unit(X), M2.unit(X)
        forced = {}
        for x in range(M1.size(X)):
            if forced.get(e1[x], e2[x]) != e2[x]:
                return
            forced[e1[x]] = e2[x]
        if len(set(forced.values())) != len(forced):
            return
        free_src = [t for t in range(n) if t not in forced]
        free_dst = [t for t in range(n) if t not in set(forced.values())]
        if len(free_src) > 8:
            raise UniverseClosureError(f"isomorphism search at {X}: {len(free_src)} unforced elements")
        for perm in itertools.permutations(free_dst):
            table = [0] * n
            for s, t in forced.items():
                table[s] = t
            for s, t in zip(free_src, perm):
                table[s] = t
            yield tuple(table)

    def consistent(X, theta):
        for Y in comps:
            for A, B in ((X, Y), (Y, X)):
                ta, tb = (theta if A == X else comps[A]), (theta if B == X else comps[B])
                for h in itertools.islice(M1.maps(A, B), max_maps):
                    if compose_tables(tb, M1.fmap(A, B, h)) != compose_tables(M2.fmap(A, B, h), ta):
                        return False
        for h in itertools.islice(M1.maps(X, X), max_maps):
            if compose_tables(theta, M1.fmap(X, X, h)) != compose_tables(M2.fmap(X, X, h), theta):
                return False
        return True

    def search(i):
        if i == len(order):
            return True
        X = order[i]
        for theta in candidates(X):
            if consistent(X, theta):
                comps[X] = theta
                if search(i + 1):
                    return True
                del comps[X]
        return False

    if not search(0):
        return None
    # multiplication compatibility, where a component at T X is available
    for X in universe:
        TX1, TX2 = M1.obj(X), M2.obj(X)
        if TX1 not in comps:
            continue
        horiz = compose_tables(M2.fmap(TX1, TX2, comps[X]), comps[TX1])
        if compose_tables(comps[X], M1.mult(X)) != compose_tables(M2.mult(X), horiz):
            return None
    return comps

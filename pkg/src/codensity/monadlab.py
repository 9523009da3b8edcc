"""Monads from dual adjunctions and the comparison with codensity limits.

A dual adjunction of double-hom form is fixed by a dualizing algebra ``T``
whose carrier doubles as the concrete dualizing object ``S``:

* ``L X`` is the set of admissible maps ``X -> S`` with pointwise structure,
* ``R A`` is ``homs(A, T)`` made into a concrete object,
* the monad is ``R L`` with unit ``x |-> (a |-> a(x))`` and multiplication
  ``Psi |-> (a |-> Psi(ev_a))`` where ``ev_a(t) = t(a)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Hashable, Iterable, Sequence

from .finalg import FinAlgebra, bare, free_module, homs, is_hom, pointwise, semiring, two
from .monad import (
    ConcreteMonad,
    LawReport,
    Table,
    UniverseClosureError,
    all_functions,
    check_monad_laws,
    compose_tables,
    identity_monad,
    monad_isomorphism,
    powerset_monad,
    with_fault,
)
from .setdiag import CodensityValue, Fragment, codensity_at, codensity_fmap, codensity_mult, truncated_codensity

__all__ = [
    "ConcreteMonad",
    "DualAdjunctionSpec",
    "LawReport",
    "check_monad_laws",
    "comparison_harness",
    "monad_from_dual_adjunction",
    "monad_isomorphism",
    "preset",
    "with_fault",
]


@dataclass(eq=False)
class DualAdjunctionSpec:
    """Double-hom dual adjunction between a concrete category and algebras of ``T``'s kind.

    ``dual_maps(X)`` lists the admissible maps ``X -> S`` (as tables over
    the points of ``X``); it must be closed under the pointwise operations
    of ``T``.  ``carrier_of(A, hs)`` turns ``homs(A, T)`` into a concrete
    object; ``points(X)`` counts the points of a concrete object and
    ``concrete_maps(X, Y)`` lists its morphisms.
    """

    name: str
    T: FinAlgebra
    dual_maps: Callable[[Hashable], list[Table]]
    points: Callable[[Hashable], int]
    carrier_of: Callable[[FinAlgebra, list[Table]], Hashable]
    concrete_maps: Callable[[Hashable, Hashable], Iterable[Table]]
    estimate: Callable[[Hashable], int] | None = None  # number of dual maps, when cheap to predict
    cap: int = 4096

    def __post_init__(self):
        self._L: dict = {}
        self._maps: dict = {}
        self._R: dict = {}

    def L_maps(self, X) -> tuple[list[Table], dict]:
        """The admissible maps ``X -> S`` and their index, without the algebra structure."""
        if X not in self._maps:
            if self.estimate is not None and self.estimate(X) > self.cap:
                raise UniverseClosureError(f"{self.name}: L({X}) is above the cap {self.cap}")
            maps = [tuple(m) for m in self.dual_maps(X)]
            self._maps[X] = (maps, {m: i for i, m in enumerate(maps)})
        return self._maps[X]

    def L(self, X) -> tuple[FinAlgebra, list[Table], dict]:
        if X not in self._L:
            maps, where = self.L_maps(X)
            self._L[X] = (pointwise(self.T, maps), maps, where)
        return self._L[X]

    def R(self, A: FinAlgebra) -> tuple[list[Table], dict]:
        key = id(A)
        if key not in self._R:
            n = self.T.size**A.size if A.kind == "set" else A.size
            if n > self.cap:
                raise UniverseClosureError(f"{self.name}: R of an algebra of size {A.size} exceeds the cap {self.cap}")
            hs = homs(A, self.T)
            self._R[key] = (A, hs, {h: i for i, h in enumerate(hs)})
        return self._R[key][1], self._R[key][2]

    def RL(self, X):
        A, _, _ = self.L(X)
        hs, _ = self.R(A)
        return self.carrier_of(A, hs)

    def unit(self, X) -> Table:
        A, maps, _ = self.L(X)
        hs, where = self.R(A)
        return tuple(where[tuple(a[x] for a in maps)] for x in range(self.points(X)))

    def fmap(self, X, Y, h: Sequence[int]) -> Table:
        AX, mapsX, whereX = self.L(X)
        AY, mapsY, _ = self.L(Y)
        hsX, _ = self.R(AX)
        hsY, whereY = self.R(AY)
        pulled = [whereX[tuple(b[y] for y in h)] for b in mapsY]
        return tuple(whereY[tuple(t[i] for i in pulled)] for t in hsX)

    def mult(self, X) -> Table:
        AX, mapsX, _ = self.L(X)
        hsX, whereX = self.R(AX)
        TX = self.carrier_of(AX, hsX)
        ATX, mapsTX, whereTX = self.L(TX)
        hsTTX, _ = self.R(ATX)
        ev = []
        for a in range(len(mapsX)):
            table = tuple(t[a] for t in hsX)
            if table not in whereTX:
                raise ValueError(f"{self.name}: evaluation at a dual element is not an admissible map on T X")
            ev.append(whereTX[table])
        return tuple(whereX[tuple(P[e] for e in ev)] for P in hsTTX)

    def eval_counit(self, A: FinAlgebra) -> Table:
        """``A -> L R A``, ``m |-> (phi |-> phi(m))``, as indices into ``L(R A)``."""
        hs, _ = self.R(A)
        RA = self.carrier_of(A, hs)
        maps, where = self.L_maps(RA)
        out = []
        for m in range(A.size):
            t = tuple(phi[m] for phi in hs)
            if t not in where:
                raise ValueError(f"{self.name}: evaluation at an element is not an admissible map on R A")
            out.append(where[t])
        return tuple(out)

    def triangle_identities(self, carriers: Sequence, algebras: Sequence[FinAlgebra], skipped: list | None = None) -> list[str]:
        """Both triangle identities checked elementwise; empty list when they hold.

        Objects whose double dual is above the cap are left out and named in ``skipped``.
        """
        bad = []
        for A in algebras:
            hs, where = self.R(A)
            RA = self.carrier_of(A, hs)
            try:
                eps = self.eval_counit(A)
                LRA, maps, _ = self.L(RA)
                self.R(LRA)
            except UniverseClosureError as exc:
                if skipped is None:
                    raise
                skipped.append(f"algebra of size {A.size}: {exc}")
                continue
            if not is_hom(A, LRA, eps):
                bad.append(f"{self.name}: evaluation A -> L R A is not a homomorphism for an algebra of size {A.size}")
                continue
            eta = self.unit(RA)
            hsRL, _ = self.R(LRA)
            # R(eps) . eta_{RA}: phi |-> eta(phi) . eps
            for i in range(len(hs)):
                back = tuple(hsRL[eta[i]][e] for e in eps)
                if where.get(back) != i:
                    bad.append(f"{self.name}: R eps . eta R differs from the identity at element {i} of R A (|A| = {A.size})")
        for X in carriers:
            AX, mapsX, whereX = self.L(X)
            eta = self.unit(X)
            try:
                eps = self.eval_counit(AX)
                mapsRL, _ = self.L_maps(self.RL(X))
            except UniverseClosureError as exc:
                if skipped is None:
                    raise
                skipped.append(f"carrier {X}: {exc}")
                continue
            # L(eta) . eps_{LX}: a |-> eps(a) . eta
            for a in range(len(mapsX)):
                back = tuple(mapsRL[eps[a]][eta[x]] for x in range(self.points(X)))
                if whereX.get(back) != a:
                    bad.append(f"{self.name}: L eta . eps L differs from the identity at element {a} of L X")
        return bad


def monad_from_dual_adjunction(spec: DualAdjunctionSpec, universe: Sequence, max_size: int = 4096) -> ConcreteMonad:
    M = ConcreteMonad(
        spec.name,
        list(universe),
        obj=spec.RL,
        fmap=spec.fmap,
        unit=spec.unit,
        mult=spec.mult,
        size=spec.points,
        maps=spec.concrete_maps,
        max_size=max_size,
    )
    spec.cap = max_size
    M.spec = spec
    return M


# set-based specs


def _set_spec(name: str, T: FinAlgebra) -> DualAdjunctionSpec:
    return DualAdjunctionSpec(
        name,
        T,
        dual_maps=lambda n: all_functions(n, T.size),
        points=lambda n: n,
        carrier_of=lambda A, hs: len(hs),
        concrete_maps=all_functions,
        estimate=lambda n: T.size**n,
    )


def ultrafilter_spec() -> DualAdjunctionSpec:
    return _set_spec("ultrafilter", two("ba"))


def filter_spec() -> DualAdjunctionSpec:
    return _set_spec("filter", two("msl"))


def neighbourhood_spec() -> DualAdjunctionSpec:
    return _set_spec("neighbourhood", bare(2))


def vietoris_finite_spec() -> DualAdjunctionSpec:
    """Finite discrete spaces: ``JSL(2^X, 2)``."""
    return _set_spec("vietoris-finite", two("jsl"))


def measure_spec(scalars: str = "bool") -> DualAdjunctionSpec:
    S = semiring(scalars)
    return _set_spec(f"m_s({scalars})", free_module(S, 1))


def _algebra_spec(name: str, T: FinAlgebra) -> DualAdjunctionSpec:
    """Self-dual double dualisation on algebras of ``T``'s kind."""
    return DualAdjunctionSpec(
        name,
        T,
        dual_maps=lambda A: homs(A, T),
        points=lambda A: A.size,
        carrier_of=lambda A, hs: pointwise(T, hs),
        concrete_maps=lambda A, B: homs(A, B),
    )


def msl_double_dual_spec() -> DualAdjunctionSpec:
    return _algebra_spec("msl-double-dual", two("msl"))


def vect_double_dual_spec(q: int = 2) -> DualAdjunctionSpec:
    from .finalg import finite_field

    return _algebra_spec(f"vect-double-dual({q})", free_module(finite_field(q), 1, kind="vect"))


def identity_on(universe: Sequence, maps: Callable) -> ConcreteMonad:
    return ConcreteMonad(
        "identity",
        list(universe),
        obj=lambda X: X,
        fmap=lambda X, Y, h: tuple(h),
        unit=lambda X: tuple(range(X.size if isinstance(X, FinAlgebra) else X)),
        mult=lambda X: tuple(range(X.size if isinstance(X, FinAlgebra) else X)),
        size=lambda X: X.size if isinstance(X, FinAlgebra) else X,
        maps=maps,
    )


PRESETS = (
    "ultrafilter",
    "filter",
    "neighbourhood",
    "msl-double-dual",
    "vect-double-dual",
    "m_s",
    "vietoris-finite",
    "lower-vietoris",
    "sobrification",
    "filter-top",
    "expectation-finite",
)


def preset(name: str, max_carrier: int = 3, semiring_name: str = "bool", q: int = 2, max_size: int = 4096) -> ConcreteMonad:
    """A named monad on its default universe (finite sets ``0 .. max_carrier`` unless noted)."""
    universe = list(range(max_carrier + 1))
    if name == "ultrafilter":
        return monad_from_dual_adjunction(ultrafilter_spec(), universe, max_size)
    if name == "filter":
        return monad_from_dual_adjunction(filter_spec(), universe, max_size)
    if name == "neighbourhood":
        # the double powerset: multiplication is only materialised at |X| <= 1
        return monad_from_dual_adjunction(neighbourhood_spec(), universe, max(max_size, 1 << 16))
    if name == "vietoris-finite":
        return monad_from_dual_adjunction(vietoris_finite_spec(), universe, max_size)
    if name == "m_s":
        return monad_from_dual_adjunction(measure_spec(semiring_name), universe, max_size)
    if name == "msl-double-dual":
        from .finalg import enumerate_catalog

        return monad_from_dual_adjunction(msl_double_dual_spec(), list(enumerate_catalog("msl", max(max_carrier, 1) + 1).representatives), max_size)
    if name == "vect-double-dual":
        from .finalg import vector_space

        return monad_from_dual_adjunction(vect_double_dual_spec(q), [vector_space(q, d) for d in range(min(max_carrier, 2) + 1)], max_size)
    if name in ("lower-vietoris", "sobrification", "filter-top"):
        from . import fintop

        return fintop.topological_monad(name, max_points=max_carrier, max_size=max_size)
    if name == "expectation-finite":
        raise ValueError("the expectation monad has infinite values; use the probfin module")
    raise KeyError(f"unknown preset {name!r}")


# comparison with the codensity limit


@dataclass
class LevelVerdict:
    level: int
    limit_size: int
    injective: bool
    surjective: bool
    lands_in_limit: bool

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective and self.lands_in_limit


@dataclass
class ComparisonReport:
    bundle: str
    carrier: int
    monad_size: int
    levels: list[LevelVerdict] = field(default_factory=list)
    first_bijective: int | None = None
    stabilized_at: int | None = None
    unit_preserved: bool | None = None
    mult_preserved: bool | None = None
    mult_level: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.first_bijective is not None and bool(self.unit_preserved) and self.mult_preserved is not False

    def as_dict(self) -> dict:
        return {
            "bundle": self.bundle,
            "carrier": self.carrier,
            "monad_size": self.monad_size,
            "levels": [
                {
                    "level": v.level,
                    "limit_size": v.limit_size,
                    "injective": v.injective,
                    "surjective": v.surjective,
                    "lands_in_limit": v.lands_in_limit,
                }
                for v in self.levels
            ],
            "first_bijective": self.first_bijective,
            "stabilized_at": self.stabilized_at,
            "unit_preserved": self.unit_preserved,
            "mult_preserved": self.mult_preserved,
            "mult_level": self.mult_level,
            "notes": list(self.notes),
        }


def comparison_map(bundle, n: int, value: CodensityValue) -> list[tuple[int, ...]]:
    """``omega``: each ``t`` in ``R L X`` sent to the family ``f |-> psi_C(t . f^t)``.

    For ``f: X -> F C``, ``f^(x) = psi_C^{-1}(f(x))`` is a hom ``G E C -> T``
    and ``f^t: G E C -> L X`` swaps the arguments.
    """
    spec = bundle.adjunction
    AX, mapsX, whereX = spec.L(n)
    hsX, _ = spec.R(AX)
    label_to_c = {bundle.F.index.objects[c]: c for c in range(bundle.F.index.n_objects)}
    columns = []
    for label, f in value.keys:
        c = label_to_c[label]
        A, hs, where, psi, psi_inv = bundle.square_data(c)
        hat = [hs[psi_inv[f[x]]] for x in range(n)]
        ft = []
        for d in range(A.size):
            m = tuple(h[d] for h in hat)
            if m not in whereX:
                raise ValueError(f"transpose of a comma object at {label} is not an admissible map")
            ft.append(whereX[m])
        columns.append((ft, where, psi))
    out = []
    for t in hsX:
        fam = []
        for ft, where, psi in columns:
            fam.append(psi[where[tuple(t[a] for a in ft)]])
        out.append(tuple(fam))
    return out


def comparison_harness(bundle, n: int, k_max: int, levels: Sequence[int] | None = None, mult_cap: int = 5000) -> ComparisonReport:
    """Compare ``R L X`` with the truncated codensity limits of the bundle's fragment family.

    Multiplication is checked at the first bijective level, provided the
    comma category at ``|T X|`` has at most ``mult_cap`` objects.
    """
    spec = bundle.adjunction
    TX = spec.RL(n)
    chain = truncated_codensity(bundle.fragment, n, k_max, levels if levels is not None else bundle.levels)
    rep = ComparisonReport(bundle.name, n, TX, stabilized_at=chain.stabilized_at)
    omegas = {}
    for k, v in zip(chain.levels, chain.values):
        fams = comparison_map(bundle, n, v)
        idx = [v.index_of(f) for f in fams]
        lands = all(i is not None for i in idx)
        good = [i for i in idx if i is not None]
        verdict = LevelVerdict(k, len(v), len(set(good)) == len(good) and lands, set(good) == set(range(len(v))), lands)
        rep.levels.append(verdict)
        omegas[k] = (v, tuple(idx) if lands else None)
        if verdict.bijective and rep.first_bijective is None:
            rep.first_bijective = k
    if rep.first_bijective is None:
        rep.notes.append("no bijective level up to k_max; the chain may need larger fragments")
        return rep
    k = rep.first_bijective
    value, omega = omegas[k]
    eta = spec.unit(n)
    rep.unit_preserved = all(omega[eta[x]] == value.unit[x] for x in range(n))
    frag = bundle.fragment(k)
    comma_size = sum(s ** TX for s in frag.sizes)
    if comma_size > mult_cap:
        rep.notes.append(f"multiplication check skipped: comma category at |T X| = {TX} has {comma_size} objects")
        return rep
    rep.mult_level = k
    outer_T = codensity_at(frag, TX)
    omega_T_fams = comparison_map(bundle, TX, outer_T)
    omega_T = [outer_T.index_of(f) for f in omega_T_fams]
    if any(i is None for i in omega_T):
        rep.mult_preserved = False
        rep.notes.append("comparison at T X does not land in the limit")
        return rep
    cody_of_cody = outer_T if len(value) == TX else codensity_at(frag, len(value))
    cody_omega = codensity_fmap(outer_T, cody_of_cody, omega)  # Cody(T X) -> Cody(Cody X)
    mu_c = codensity_mult(value, cody_of_cody)
    mu_rl = spec.mult(n)
    lhs = [omega[mu_rl[P]] for P in range(len(mu_rl))]
    rhs = [mu_c[cody_omega[omega_T[P]]] for P in range(len(mu_rl))]
    rep.mult_preserved = lhs == rhs
    if not rep.mult_preserved:
        bad = next(P for P in range(len(lhs)) if lhs[P] != rhs[P])
        rep.notes.append(f"multiplication differs at element {bad} of R L R L X")
    return rep

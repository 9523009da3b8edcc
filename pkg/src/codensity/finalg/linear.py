"""Hom-algebras with pointwise structure: duals, powers and double duals."""

from __future__ import annotations

import itertools
from typing import Sequence

from .algebra import FinAlgebra, KindError, homs, vector_space


def pointwise(T: FinAlgebra, maps: Sequence[tuple[int, ...]], kind: str | None = None) -> FinAlgebra:
    """The maps into ``T`` with operations computed pointwise.

    ``maps`` must be closed under the pointwise operations; the result's
    elements are indices into ``maps``.
    """
    maps = [tuple(m) for m in maps]
    where = {m: i for i, m in enumerate(maps)}
    if len(where) != len(maps):
        raise ValueError("duplicate maps")
    width = len(maps[0]) if maps else 0

    def lookup(m):
        try:
            return where[m]
        except KeyError:
            raise ValueError("maps are not closed under the pointwise operations") from None

    consts = {k: lookup((v,) * width) for k, v in T.consts.items()}
    unary = {k: tuple(lookup(tuple(t[a] for a in m)) for m in maps) for k, t in T.unary.items()}
    binary = {
        k: tuple(tuple(lookup(tuple(t[a][b] for a, b in zip(m, p))) for p in maps) for m in maps) for k, t in T.binary.items()
    }
    return FinAlgebra(kind or T.kind, len(maps), consts, unary, binary, T.scalars)


def power(T: FinAlgebra, n: int) -> tuple[FinAlgebra, list[tuple[int, ...]]]:
    """``T^n`` as all functions ``range(n) -> |T|`` with pointwise structure."""
    maps = list(itertools.product(range(T.size), repeat=n))
    return pointwise(T, maps), maps


def hom_algebra(A: FinAlgebra, T: FinAlgebra) -> tuple[FinAlgebra, list[tuple[int, ...]]]:
    """``homs(A, T)`` with the pointwise structure inherited from ``T``."""
    hs = homs(A, T)
    return pointwise(T, hs), hs


def field_line(V: FinAlgebra) -> FinAlgebra:
    """The scalar field of ``V`` as a one-dimensional space."""
    if V.kind != "vect":
        raise KindError("field_line needs a vector space")
    from .algebra import free_module

    return free_module(V.scalars, 1, kind="vect")


def dual_space(V: FinAlgebra) -> tuple[FinAlgebra, list[tuple[int, ...]]]:
    """``V* = homs(V, F)`` with pointwise operations (elements index the linear forms)."""
    return hom_algebra(V, field_line(V))


def double_dual_map(V: FinAlgebra) -> tuple[int, ...]:
    """``v |-> (phi |-> phi(v))`` as a table ``V -> V**``."""
    Vs, forms = dual_space(V)
    Vss, fforms = dual_space(Vs)
    where = {f: i for i, f in enumerate(fforms)}
    return tuple(where[tuple(phi[v] for phi in forms)] for v in range(V.size))


def vector_space_ops(q: int, dim: int) -> FinAlgebra:
    return vector_space(q, dim)

"""Finite relations as Kleisli maps of the finite powerset monad.

A relation ``X -> P(Y)`` with ``|X| = n`` is a tuple of ``n`` bitmasks over
``range(|Y|)``.
"""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from ..fincat import FinCategory

Relation = tuple[int, ...]


def rel_compose(g: Relation, f: Relation) -> Relation:
    """``(g . f)(x) = union of g(y) over y in f(x)``."""
    out = []
    for fx in f:
        acc, y = 0, 0
        while fx:
            if fx & 1:
                acc |= g[y]
            fx >>= 1
            y += 1
        out.append(acc)
    return tuple(out)


def rel_identity(n: int) -> Relation:
    return tuple(1 << x for x in range(n))


def rel_transpose(f: Relation, n_y: int) -> Relation:
    """``f^op(y) = {x : y in f(x)}``."""
    return tuple(sum(1 << x for x, fx in enumerate(f) if fx >> y & 1) for y in range(n_y))


def graph(h: Sequence[int]) -> Relation:
    return tuple(1 << y for y in h)


def extension(f: Relation, n_x: int) -> tuple[int, ...]:
    """``f^#: P X -> P Y``, ``S |-> union of f(x) over x in S``."""
    out = []
    for S in range(1 << n_x):
        acc = 0
        for x in range(n_x):
            if S >> x & 1:
                acc |= f[x]
        out.append(acc)
    return tuple(out)


def random_relation(rng: random.Random, n_x: int, n_y: int) -> Relation:
    return tuple(rng.randrange(1 << n_y) for _ in range(n_x))


def all_relations(n_x: int, n_y: int) -> list[Relation]:
    return list(itertools.product(range(1 << n_y), repeat=n_x))


def rel_kleisli_category(bound: int) -> FinCategory:
    """Finite sets ``0 .. bound`` with all relations, materialised."""
    sizes = list(range(bound + 1))
    return FinCategory.from_homs(
        [str(n) for n in sizes],
        lambda a, b: all_relations(sizes[a], sizes[b]),
        rel_compose,
        lambda a: rel_identity(sizes[a]),
        mor_name=lambda a, b, d: f"{a}->{b}:{list(d)}",
    )

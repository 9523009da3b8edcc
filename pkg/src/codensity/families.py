"""Enumeration of compatible families under functional constraints.

Every finite limit, natural-transformation set and cocone set in this package
reduces to the same search: a finite set of variables, each ranging over a
finite domain ``range(d)``, linked by *functional* edges ``(u, v, table)``
demanding ``value[v] == table[value[u]]``.  The solver keeps domains
arc-consistent (propagating each edge forward through the table and
backward through its preimage) and branches on the smallest open domain.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterator, Sequence

Edge = tuple[int, int, tuple[int, ...]]


class FamilySearch:
    """Reusable constraint network; :meth:`solutions` yields value tuples."""

    def __init__(self, sizes: Sequence[int], edges: Sequence[Edge], priority: Sequence[int] | None = None):
        self.sizes = tuple(int(s) for s in sizes)
        n = len(self.sizes)
        self.priority = tuple(priority) if priority is not None else tuple(range(n))
        out = defaultdict(list)
        inc = defaultdict(list)
        seen = set()
        for u, v, table in edges:
            key = (u, v, table)
            if key in seen:
                continue
            seen.add(key)
            if len(table) != self.sizes[u]:
                raise ValueError(f"edge {u}->{v}: table length {len(table)} != domain size {self.sizes[u]}")
            if u == v:
                # a loop only keeps the fixed points of its table
                out[u].append((v, table))
                continue
            out[u].append((v, table))
            inc[v].append((u, table))
        self.out = {k: tuple(vs) for k, vs in out.items()}
        self.inc = {k: tuple(vs) for k, vs in inc.items()}
        self.n_edges = len(seen)

    def _propagate(self, domains: list[set[int]], queue: list[int]) -> bool:
        out, inc = self.out, self.inc
        pending = set(queue)
        while queue:
            x = queue.pop()
            pending.discard(x)
            dx = domains[x]
            for v, table in out.get(x, ()):
                if v == x:
                    keep = {a for a in dx if table[a] == a}
                    if len(keep) != len(dx):
                        if not keep:
                            return False
                        domains[x] = dx = keep
                        if x not in pending:
                            pending.add(x)
                            queue.append(x)
                    continue
                image = {table[a] for a in dx}
                dv = domains[v]
                if not dv <= image:
                    dv = dv & image
                    if not dv:
                        return False
                    domains[v] = dv
                    if v not in pending:
                        pending.add(v)
                        queue.append(v)
            for u, table in inc.get(x, ()):
                du = domains[u]
                keep = {a for a in du if table[a] in dx}
                if len(keep) != len(du):
                    if not keep:
                        return False
                    domains[u] = keep
                    if u not in pending:
                        pending.add(u)
                        queue.append(u)
        return True

    def solutions(self) -> Iterator[tuple[int, ...]]:
        n = len(self.sizes)
        if any(s == 0 for s in self.sizes):
            return
        domains = [set(range(s)) for s in self.sizes]
        if not self._propagate(domains, list(range(n))):
            return
        yield from self._search(domains)

    def _search(self, domains: list[set[int]]) -> Iterator[tuple[int, ...]]:
        best = None
        for v in self.priority:
            d = len(domains[v])
            if d > 1 and (best is None or d < len(domains[best])):
                best = v
                if d == 2:
                    break
        if best is None:
            yield tuple(next(iter(d)) for d in domains)
            return
        for a in sorted(domains[best]):
            trial = list(domains)
            trial[best] = {a}
            if self._propagate(trial, [best]):
                yield from self._search(trial)


def compatible_families(sizes: Sequence[int], edges: Sequence[Edge], priority: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """All assignments satisfying every edge, sorted lexicographically."""
    return sorted(FamilySearch(sizes, edges, priority).solutions())


def naive_families(sizes: Sequence[int], edges: Sequence[Edge]) -> list[tuple[int, ...]]:
    """Filter the full product; the independent oracle for small networks."""
    from itertools import product

    return [
        vals
        for vals in product(*(range(s) for s in sizes))
        if all(vals[v] == table[vals[u]] for u, v, table in edges)
    ]

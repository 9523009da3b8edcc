"""Small shared builders for the tests (not part of the package)."""

import itertools

from codensity.fincat import FinCategory, poset_category


def walking_iso() -> FinCategory:
    # a <-> b, mutually inverse
    mors = [("id_a", 0, 0), ("id_b", 1, 1), ("f", 0, 1), ("g", 1, 0)]
    comp = {(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2, (3, 1): 3, (0, 3): 3, (3, 2): 0, (2, 3): 1}
    return FinCategory(["a", "b"], mors, [0, 1], comp)


def labelled_posets(n: int) -> list[frozenset]:
    """Every partial order on ``range(n)`` as a set of pairs, by brute force over relations."""
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    out = []
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        rel = {p for p, b in zip(pairs, bits) if b} | {(a, a) for a in range(n)}
        if any((b, a) in rel for a, b in rel if a != b):
            continue
        if any((a, d) not in rel for a, b in rel for c, d in rel if b == c):
            continue
        out.append(frozenset(rel))
    return out


def posets_up_to_iso(n: int) -> list[frozenset]:
    seen, reps = set(), []
    for rel in labelled_posets(n):
        key = min(tuple(sorted((p[a], p[b]) for a, b in rel)) for p in itertools.permutations(range(n)))
        if key not in seen:
            seen.add(key)
            reps.append(rel)
    return reps


def poset_cat(n: int, rel) -> FinCategory:
    return poset_category([str(i) for i in range(n)], lambda a, b: (a, b) in rel)

"""Iso-class catalogs of finite algebras with canonical labels."""

from __future__ import annotations

import itertools
import json
import random
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .algebra import (
    FinAlgebra,
    FinSemiring,
    KindError,
    free_module,
    from_meet_order,
    powerset_ba,
    semiring,
    vector_space,
)

CATALOG_SCHEMA = "codensity.catalog"
CATALOG_VERSION = 1
CAPS = {"msl": 8, "jsl": 8, "ba": 16, "module": 27, "vect": 27}


class CatalogError(ValueError):
    pass


# canonical labels


def order_matrix(A: FinAlgebra) -> list[list[bool]]:
    return [[A.leq(x, y) for y in range(A.size)] for x in range(A.size)]


def _invariants(leq: Sequence[Sequence[bool]]) -> list[tuple]:
    n = len(leq)
    down = [sum(leq[y][x] for y in range(n)) for x in range(n)]
    up = [sum(leq[x][y] for y in range(n)) for x in range(n)]
    base = [(down[x], up[x]) for x in range(n)]
    # one refinement round: multiset of neighbour invariants
    return [
        (base[x], tuple(sorted(base[y] for y in range(n) if leq[y][x] and y != x)), tuple(sorted(base[y] for y in range(n) if leq[x][y] and y != x)))
        for x in range(n)
    ]


def _growth_bits(leq, seq, start=0) -> list[int]:
    """Order bits listed element by element, so placed elements form a prefix."""
    out = []
    for m in range(start, len(seq)):
        x = seq[m]
        for j in range(m + 1):
            y = seq[j]
            out.append(int(leq[x][y]))
            out.append(int(leq[y][x]))
    return out


def canonical_order(leq: Sequence[Sequence[bool]]) -> tuple[str, tuple[int, ...]]:
    """Minimal order encoding over invariant-respecting relabellings.

    Returns the label string and a permutation ``perm`` (old -> new
    position) attaining it.  Elements are grouped by a refined degree
    invariant and only permuted within a group; a partial placement whose
    encoding already exceeds the best one is abandoned.
    """
    n = len(leq)
    inv = _invariants(leq)
    classes: dict[tuple, list[int]] = {}
    for x in range(n):
        classes.setdefault(inv[x], []).append(x)
    slots = [k for k in sorted(classes) for _ in classes[k]]
    best: list[int] | None = None
    best_seq: list[int] = []

    def go(seq, bits, remaining):
        nonlocal best, best_seq
        m = len(seq)
        if m == n:
            if best is None or bits < best:
                best, best_seq = bits, list(seq)
            return
        key = slots[m]
        for x in sorted(remaining[key]):
            new = seq + [x]
            nb = bits + _growth_bits(leq, new, m)
            if best is not None and nb > best[: len(nb)]:
                continue
            remaining[key].remove(x)
            go(new, nb, remaining)
            remaining[key].append(x)

    go([], [], {k: list(v) for k, v in classes.items()})
    perm = [0] * n
    for pos, x in enumerate(best_seq):
        perm[x] = pos
    return "".join(map(str, best or [])), tuple(perm)


def canonical_label(A: FinAlgebra) -> str:
    if A.kind in ("msl", "jsl", "ba"):
        label, _ = canonical_order(order_matrix(A))
        return f"{A.kind}:{A.size}:{label}"
    if A.kind in ("module", "vect"):
        return _brute_label(A)
    raise KindError(A.kind)


def canonical_form(A: FinAlgebra) -> FinAlgebra:
    """The relabelled copy whose order matrix is the canonical one."""
    if A.kind not in ("msl", "jsl", "ba"):
        return A
    _, perm = canonical_order(order_matrix(A))
    return A.relabel(perm)


def _brute_label(A: FinAlgebra) -> str:
    """Minimal serialised tables over all permutations fixing the constants (small carriers only)."""
    n = A.size
    if n > 9:
        # free modules are catalogued by rank, which is already canonical
        return f"{A.kind}:{A.scalars.name}:{n}"
    fixed = sorted(set(A.consts.values()))
    rest = [x for x in range(n) if x not in fixed]
    best = None
    for p in itertools.permutations(range(len(fixed), n)):
        perm = [0] * n
        for i, x in enumerate(fixed):
            perm[x] = i
        for x, y in zip(rest, p):
            perm[x] = y
        B = A.relabel(perm)
        s = json.dumps([B.consts, sorted(B.unary.items()), sorted(B.binary.items())], sort_keys=True)
        if best is None or s < best:
            best = s
    return f"{A.kind}:{A.scalars.name}:{n}:{best}"


# lattice enumeration


def _bounded_lattices(n: int, order: str = "natural", rng: random.Random | None = None) -> list[list[list[bool]]]:
    """Naturally labelled bounded posets on ``n`` elements that are lattices.

    Element 0 is the bottom and ``n-1`` the top; element ``k`` is added with
    a down-closed set of predecessors.  ``order="shuffled"`` randomises the
    order of candidate down-sets (used to test that labels do not depend on
    enumeration order).
    """
    if n == 0:
        return []
    if n == 1:
        return [[[True]]]
    out = []

    def downsets(leq, k):
        # nonempty down-closed subsets of range(k) containing 0
        res = []
        for mask in range(1 << k):
            if not mask & 1:
                continue
            xs = [x for x in range(k) if mask >> x & 1]
            if all(mask >> y & 1 for x in xs for y in range(k) if leq[y][x]):
                res.append(mask)
        return res

    def go(leq, k):
        if k == n - 1:
            full = [row + [True] for row in leq] + [[False] * (n - 1) + [True]]
            if _is_lattice(full):
                out.append(full)
            return
        cands = downsets(leq, k)
        if rng is not None:
            rng.shuffle(cands)
        for mask in cands:
            new = [row + [bool(mask >> y & 1)] for y, row in enumerate(leq)]
            new.append([False] * k + [True])
            # transitivity is automatic: the down-set is closed
            go(new, k + 1)

    go([[True]], 1)
    return out


def _is_lattice(leq: Sequence[Sequence[bool]]) -> bool:
    """Binary meets plus a top; for finite orders this is exactly a lattice."""
    n = len(leq)
    if not any(all(leq[y][x] for y in range(n)) for x in range(n)):
        return False
    for x in range(n):
        for y in range(x + 1, n):
            lower = [z for z in range(n) if leq[z][x] and leq[z][y]]
            if sum(all(leq[w][z] for w in lower) for z in lower) != 1:
                return False
    return True


def lattice_orders_bruteforce(n: int) -> list[list[list[bool]]]:
    """All partial orders on ``range(n)`` that are lattices; oracle for small ``n``."""
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    out = []
    for bits in itertools.product((False, True), repeat=len(pairs)):
        leq = [[x == y for y in range(n)] for x in range(n)]
        for (x, y), b in zip(pairs, bits):
            leq[x][y] = b
        if any(leq[x][y] and leq[y][x] for x, y in pairs):
            continue
        if any(leq[x][y] and leq[y][z] and not leq[x][z] for x in range(n) for y in range(n) for z in range(n)):
            continue
        if n and _is_lattice(leq):
            out.append(leq)
    return out


# catalogs


@dataclass(frozen=True, eq=False)
class AlgebraCatalog:
    kind: str
    max_size: int
    representatives: tuple[FinAlgebra, ...]
    labels: tuple[str, ...]
    scalars: str | None = None

    def canonical_label(self, A: FinAlgebra) -> str:
        return canonical_label(A)

    def by_size(self) -> Counter:
        return Counter(A.size for A in self.representatives)

    def locate(self, A: FinAlgebra) -> tuple[int, tuple[int, ...]]:
        """Index of the representative isomorphic to ``A`` and an iso ``A -> rep``."""
        from .algebra import find_isomorphism

        label = canonical_label(A)
        try:
            i = self.labels.index(label)
        except ValueError:
            raise CatalogError(f"no representative with label {label}") from None
        iso = find_isomorphism(A, self.representatives[i])
        if iso is None:
            raise CatalogError("canonical label matched but no isomorphism was found")
        return i, iso

    def names(self) -> list[str]:
        return [f"{self.kind}{A.size}.{i}" for i, A in enumerate(self.representatives)]


def enumerate_catalog(kind: str, max_size: int, *, order: str = "natural", seed: int = 0, scalars: str = "bool") -> AlgebraCatalog:
    """Representatives of every iso class of size ``<= max_size``, sorted by (size, label)."""
    if kind not in CAPS:
        raise KindError(kind)
    if max_size > CAPS[kind]:
        raise CatalogError(f"size {max_size} exceeds the cap {CAPS[kind]} for {kind}")
    rng = random.Random(seed) if order == "shuffled" else None
    reps: dict[str, FinAlgebra] = {}
    if kind in ("msl", "jsl"):
        for n in range(1, max_size + 1):
            for leq in _bounded_lattices(n, order, rng):
                A = canonical_form(from_meet_order(leq, kind))
                reps.setdefault(canonical_label(A), A)
    elif kind == "ba":
        k = 0
        while (1 << k) <= max_size:
            A = canonical_form(powerset_ba(k))
            reps[canonical_label(A)] = A
            k += 1
    else:
        S = semiring(scalars) if kind == "module" else None
        k = 0
        while True:
            A = free_module(S, k) if kind == "module" else None
            if kind == "vect":
                q = int(scalars) if scalars.isdigit() else 2
                A = vector_space(q, k) if k <= 3 else None
            if A is None or A.size > max_size:
                break
            reps[canonical_label(A)] = A
            k += 1
    items = sorted(reps.items(), key=lambda kv: (kv[1].size, kv[0]))
    return AlgebraCatalog(
        kind, max_size, tuple(a for _, a in items), tuple(l for l, _ in items), scalars if kind in ("module", "vect") else None
    )


def catalog_to_json(cat: AlgebraCatalog) -> dict:
    def alg(A: FinAlgebra, label: str) -> dict:
        return {
            "size": A.size,
            "label": label,
            "consts": dict(sorted(A.consts.items())),
            "unary": {k: list(v) for k, v in sorted(A.unary.items())},
            "binary": {k: [list(r) for r in v] for k, v in sorted(A.binary.items())},
        }

    return {
        "schema": CATALOG_SCHEMA,
        "version": CATALOG_VERSION,
        "kind": cat.kind,
        "max_size": cat.max_size,
        "scalars": cat.scalars,
        "representatives": [alg(A, l) for A, l in zip(cat.representatives, cat.labels)],
    }


def catalog_from_json(doc: dict) -> AlgebraCatalog:
    if doc.get("schema") != CATALOG_SCHEMA:
        raise CatalogError(f"not a catalog document (schema {doc.get('schema')!r})")
    if doc.get("version") != CATALOG_VERSION:
        raise CatalogError(f"catalog version {doc.get('version')!r} != {CATALOG_VERSION}")
    try:
        kind = doc["kind"]
        S = semiring(doc["scalars"]) if kind == "module" else None
        if kind == "vect":
            from .algebra import finite_field

            S = finite_field(int(doc["scalars"]) if str(doc["scalars"]).isdigit() else 2)
        reps, labels = [], []
        for r in doc["representatives"]:
            A = FinAlgebra(
                kind,
                r["size"],
                dict(r["consts"]),
                {k: tuple(v) for k, v in r["unary"].items()},
                {k: tuple(tuple(x) for x in v) for k, v in r["binary"].items()},
                S,
            )
            if canonical_label(A) != r["label"]:
                raise CatalogError(f"stored label does not match the tables of a size-{A.size} entry")
            reps.append(A)
            labels.append(r["label"])
        return AlgebraCatalog(kind, doc["max_size"], tuple(reps), tuple(labels), doc.get("scalars"))
    except (KeyError, TypeError) as exc:
        raise CatalogError(f"malformed catalog: {exc}") from None


def write_catalog(cat: AlgebraCatalog, path: str | Path) -> None:
    text = json.dumps(catalog_to_json(cat), sort_keys=True, separators=(",", ":")) + "\n"
    Path(path).write_text(text)


def read_catalog(path: str | Path) -> AlgebraCatalog:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{path}: not JSON ({exc})") from None
    return catalog_from_json(doc)

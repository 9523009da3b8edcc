"""Exact rational probability on finite carriers.

Distributions, finitely additive measures and expectation functionals are
converted into one another; effect-algebra and effect-module homomorphism
properties are checked on declared probe sets.  All arithmetic uses
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

ONE = Fraction(1)
ZERO = Fraction(0)
PROBE_SCALARS = (Fraction(0), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(1))


def rat01(x) -> Fraction:
    """Coerce to an exact rational in ``[0, 1]``; floats are refused."""
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    q = Fraction(x)
    if not 0 <= q <= 1:
        raise ValueError(f"{q} lies outside [0, 1]")
    return q


def _key(e):
    if isinstance(e, Dist):
        return (1, tuple((_key(x), w) for x, w in e.items))
    return (0, e)


@dataclass(frozen=True)
class Dist:
    """A finitely supported probability distribution over hashable elements."""

    items: tuple[tuple[Hashable, Fraction], ...]

    @staticmethod
    def of(pairs: Iterable[tuple[Hashable, object]]) -> "Dist":
        acc: dict = {}
        for e, w in pairs:
            acc[e] = acc.get(e, ZERO) + rat01(w)
        items = tuple(sorted(((e, w) for e, w in acc.items() if w), key=lambda p: _key(p[0])))
        total = sum((w for _, w in items), ZERO)
        if total != 1:
            raise ValueError(f"weights sum to {total}, not 1")
        return Dist(items)

    def weight(self, e) -> Fraction:
        for x, w in self.items:
            if x == e:
                return w
        return ZERO

    @property
    def support(self) -> list:
        return [e for e, _ in self.items]


def unit(x) -> Dist:
    return Dist(((x, ONE),))


def fmap(f: Callable, d: Dist) -> Dist:
    return Dist.of((f(e), w) for e, w in d.items)


def mult(dd: Dist) -> Dist:
    """Weighted flattening of a distribution of distributions."""
    return Dist.of((e, p * q) for d, p in dd.items for e, q in d.items)


@dataclass(frozen=True)
class FinDistribution:
    n: int
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(rat01(x) for x in self.weights)
        if len(w) != self.n:
            raise ValueError("one weight per point is required")
        if sum(w, ZERO) != 1:
            raise ValueError(f"weights sum to {sum(w, ZERO)}, not 1")
        object.__setattr__(self, "weights", w)

    def as_dist(self) -> Dist:
        return Dist.of((x, w) for x, w in enumerate(self.weights))

    @staticmethod
    def from_dist(n: int, d: Dist) -> "FinDistribution":
        return FinDistribution(n, tuple(d.weight(x) for x in range(n)))


def point_mass(n: int, x: int) -> FinDistribution:
    return FinDistribution(n, tuple(ONE if y == x else ZERO for y in range(n)))


def uniform(n: int) -> FinDistribution:
    return FinDistribution(n, (Fraction(1, n),) * n)


def random_distribution(rng: random.Random, n: int, max_weight: int = 12) -> FinDistribution:
    raw = [rng.randint(0, max_weight) for _ in range(n)]
    if not any(raw):
        raw[rng.randrange(n)] = 1
    total = sum(raw)
    return FinDistribution(n, tuple(Fraction(r, total) for r in raw))


def random_mixture(rng: random.Random, atoms: Sequence, size: int = 3) -> Dist:
    picks = [rng.choice(atoms) for _ in range(size)]
    w = random_distribution(rng, size)
    return Dist.of(zip(picks, w.weights))


@dataclass
class ProbLawReport:
    checked: dict[str, int] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def bump(self, key: str, k: int = 1) -> None:
        self.checked[key] = self.checked.get(key, 0) + k


def check_distribution_laws(n: int, samples: int = 200, seed: int = 0) -> ProbLawReport:
    """Unit laws, associativity and naturality of the distribution monad on generated samples."""
    rng = random.Random(seed)
    rep = ProbLawReport()
    ds = [random_distribution(rng, n).as_dist() for _ in range(samples)]
    for d in ds:
        if mult(unit(d)) != d:
            rep.failures.append(f"left unit fails at {d}")
        if mult(fmap(unit, d)) != d:
            rep.failures.append(f"right unit fails at {d}")
        rep.bump("unit", 2)
    dds = [random_mixture(rng, ds) for _ in range(samples)]
    for _ in range(samples):
        ddd = random_mixture(rng, dds)
        if mult(mult(ddd)) != mult(fmap(mult, ddd)):
            rep.failures.append(f"associativity fails at {ddd}")
        rep.bump("associativity")
    for d in ds[: max(1, samples // 4)]:
        f = tuple(rng.randrange(max(n, 1)) for _ in range(n))
        h = f.__getitem__
        if fmap(h, d) != fmap(h, d) or fmap(unit, fmap(h, d)) != fmap(lambda x: unit(h(x)), d):
            rep.failures.append("naturality of the unit fails")
        dd = random_mixture(rng, ds)
        if fmap(h, mult(dd)) != mult(fmap(lambda e: fmap(h, e), dd)):
            rep.failures.append("naturality of the multiplication fails")
        rep.bump("naturality", 2)
    return rep


# finitely additive measures


@dataclass(frozen=True)
class FinAddMeasure:
    """``table[A]`` is the measure of the subset with bitmask ``A``."""

    n: int
    table: tuple[Fraction, ...]

    def __post_init__(self):
        t = tuple(rat01(x) for x in self.table)
        if len(t) != 1 << self.n:
            raise ValueError("one value per subset is required")
        object.__setattr__(self, "table", t)
        bad = additivity_violations(self.n, t)
        if bad:
            raise ValueError("not a finitely additive probability measure: " + bad[0])

    def __call__(self, subset: int) -> Fraction:
        return self.table[subset]


def additivity_violations(n: int, table: Sequence[Fraction]) -> list[str]:
    full = (1 << n) - 1
    bad = []
    if table[full] != 1:
        bad.append(f"p(X) = {table[full]}")
    # every ordered disjoint pair: each point goes left, right or nowhere
    for assign in itertools.product(range(3), repeat=n):
        a = sum(1 << x for x, s in enumerate(assign) if s == 1)
        b = sum(1 << x for x, s in enumerate(assign) if s == 2)
        if table[a | b] != table[a] + table[b]:
            bad.append(f"p({a:#b} + {b:#b}) = {table[a | b]} but the parts give {table[a] + table[b]}")
    return bad


def measure_of(d: FinDistribution) -> FinAddMeasure:
    return FinAddMeasure(d.n, tuple(sum((d.weights[x] for x in range(d.n) if a >> x & 1), ZERO) for a in range(1 << d.n)))


def discrete_of(p: FinAddMeasure) -> FinDistribution:
    return FinDistribution(p.n, tuple(p(1 << x) for x in range(p.n)))


Vector = tuple[Fraction, ...]


def functional_of(p: FinAddMeasure) -> Callable[[Vector], Fraction]:
    """The expectation ``phi |-> sum_x phi(x) p({x})``."""
    point = [p(1 << x) for x in range(p.n)]

    def f(phi: Sequence) -> Fraction:
        if len(phi) != p.n:
            raise ValueError("test vector has the wrong length")
        return sum((rat01(v) * w for v, w in zip(phi, point)), ZERO)

    return f


def characteristic(n: int, subset: int) -> Vector:
    return tuple(ONE if subset >> x & 1 else ZERO for x in range(n))


def measure_of_functional(f: Callable[[Vector], Fraction], n: int) -> FinAddMeasure:
    """``A |-> f(chi_A)``; raises if the result is not additive."""
    table = tuple(rat01(f(characteristic(n, a))) for a in range(1 << n))
    bad = additivity_violations(n, table)
    if bad:
        raise ValueError("functional is not additive on characteristic vectors: " + bad[0])
    return FinAddMeasure(n, table)


# effect homomorphisms


@dataclass
class HomReport:
    mode: str
    probes: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {"mode": self.mode, "probes": self.probes, "ok": self.ok, "violations": self.violations[:20]}


def probe_vectors(n: int, seed: int = 0, random_count: int = 50, source: str = "interval") -> list[Vector]:
    """Characteristic vectors, scaled characteristic vectors and random rational vectors."""
    chars = [characteristic(n, a) for a in range(1 << n)]
    if source == "boolean":
        return chars
    rng = random.Random(seed)
    out = list(chars)
    out += [tuple(r * v for v in c) for r in PROBE_SCALARS for c in chars]
    for _ in range(random_count):
        out.append(tuple(Fraction(rng.randint(0, 12), 12) for _ in range(n)))
    return list(dict.fromkeys(out))


def _as_vec(v) -> Vector:
    if isinstance(v, (tuple, list)):
        return tuple(rat01(x) for x in v)
    return (rat01(v),)


def check_effect_hom(
    candidate: Callable | Sequence,
    n: int,
    mode: str = "module",
    source: str = "interval",
    budget: int = 100000,
    seed: int = 0,
) -> HomReport:
    """Probe ``candidate`` for preservation of ``1``, of defined sums, of orthocomplements and (module) of scalars.

    ``candidate`` is an evaluator on vectors over ``range(n)`` or, for a
    Boolean source, a table indexed by subset bitmasks.  Values are
    rationals or vectors of rationals in ``[0, 1]``.
    """
    if budget <= 0:
        raise ValueError("probe budget must be positive")
    if mode not in ("algebra", "module"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "module" and source == "boolean":
        raise ValueError("the Boolean effect algebra carries no scalar action")
    if callable(candidate):
        f = candidate
    else:
        table = list(candidate)

        def f(v):
            return table[sum(1 << x for x in range(n) if v[x])]

    rep = HomReport(mode)
    vecs = probe_vectors(n, seed, source=source)
    one = (ONE,) * n

    def probe(label, ok):
        rep.probes += 1
        if not ok:
            rep.violations.append(label)
        return rep.probes < budget

    def ev(v):
        return _as_vec(f(v))

    top = ev(one)
    if not probe("f(1) = 1", all(x == 1 for x in top)):
        return rep
    for v in vecs:
        perp = tuple(ONE - x for x in v)
        fv, fp = ev(v), ev(perp)
        if not probe(f"f(x) + f(x') = 1 at x = {_show(v)}", all(a + b == 1 for a, b in zip(fv, fp))):
            return rep
    for v, w in itertools.product(vecs, repeat=2):
        if any(a + b > 1 for a, b in zip(v, w)):
            continue
        s = tuple(a + b for a, b in zip(v, w))
        fs, fv, fw = ev(s), ev(v), ev(w)
        if not probe(f"f(x + y) = f(x) + f(y) at x = {_show(v)}, y = {_show(w)}", all(a == b + c for a, b, c in zip(fs, fv, fw))):
            return rep
    if mode == "module":
        for r in PROBE_SCALARS:
            for v in vecs:
                rv = tuple(r * a for a in v)
                if not probe(f"f(r x) = r f(x) at r = {r}, x = {_show(v)}", all(a == r * b for a, b in zip(ev(rv), ev(v)))):
                    return rep
    return rep


def _show(v: Vector) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def fault_evaluators(p: FinAddMeasure, point: int = 0) -> dict[str, Callable[[Vector], Fraction]]:
    """Three non-homomorphisms: a squared coordinate, a thresholded expectation and a halved one."""
    f = functional_of(p)
    return {
        "squared-coordinate": lambda phi: rat01(phi[point]) ** 2,
        "threshold": lambda phi: ONE if f(phi) >= Fraction(1, 2) else ZERO,
        "halved-expectation": lambda phi: f(phi) / 2,
    }


def characteristic_embedding(n: int) -> Callable[[Vector], Vector]:
    """``2^X -> [0,1]^X`` sending a subset to its characteristic vector."""
    return lambda v: tuple(ONE if x else ZERO for x in v)

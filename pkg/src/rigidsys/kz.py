"""Local exponents of KZ connections on sl_r conformal blocks.

The moving point carries ``omega_1``; exponents at the fixed points come
from the factorization of the block rank, and the residue at infinity is
central.  Ranks are computed with the Verlinde formula.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .divisors import CycleData, divisor_class
from .fusion import FusionAlgebra, verlinde_rank
from .partitions import SchubertIndex, index_to_partition


def _norm(rows: Sequence[int]) -> tuple[int, ...]:
    rows = tuple(rows)
    return tuple(x - rows[-1] for x in rows)


def pairing(x: Sequence, y: Sequence) -> Fraction:
    """Normalized Killing form ``sum x_i y_i - |x||y| / r`` on row vectors."""
    r = len(x)
    return sum((Fraction(a) * b for a, b in zip(x, y)), Fraction(0)) - Fraction(sum(x)) * sum(y) / r


def casimir(rows: Sequence[int]) -> Fraction:
    r = len(rows)
    shifted = [a + 2 * (r - 1 - i) for i, a in enumerate(rows)]
    return pairing(rows, shifted)


def dual_weight(rows: Sequence[int]) -> tuple[int, ...]:
    rows = _norm(rows)
    r = len(rows)
    return _norm(tuple(rows[0] - rows[r - 1 - j] for j in range(r)))


def omega1(r: int) -> tuple[int, ...]:
    return (1,) + (0,) * (r - 1)


@dataclass(frozen=True)
class KZSystem:
    r: int
    k: int
    weights: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        ws = tuple(_norm(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if ws[-1] != _norm(omega1(self.r)):
            raise ValueError("the last weight must be omega_1")
        if sum(sum(w) for w in ws) % self.r:
            raise ValueError("weights do not sum into the root lattice")
        for w in ws:
            if len(w) != self.r or w[0] > self.k or any(a < b for a, b in zip(w, w[1:])):
                raise ValueError(f"{w} is not dominant of level <= {self.k}")

    @property
    def s(self) -> int:
        return len(self.weights) - 1

    @property
    def algebra(self) -> FusionAlgebra:
        return FusionAlgebra(self.r, self.k)

    @property
    def rank(self) -> int:
        return verlinde_rank(self.algebra, self.weights)


@dataclass
class LocalExponentTable:
    points: list[list[tuple[Fraction, int]]] = field(default_factory=list)
    infinity: Fraction | None = None
    labels: tuple | None = None

    def totals(self) -> list[int]:
        return [sum(m for _, m in pt) for pt in self.points]

    def eigenvalue_classes(self, i: int, twist: Fraction = Fraction(0)) -> Counter:
        """Exponents shifted by ``twist`` and reduced mod 1, with multiplicities."""
        out: Counter = Counter()
        for e, m in self.points[i]:
            if m:
                out[(e + twist) % 1] += m
        return out


def kz_exponents(sys: KZSystem) -> LocalExponentTable:
    r, k = sys.r, sys.k
    if sys.rank == 0:
        return LocalExponentTable([[] for _ in range(sys.s)], None)
    alg = sys.algebra
    w1 = sys.weights[-1]
    h = r + k
    table = []
    for i in range(sys.s):
        nu = sys.weights[i]
        others = [w for j, w in enumerate(sys.weights[:-1]) if j != i]
        entries = []
        for gamma in alg.weights:
            local = verlinde_rank(alg, [nu, dual_weight(gamma), w1])
            if not local:
                continue
            rest = verlinde_rank(alg, others + [gamma])
            if not rest:
                continue
            e = (casimir(gamma) - casimir(nu) - casimir(w1)) / (2 * h)
            entries.append((e, local * rest))
        table.append(entries)
    return LocalExponentTable(table, casimir(w1) / h)


def cyclic_shift(index: SchubertIndex, times: int) -> SchubertIndex:
    """Subtract one from every element ``times`` times, with 0 replaced by n."""
    n = index.n
    elems = index.elems
    for _ in range(times):
        elems = tuple(sorted(e - 1 if e > 1 else n for e in elems))
    return SchubertIndex(n, elems)


@dataclass
class KZMatch:
    rank_kz: int
    rank_dual: int
    kz_points: list[Counter]
    dual_points: list[Counter]
    kz_infinity: Fraction | None
    dual_infinity: Fraction

    @property
    def ok(self) -> bool:
        return (
            self.rank_kz == self.rank_dual
            and self.kz_points == self.dual_points
            and self.kz_infinity is not None
            and self.kz_infinity % 1 == self.dual_infinity % 1
        )


def kz_system_for_cycle(c: CycleData) -> tuple[KZSystem, list[tuple[int, ...]], int]:
    """The KZ data attached to a cycle, the partitions ``mu^i`` and ``j^1_m``."""
    r, n = c.r, c.n
    k = n - r
    m = c.d % r
    j = c.J[0].elems[m - 1] if m else 0
    K = [cyclic_shift(c.J[0], j)] + list(c.J[1:])
    mus = [index_to_partition(I).padded() for I in K]
    nus = [tuple(k - mu[r - 1 - a] for a in range(r)) for mu in mus]
    return KZSystem(r, k, tuple(nus) + (omega1(r),)), mus, j


def kz_match(c: CycleData) -> KZMatch:
    if c.codim() != 1:
        raise ValueError(f"cycle has codimension {c.codim()}, expected 1")
    if c.D != 0:
        raise ValueError("cycle must live on the moduli with trivial determinant")
    r, n = c.r, c.n
    sys, mus, j = kz_system_for_cycle(c)
    table = kz_exponents(sys)
    kz_points = [
        table.eigenvalue_classes(i, -Fraction(sum(mu), r * n)) for i, mu in enumerate(mus)
    ]
    kz_inf = None if table.infinity is None else table.infinity + Fraction(sum(sum(mu) for mu in mus), r * n)

    L = divisor_class(c)
    dual_points = []
    for i, w in enumerate(L.weights):
        shift = Fraction(-j, n) if i == 0 else Fraction(0)
        classes: Counter = Counter()
        for b, cb in enumerate(w.fund, start=1):
            if cb:
                classes[(Fraction(b, n) + shift) % 1] += cb
        gap = L.level - sum(w.fund)
        if gap:
            classes[shift % 1] += gap
        dual_points.append(classes)
    return KZMatch(sys.rank, L.level, kz_points, dual_points, kz_inf, Fraction(j, n))


def match_strange_dual(c: CycleData) -> bool:
    return kz_match(c).ok

"""Classes of codimension-one degeneracy cycles and the basic rays ``D(a, j)``.

A cycle ``C(d, r, N, n, J)`` is the locus of bundles admitting a rank ``r``
subsheaf of degree ``-d`` whose fibers meet the flags in the Schubert cells
``J^i``.  Its class ``B(lambda, l)`` is read off from GW numbers obtained by
weakening one condition at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from typing import Iterator, Sequence

from .alcove import LineBundleData, Weight
from .partitions import SchubertIndex
from .qschubert import GWQuery, gw_generalized


def _as_indices(n: int, J) -> tuple[SchubertIndex, ...]:
    return tuple(j if isinstance(j, SchubertIndex) else SchubertIndex(n, tuple(j)) for j in J)


def _replace(index: SchubertIndex, old: int, new: int) -> SchubertIndex:
    return SchubertIndex(index.n, tuple(sorted((set(index.elems) - {old}) | {new})))


@dataclass(frozen=True)
class CycleData:
    d: int
    r: int
    n: int
    J: tuple[SchubertIndex, ...]
    D: int = 0

    def __post_init__(self):
        object.__setattr__(self, "J", _as_indices(self.n, self.J))
        for j in self.J:
            if j.r != self.r:
                raise ValueError(f"index {j.elems} does not have {self.r} elements")

    @property
    def s(self) -> int:
        return len(self.J)

    def codim(self) -> int:
        r, n = self.r, self.n
        return sum(j.codim() for j in self.J) - (self.d * n - self.D * r + r * (n - r))

    def gw(self, J: Sequence[SchubertIndex], d: int) -> int:
        return gw_generalized(GWQuery(self.r, self.n, d, tuple(J), D=self.D))

    def to_json(self) -> dict:
        return {"d": self.d, "r": self.r, "n": self.n, "D": self.D, "J": [list(j.elems) for j in self.J]}

    @classmethod
    def from_json(cls, obj: dict) -> "CycleData":
        return cls(int(obj["d"]), int(obj["r"]), int(obj["n"]), tuple(tuple(j) for j in obj["J"]), int(obj.get("D", 0)))


@dataclass(frozen=True)
class FaceData:
    d: int
    r: int
    n: int
    I: tuple[SchubertIndex, ...]
    D: int = 0

    def __post_init__(self):
        object.__setattr__(self, "I", _as_indices(self.n, self.I))
        for i in self.I:
            if i.r != self.r:
                raise ValueError(f"index {i.elems} does not have {self.r} elements")

    @property
    def s(self) -> int:
        return len(self.I)

    def gw(self) -> int:
        return gw_generalized(GWQuery(self.r, self.n, self.d, self.I, D=self.D))

    def validate(self) -> "FaceData":
        value = self.gw()
        if value != 1:
            raise ValueError(f"face GW number is {value}, expected 1")
        return self

    def to_json(self) -> dict:
        return {"d": self.d, "r": self.r, "n": self.n, "D": self.D, "I": [list(i.elems) for i in self.I]}

    @classmethod
    def from_json(cls, obj: dict) -> "FaceData":
        return cls(int(obj["d"]), int(obj["r"]), int(obj["n"]), tuple(tuple(i) for i in obj["I"]), int(obj.get("D", 0)))


def wall_slack(L: LineBundleData, indices: Sequence[SchubertIndex], d: int) -> Fraction:
    """``sum_j sum_{k in I^j} lambda^j_k - d l - sum_j r |lambda^j| / n``.

    Nonpositive for effective bundles when the GW number of the indices is 1;
    zero exactly on the corresponding face.
    """
    n = L.n
    r = indices[0].r
    lhs = sum(w.rows[k - 1] for w, idx in zip(L.weights, indices) for k in idx.elems)
    return lhs - d * L.level - sum(Fraction(r * w.size(), n) for w in L.weights)


def cycle_level(c: CycleData) -> int:
    r, n = c.r, c.n
    extra = SchubertIndex(n, (1,) + tuple(range(n - r + 1, n)))
    return c.gw(c.J + (extra,), c.d + 1)


def cycle_coefficients(c: CycleData, i: int) -> list[int]:
    """``(c_i^1, ..., c_i^{n-1})`` by weakening the condition at point ``i``."""
    J = list(c.J)
    out = []
    for b in range(1, c.n):
        if b in J[i] and b + 1 not in J[i]:
            K = list(J)
            K[i] = _replace(J[i], b, b + 1)
            out.append(c.gw(K, c.d))
        else:
            out.append(0)
    return out


def level_slack_at(c: CycleData, i: int) -> int:
    """``l - sum_b c_i^b`` computed directly: nonzero only if ``1 not in J^i`` and ``n in J^i``."""
    Ji = c.J[i]
    if 1 in Ji or c.n not in Ji:
        return 0
    K = list(c.J)
    K[i] = _replace(Ji, c.n, 1)
    return c.gw(K, c.d + 1)


class InconsistentClass(AssertionError):
    pass


def divisor_class(c: CycleData, check: bool = True) -> LineBundleData:
    """The class ``O(E) = B(lambda, l)`` of a codimension-one cycle."""
    if c.codim() != 1:
        raise ValueError(f"cycle has codimension {c.codim()}, expected 1")
    level = cycle_level(c)
    coeffs = [cycle_coefficients(c, i) for i in range(c.s)]
    if check:
        for i, cs in enumerate(coeffs):
            other = sum(cs) + level_slack_at(c, i)
            if other != level:
                raise InconsistentClass(f"level {level} from the extra point but {other} at point {i}")
            for b in range(len(cs) - 1):
                if cs[b] and cs[b + 1]:
                    raise InconsistentClass(f"adjacent nonzero coefficients at point {i}: {cs}")
            if (cs[0] or cs[-1]) and sum(cs) != level:
                raise InconsistentClass(f"extreme coefficient nonzero but sum {sum(cs)} != level {level}")
    weights = tuple(Weight.from_fund(cs) for cs in coeffs)
    return LineBundleData(c.n, weights, level, -c.D)


def admissible_pairs(f: FaceData) -> list[tuple[int, int]]:
    out = []
    for j, I in enumerate(f.I, start=1):
        for a in I.elems:
            if (a > 1 and a - 1 not in I) or (a == 1 and f.n not in I):
                out.append((a, j))
    return out


def daj_cycle(f: FaceData, a: int, j: int) -> CycleData:
    """The cycle whose class is ``D(a, j)``; ``j`` is 1-based."""
    if not 1 <= j <= f.s:
        raise ValueError(f"point {j} out of range")
    I = f.I[j - 1]
    n = f.n
    J = list(f.I)
    if a > 1 and a in I and a - 1 not in I:
        J[j - 1] = _replace(I, a, a - 1)
        d = f.d
    elif a == 1 and 1 in I and n not in I:
        J[j - 1] = _replace(I, 1, n)
        d = f.d - 1
    else:
        raise ValueError(f"pair (a={a}, j={j}) is not admissible for {I.elems}")
    return CycleData(d, f.r, n, tuple(J), f.D)


def build_Daj(f: FaceData, a: int, j: int) -> tuple[CycleData, LineBundleData]:
    c = daj_cycle(f, a, j)
    return c, divisor_class(c)


def rigid_from_face(f: FaceData, a: int, j: int):
    from .strangedual import from_bundle

    _, L = build_Daj(f, a, j)
    return from_bundle(L)


def codim1_degrees(r: int, n: int, s: int, d_min: int = 0) -> range:
    """Degrees allowed by ``dn = sum |sigma_J| - r(n-r) + 1`` with ``0 <= sum <= s r (n-r)``."""
    top = (s - 1) * r * (n - r) + 1
    return range(d_min, top // n + 1)


def _tuples_with_codim(groups: dict[int, list[SchubertIndex]], s: int, target: int, unordered: bool) -> Iterator[tuple]:
    codims = sorted(groups)

    def rec(k: int, left: int, lo: int):
        if k == s:
            if left == 0:
                yield ()
            return
        for pos in range(lo if unordered else 0, len(codims)):
            c = codims[pos]
            if c > left:
                break
            for rest in rec(k + 1, left - c, pos):
                yield (c,) + rest

    for pattern in rec(0, target, 0):
        if unordered:
            # within a run of equal codims pick a multiset of indices
            runs: list[tuple[int, int]] = []
            for c in pattern:
                if runs and runs[-1][0] == c:
                    runs[-1] = (c, runs[-1][1] + 1)
                else:
                    runs.append((c, 1))
            for parts in product(*(combinations_with_replacement(groups[c], m) for c, m in runs)):
                yield tuple(i for part in parts for i in part)
        else:
            yield from product(*(groups[c] for c in pattern))


def enumerate_codim1_cycles(
    n: int, s: int, d_max: int | None = None, d_min: int = 0, unordered: bool = False
) -> Iterator[CycleData]:
    """All ``(d, r, J)`` with ``D = 0`` and codimension one.

    With ``unordered`` only one ordering of each tuple of index sets is produced.
    """
    for r in range(1, n):
        groups: dict[int, list[SchubertIndex]] = {}
        for c in combinations(range(1, n + 1), r):
            idx = SchubertIndex(n, c)
            groups.setdefault(idx.codim(), []).append(idx)
        for d in codim1_degrees(r, n, s, d_min):
            if d_max is not None and d > d_max:
                break
            target = d * n + r * (n - r) + 1
            if target < 0:
                continue
            for J in _tuples_with_codim(groups, s, target, unordered):
                yield CycleData(d, r, n, J)

"""Weights, alcove points, line-bundle data and the operations relating them.

A dominant ``sl_n`` weight is stored in row form ``lambda_1 >= ... >= lambda_n = 0``.
An alcove point of ``Delta_n`` is ``a_1 >= ... >= a_n >= a_1 - 1`` with ``sum a = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class Weight:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(x) for x in self.rows)
        if len(rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {rows}")
        last = rows[-1]
        object.__setattr__(self, "rows", tuple(x - last for x in rows))

    @classmethod
    def from_fund(cls, coeffs: Sequence[int]) -> "Weight":
        """Weight ``sum c_b omega_b`` from coefficients ``(c_1, ..., c_{n-1})``."""
        n = len(coeffs) + 1
        rows = [sum(coeffs[b:]) for b in range(n - 1)] + [0]
        return cls(n, tuple(rows))

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls(n, (0,) * n)

    @classmethod
    def from_json(cls, obj, n: int | None = None) -> "Weight":
        if isinstance(obj, dict):
            if "rows" in obj:
                return cls(len(obj["rows"]), tuple(obj["rows"]))
            if "fund" in obj:
                return cls.from_fund(obj["fund"])
            raise ValueError(f"weight needs 'rows' or 'fund': {obj}")
        rows = tuple(obj)
        if n is not None and len(rows) < n:
            rows = rows + (0,) * (n - len(rows))
        return cls(len(rows), rows)

    def to_json(self) -> dict:
        return {"rows": list(self.rows)}

    @property
    def fund(self) -> tuple[int, ...]:
        return tuple(self.rows[b] - self.rows[b + 1] for b in range(self.n - 1))

    def size(self) -> int:
        return sum(self.rows)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.fund)

    def level(self) -> int:
        """Smallest level at which the weight is integrable."""
        return self.rows[0] - self.rows[-1]

    def scaled(self, k: int) -> "Weight":
        return Weight(self.n, tuple(k * x for x in self.rows))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(self.n, tuple(x + y for x, y in zip(self.rows, other.rows)))


def fundamental(n: int, b: int) -> Weight:
    """The fundamental weight ``omega_b`` of ``sl_n`` (``omega_0 = omega_n = 0``)."""
    b %= n
    return Weight(n, tuple(1 if a < b else 0 for a in range(n)))


@dataclass(frozen=True, order=True)
class AlcovePoint:
    n: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(x) for x in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates")
        if sum(coords) != 0:
            raise ValueError(f"coordinates {coords} do not sum to zero")
        if any(b > a for a, b in zip(coords, coords[1:])):
            raise ValueError(f"coordinates {coords} are not decreasing")
        if coords[-1] < coords[0] - 1:
            raise ValueError(f"coordinates {coords} leave the alcove")

    @classmethod
    def center(cls, n: int) -> "AlcovePoint":
        return cls(n, (Fraction(0),) * n)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class LineBundleData:
    """``B(lambda, level)`` on the parabolic moduli of rank ``n`` with ``deg N = degN``."""

    n: int
    weights: tuple[Weight, ...]
    level: int
    degN: int = 0

    def __post_init__(self):
        ws = tuple(w if isinstance(w, Weight) else Weight.from_json(w, self.n) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if self.level < 0:
            raise ValueError("negative level")
        for w in ws:
            if w.n != self.n:
                raise ValueError(f"weight {w.rows} is not an sl_{self.n} weight")

    @property
    def s(self) -> int:
        return len(self.weights)

    def grade(self) -> int:
        return (sum(w.size() for w in self.weights) + self.level * self.degN) % self.n

    def is_dominant(self) -> bool:
        return all(w.is_dominant() for w in self.weights)

    def within_level(self) -> bool:
        return all(w.level() <= self.level for w in self.weights)

    def with_weight(self, i: int, w: Weight, degN: int | None = None) -> "LineBundleData":
        ws = list(self.weights)
        ws[i] = w
        return LineBundleData(self.n, tuple(ws), self.level, self.degN if degN is None else degN)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "degN": self.degN,
            "level": self.level,
            "weights": [list(w.rows) for w in self.weights],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LineBundleData":
        n = int(obj["n"])
        return cls(n, tuple(Weight.from_json(w, n) for w in obj["weights"]), int(obj["level"]), int(obj.get("degN", 0)))


def kappa(w: Weight, level: int) -> AlcovePoint:
    if level <= 0:
        raise ValueError("level must be positive")
    if not w.is_dominant() or w.level() > level:
        raise ValueError(f"{w.rows} is not dominant of level <= {level}")
    n, size = w.n, w.size()
    return AlcovePoint(n, tuple(Fraction(x, level) - Fraction(size, n * level) for x in w.rows))


def shift_rows_forward(rows: Sequence[int], level: int) -> tuple[int, ...]:
    """``(lambda_n + level, lambda_1, ..., lambda_{n-1})``."""
    return (rows[-1] + level,) + tuple(rows[:-1])


def shift_rows_inverse(rows: Sequence[int], level: int) -> tuple[int, ...]:
    """``(lambda_2, ..., lambda_n, lambda_1 - level)``."""
    return tuple(rows[1:]) + (rows[0] - level,)


def shift_bundle(L: LineBundleData, point: int, direction: str = "forward") -> LineBundleData:
    """Pull ``L`` back along the shift at ``point``.

    ``forward`` takes a bundle on ``deg N`` to the bundle on ``deg N - 1``
    with weight ``(lambda_n + l, lambda_1, ..., lambda_{n-1})`` at ``point``;
    ``inverse`` undoes it.  Both preserve the grade.
    """
    w = L.weights[point]
    if direction == "forward":
        return L.with_weight(point, Weight(L.n, shift_rows_forward(w.rows, L.level)), L.degN - 1)
    if direction == "inverse":
        return L.with_weight(point, Weight(L.n, shift_rows_inverse(w.rows, L.level)), L.degN + 1)
    raise ValueError(f"unknown direction {direction!r}")


def to_degree_zero(L: LineBundleData, point: int = 0) -> LineBundleData:
    while L.degN > 0:
        L = shift_bundle(L, point, "forward")
    while L.degN < 0:
        L = shift_bundle(L, point, "inverse")
    return L


def galois_Tm(w: Weight, m: int) -> Weight:
    n = w.n
    if gcd(m, n) != 1:
        raise ValueError(f"m={m} is not coprime to n={n}")
    new = [0] * (n - 1)
    for a, c in enumerate(w.fund, start=1):
        new[(m * a) % n - 1] += c
    return Weight.from_fund(new)


def galois_bundle(L: LineBundleData, m: int) -> LineBundleData:
    return LineBundleData(L.n, tuple(galois_Tm(w, m) for w in L.weights), L.level, L.degN)


def _content_gcd(L: LineBundleData) -> int:
    g = L.level
    for w in L.weights:
        for x in w.rows:
            g = gcd(g, x)
    return g


def normalize_indivisible(L: LineBundleData) -> LineBundleData:
    """Divide ``(lambda, level)`` by the largest integer keeping data integral and grade zero."""
    if L.grade() != 0:
        raise ValueError("bundle has nonzero grade")
    if L.level <= 0:
        raise ValueError("level must be positive")
    g = _content_gcd(L)
    total = sum(w.size() for w in L.weights)
    for k in sorted((k for k in range(1, g + 1) if g % k == 0), reverse=True):
        if (total // k + (L.level // k) * L.degN) % L.n == 0:
            return LineBundleData(
                L.n, tuple(Weight(L.n, tuple(x // k for x in w.rows)) for w in L.weights), L.level // k, L.degN
            )
    raise AssertionError("unreachable: k = 1 always keeps grade zero")


def vertex_to_bundle(points: Sequence[AlcovePoint]) -> LineBundleData:
    """Indivisible grade-zero ``B(lambda, l)`` with ``kappa(lambda^j / l) = a^j``."""
    pts = [p if isinstance(p, AlcovePoint) else AlcovePoint(len(p), tuple(p)) for p in points]
    n = pts[0].n
    if any(p.n != n for p in pts):
        raise ValueError("points live in different alcoves")
    den = 1
    for p in pts:
        for x in p.coords:
            den = den * x.denominator // gcd(den, x.denominator)
    rows = []
    for p in pts:
        b = [int(x * den) for x in p.coords]
        rows.append(tuple(x - b[-1] for x in b))
    total = sum(sum(r) for r in rows)
    t = n // gcd(n, total)
    L = LineBundleData(n, tuple(Weight(n, tuple(t * x for x in r)) for r in rows), t * den)
    return normalize_indivisible(L)


def central_twist(p: AlcovePoint) -> AlcovePoint:
    """Multiplication of the conjugacy class by ``exp(2 pi i / n)``."""
    n = p.n
    a = p.coords
    shift = Fraction(1, n)
    return AlcovePoint(n, tuple(x + shift for x in a[1:]) + (a[0] - 1 + shift,))


def parse_fraction_list(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(str(v)) for v in values)

"""Faces of the effective cone cut out by a GW number one, and induction onto them.

A face is given by ``(d, r, n, I)`` with ``<sigma_I>_{d,D} = 1``.  Bundles on the
face split as a nonnegative combination of basic rays ``D(a, j)`` plus a part
satisfying the equalities of the ``Pic'`` subgroup.  The ``Pic'`` part comes
from the Levi factor: a pair of bundles of ranks ``r`` and ``n - r`` induces to
a bundle of rank ``n``.

Internally classes are kept as rational ``GL(n)`` row vectors per point and a
rational level.  For ``D = 0`` adding a constant to all rows at one point does
not change the class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .alcove import LineBundleData, Weight
from .divisors import FaceData, admissible_pairs, build_Daj
from .partitions import index_to_partition, transpose_in_box

Rows = tuple[Fraction, ...]


@dataclass(frozen=True)
class RationalClass:
    """``B(delta, level)`` with rational ``GL(n)`` rows at each point."""

    rows: tuple[Rows, ...]
    level: Fraction

    @classmethod
    def of(cls, L: LineBundleData) -> "RationalClass":
        return cls(tuple(tuple(Fraction(x) for x in w.rows) for w in L.weights), Fraction(L.level))

    @classmethod
    def zero(cls, n: int, s: int) -> "RationalClass":
        return cls(tuple((Fraction(0),) * n for _ in range(s)), Fraction(0))

    def __add__(self, other: "RationalClass") -> "RationalClass":
        rows = tuple(tuple(a + b for a, b in zip(x, y)) for x, y in zip(self.rows, other.rows))
        return RationalClass(rows, self.level + other.level)

    def scaled(self, c) -> "RationalClass":
        c = Fraction(c)
        return RationalClass(tuple(tuple(c * a for a in x) for x in self.rows), c * self.level)

    def __sub__(self, other: "RationalClass") -> "RationalClass":
        return self + other.scaled(-1)

    def normalized(self) -> "RationalClass":
        return RationalClass(tuple(tuple(a - x[-1] for a in x) for x in self.rows), self.level)

    def to_bundle(self, degN: int = 0) -> LineBundleData:
        c = self.normalized()
        values = [a for x in c.rows for a in x] + [c.level]
        if any(v.denominator != 1 for v in values):
            raise ValueError(f"class is not integral: {c}")
        weights = tuple(Weight(len(x), tuple(int(a) for a in x)) for x in c.rows)
        return LineBundleData(len(c.rows[0]), weights, int(c.level), degN)


def face_slack(f: FaceData, c: RationalClass) -> Fraction:
    """``sum_j sum_{k in I^j} delta^j_k - d l - (r / n)(sum_j |delta^j| - D l)``; zero on the face."""
    lhs = sum(x[k - 1] for x, I in zip(c.rows, f.I) for k in I.elems) - f.d * c.level
    return lhs - Fraction(f.r, f.n) * (sum(sum(x) for x in c.rows) - f.D * c.level)


def pic_prime_test(L: LineBundleData | RationalClass, f: FaceData) -> bool:
    """The equalities ``lambda^j_{a-1} = lambda^j_a`` and ``lambda^j_1 = lambda^j_n + l``."""
    c = L if isinstance(L, RationalClass) else RationalClass.of(L)
    n = f.n
    for x, I in zip(c.rows, f.I):
        for a in I.elems:
            if a > 1 and a - 1 not in I and x[a - 2] != x[a - 1]:
                return False
        if 1 in I and n not in I and x[0] != x[n - 1] + c.level:
            return False
    return True


@lru_cache(maxsize=None)
def _basic_rays(f: FaceData) -> tuple[tuple[int, int, LineBundleData], ...]:
    return tuple((a, j, build_Daj(f, a, j)[1]) for a, j in admissible_pairs(f))


def basic_rays(f: FaceData) -> list[tuple[int, int, LineBundleData]]:
    return list(_basic_rays(f))


def _ray_coefficient(c: RationalClass, f: FaceData, a: int, j: int) -> Fraction:
    x = c.rows[j - 1]
    if a > 1:
        return x[a - 2] - x[a - 1]
    return x[f.n - 1] + c.level - x[0]


@dataclass
class FaceDecomposition:
    face: FaceData
    basic_rays: list[tuple[int, int, LineBundleData]]
    coefficients: list[Fraction]
    f2_part: LineBundleData

    def reconstruct(self) -> LineBundleData:
        total = RationalClass.of(self.f2_part)
        for (_, _, D), b in zip(self.basic_rays, self.coefficients):
            total = total + RationalClass.of(D).scaled(b)
        return total.to_bundle(self.f2_part.degN)

    def to_json(self) -> dict:
        return {
            "face": self.face.to_json(),
            "rays": [
                {"a": a, "j": j, "coefficient": str(b), "bundle": D.to_json()}
                for (a, j, D), b in zip(self.basic_rays, self.coefficients)
            ],
            "f2_part": self.f2_part.to_json(),
        }


def face_decompose(L: LineBundleData, f: FaceData) -> FaceDecomposition:
    """Split ``L`` on the face into basic rays plus its ``Pic'`` part.

    Each ``D(a, j)`` breaks exactly one ``Pic'`` equality, by one, so the
    coefficients can be read off directly.
    """
    if L.n != f.n or L.s != f.s:
        raise ValueError("bundle and face have different n or s")
    c = RationalClass.of(L)
    if face_slack(f, c) != 0:
        raise ValueError("bundle does not lie on the face")
    rays = basic_rays(f)
    coeffs = [_ray_coefficient(c, f, a, j) for a, j, _ in rays]
    rest = c
    for (_, _, D), b in zip(rays, coeffs):
        rest = rest - RationalClass.of(D).scaled(b)
    assert pic_prime_test(rest, f), rest
    if rest.level < 0:
        raise ValueError("the Pic' part has negative level, so the bundle is not effective")
    return FaceDecomposition(f, rays, coeffs, rest.to_bundle(L.degN))


@dataclass(frozen=True)
class LeviBundle:
    """Data on the Levi factor of a face.

    ``sub`` rows are ``GL(r)`` weights on the subbundle ``V``; ``quot`` rows
    are ``GL(n - r)`` weights on the quotient ``Q``.  The levels are powers
    of the determinant of cohomology of ``V^*`` and of ``T^* = Q`` respectively
    (``T = Q^*``, matching the ramification bundles below).
    """

    sub: tuple[Rows, ...]
    sub_level: Fraction = Fraction(0)
    quot: tuple[Rows, ...] = ()
    quot_level: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "sub", tuple(tuple(Fraction(a) for a in x) for x in self.sub))
        object.__setattr__(self, "quot", tuple(tuple(Fraction(a) for a in x) for x in self.quot))
        object.__setattr__(self, "sub_level", Fraction(self.sub_level))
        object.__setattr__(self, "quot_level", Fraction(self.quot_level))

    @classmethod
    def from_json(cls, obj: dict) -> "LeviBundle":
        def rows(xs):
            return tuple(tuple(Fraction(str(a)) for a in x) for x in xs)

        return cls(
            rows(obj.get("sub", [])),
            Fraction(str(obj.get("sub_level", 0))),
            rows(obj.get("quot", [])),
            Fraction(str(obj.get("quot_level", 0))),
        )

    def to_json(self) -> dict:
        def rows(xs):
            return [[str(a) for a in x] for x in xs]

        return {
            "sub": rows(self.sub),
            "sub_level": str(self.sub_level),
            "quot": rows(self.quot),
            "quot_level": str(self.quot_level),
        }


def _padded(f: FaceData, levi: LeviBundle) -> tuple[tuple[Rows, ...], tuple[Rows, ...]]:
    r, q, s = f.r, f.n - f.r, f.s
    sub = levi.sub or tuple((Fraction(0),) * r for _ in range(s))
    quot = levi.quot or tuple((Fraction(0),) * q for _ in range(s))
    if len(sub) != s or len(quot) != s:
        raise ValueError(f"expected {s} weights on each Levi factor")
    if any(len(x) != r for x in sub) or any(len(x) != q for x in quot):
        raise ValueError(f"Levi weights must have {r} and {q} entries")
    return sub, quot


def _interleave(f: FaceData, sub: Sequence[Rows], quot: Sequence[Rows]) -> RationalClass:
    """``B(delta, 0)`` plus the ray corrections that put it in ``Pic'``."""
    n = f.n
    rows = []
    for I, lam, nu in zip(f.I, sub, quot):
        delta = [Fraction(0)] * n
        comp = [k for k in range(1, n + 1) if k not in I]
        for c, i in enumerate(I.elems):
            delta[i - 1] = lam[c]
        for c, k in enumerate(comp):
            delta[k - 1] = nu[c]
        rows.append(tuple(delta))
    total = RationalClass(tuple(rows), Fraction(0))
    for a, j, D in basic_rays(f):
        x = rows[j - 1]
        b = x[a - 1] - x[a - 2] if a > 1 else x[0] - x[n - 1]
        total = total + RationalClass.of(D).scaled(b)
    return total


def _shift_sub(sub: Sequence[Rows], c: Fraction) -> tuple[Rows, ...]:
    first = tuple(a + c for a in sub[0])
    return (first,) + tuple(sub[1:])


def _onto_face(f: FaceData, sub: Sequence[Rows], quot: Sequence[Rows]) -> RationalClass:
    """Fix the free normalization of ``det V`` so the induced class lies on the face.

    Classes of index zero on the Levi factor are exactly those inducing onto
    the face hyperplane; the slack is affine in the constant added to ``V``.
    """
    base = _interleave(f, sub, quot)
    step = _interleave(f, _shift_sub(sub, Fraction(1)), quot) - base
    s0, s1 = face_slack(f, base), face_slack(f, step)
    if s1 == 0:
        raise ValueError("the determinant of V does not move the face slack")
    return base + step.scaled(-s0 / s1)


def induce_level_zero(levi: LeviBundle, f: FaceData) -> LineBundleData:
    if levi.sub_level or levi.quot_level:
        raise ValueError("levels must be zero; use induce")
    return _induce(levi, f).to_bundle(-f.D)


@dataclass
class RamificationData:
    """Numerical data of the two factors of the ramification divisor."""

    sub_power: int
    sub_det_power: int
    sub_weights: list[tuple[int, ...]]
    quot_power: int
    quot_det_power: int
    quot_weights: list[tuple[int, ...]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "sub": {"det_cohomology_power": self.sub_power, "det_fiber_power": self.sub_det_power, "weights": [list(w) for w in self.sub_weights]},
            "quot": {"det_cohomology_power": self.quot_power, "det_fiber_power": self.quot_det_power, "weights": [list(w) for w in self.quot_weights]},
        }


def ramification_bundles(f: FaceData) -> RamificationData:
    """``A = D(V^*)^{n-r} det V_x^{d-D} L_{lambda(I)}`` and ``A' = D(T^*)^r det T_x^d L_{lambda(I)^T}``."""
    r, q = f.r, f.n - f.r
    lams = [index_to_partition(I) for I in f.I]
    sub = [lam.padded() for lam in lams]
    quot = [transpose_in_box(lam).padded() for lam in lams]
    assert all(len(w) == q for w in quot) and all(len(w) == r for w in sub)
    return RamificationData(q, f.d - f.D, sub, r, f.d, quot)


def _induce(levi: LeviBundle, f: FaceData) -> RationalClass:
    """Induction with levels traded for weights through the ramification relations.

    ``Ind(A x O) = 0`` turns ``D(V^*)^l`` into ``L_{-l lambda(I) / (n-r)}`` on
    ``V`` (the fiber twist only moves the normalization, which is fixed by
    landing on the face).  On the quotient ``A'`` lives on ``T = Q^*``, and a
    ``T`` weight ``beta`` is the ``Q`` weight ``(-beta_{n-r}, ..., -beta_1)``.
    """
    sub, quot = _padded(f, levi)
    ram = ramification_bundles(f)
    if levi.sub_level:
        c = levi.sub_level / ram.sub_power
        sub = tuple(tuple(a - c * b for a, b in zip(x, w)) for x, w in zip(sub, ram.sub_weights))
    if levi.quot_level:
        c = levi.quot_level / ram.quot_power
        quot = tuple(
            tuple(a + c * b for a, b in zip(x, reversed(w))) for x, w in zip(quot, ram.quot_weights)
        )
    out = _onto_face(f, sub, quot)
    assert pic_prime_test(out, f), out
    return out


def induce(levi: LeviBundle, f: FaceData) -> LineBundleData:
    return _induce(levi, f).to_bundle(-f.D)


def induce_rational(levi: LeviBundle, f: FaceData) -> RationalClass:
    return _induce(levi, f)


def sl_weights(rows: Sequence[Sequence[int]]) -> tuple[Rows, ...]:
    """Helper turning integer rows into Levi weights."""
    return tuple(tuple(Fraction(a) for a in x) for x in rows)


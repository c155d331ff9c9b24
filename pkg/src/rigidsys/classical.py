"""Hypergeometric and Pochhammer rigid local systems.

Unitarity criteria are the interlacing test for ``lF_{l-1}`` and the
two-case fractional-part test for Pochhammer systems.  Exponent tables
exponentiate to local monodromy eigenvalues ``exp(2 pi i x)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import floor, lcm
from typing import Sequence

from .kz import LocalExponentTable
from .strangedual import ConjClassTuple


def frac(x: Fraction) -> Fraction:
    return x - floor(x)


def _fractions(xs: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


@dataclass(frozen=True)
class HypergeomData:
    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", _fractions(self.alpha))
        object.__setattr__(self, "beta", _fractions(self.beta))
        if len(self.alpha) != len(self.beta) or not self.alpha:
            raise ValueError("alpha and beta must be nonempty of equal length")

    @property
    def rank(self) -> int:
        return len(self.alpha)

    def is_irreducible(self) -> bool:
        return all((a - b).denominator != 1 for a in self.alpha for b in self.beta)


@dataclass(frozen=True)
class PochhammerData:
    lam: tuple[Fraction, ...]
    rho: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", _fractions(self.lam))
        object.__setattr__(self, "rho", Fraction(self.rho))
        if len(self.lam) < 2:
            raise ValueError("a Pochhammer system has rank at least 2")
        if sum(self.lam) == len(self.lam) * self.rho:
            raise ValueError("sum of lambda equals l * rho")

    @property
    def rank(self) -> int:
        return len(self.lam)

    @property
    def rho_prime(self) -> Fraction:
        return sum(self.lam) - (self.rank - 1) * self.rho

    def is_irreducible(self) -> bool:
        vals = [x - self.rho for x in self.lam] + [self.rho, self.rho_prime]
        return all(v.denominator != 1 for v in vals)


def _interlaces(first: list[Fraction], second: list[Fraction]) -> bool:
    merged = [x for pair in zip(first, second) for x in pair]
    return all(a < b for a, b in zip(merged, merged[1:]))


def hypergeom_unitary(h: HypergeomData) -> bool:
    """Strict interlacing of the sorted fractional parts, in either order."""
    a = sorted(frac(x) for x in h.alpha)
    b = sorted(frac(x) for x in h.beta)
    return _interlaces(a, b) or _interlaces(b, a)


def hypergeom_exponents(h: HypergeomData) -> LocalExponentTable:
    """Exponents at ``z = 0, 1, infinity`` (in that order)."""
    at0 = Counter(1 - b for b in h.beta)
    at1 = Counter(Fraction(i) for i in range(h.rank - 1))
    at1[-1 + sum(h.beta) - sum(h.alpha)] += 1
    atinf = Counter(h.alpha)
    points = [sorted(c.items()) for c in (at0, at1, atinf)]
    return LocalExponentTable(points, None, ("0", "1", "inf"))


def hypergeom_katz_lower(h: HypergeomData) -> HypergeomData:
    """One rank-lowering step that keeps unitarity.

    After a rank-one twist the interlaced sequence starts at 0.  The middle
    convolution removes that 0 from its side and the smallest entry from the
    other side; each point keeps its remaining eigenvalues.
    """
    if h.rank < 2:
        raise ValueError("rank one systems cannot be lowered")
    if not hypergeom_unitary(h):
        raise ValueError("input is not unitary")
    a = sorted(frac(x) for x in h.alpha)
    b = sorted(frac(x) for x in h.beta)
    alpha_first = a[0] < b[0]
    start, other = (a, b) if alpha_first else (b, a)
    t = start[0]
    start = [x - t for x in start[1:]]
    other = [x - t for x in other[1:]]
    out = HypergeomData(tuple(start), tuple(other)) if alpha_first else HypergeomData(tuple(other), tuple(start))
    assert hypergeom_unitary(out), out
    return out


def hypergeom_to_classes(h: HypergeomData, n: int | None = None) -> ConjClassTuple:
    """Local monodromy classes at ``0, 1, infinity`` as exponent tuples mod ``n``."""
    table = hypergeom_exponents(h)
    if n is None:
        n = lcm(*(e.denominator for pt in table.points for e, _ in pt))
    classes = []
    for pt in table.points:
        mu = []
        for e, m in pt:
            x = frac(e) * n
            if x.denominator != 1:
                raise ValueError(f"exponent {e} is not an {n}-th root exponent")
            mu += [int(x)] * m
        classes.append(tuple(mu))
    return ConjClassTuple(h.rank, n, tuple(classes))


def pochhammer_unitary(p: PochhammerData) -> bool:
    if not p.is_irreducible():
        raise ValueError("Pochhammer data is reducible")
    rho = frac(p.rho)
    lams = [frac(x) for x in p.lam]
    total = sum(lams)
    below = all(rho < x for x in lams) and total < (p.rank - 1) * rho + 1
    above = all(rho > x for x in lams) and (p.rank - 1) * rho < total
    return below or above


def pochhammer_exponents(p: PochhammerData) -> LocalExponentTable:
    """Exponents at ``t_1, ..., t_l`` followed by infinity."""
    points = []
    for x in p.lam:
        c = Counter({Fraction(0): p.rank - 1})
        c[x] += 1
        points.append(sorted(c.items()))
    c = Counter({-p.rho: p.rank - 1})
    c[-p.rho_prime] += 1
    points.append(sorted(c.items()))
    labels = tuple(f"t{i}" for i in range(1, p.rank + 1)) + ("inf",)
    return LocalExponentTable(points, None, labels)

"""Classical and small quantum Schubert calculus of Grassmannians.

Partitions are handled internally as plain tuples padded to ``r`` rows.
The quantum product is the classical Littlewood-Richardson expansion with at
most ``r`` rows followed by reduction modulo ``n``-rim hooks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .partitions import (
    BoxPartition,
    SchubertIndex,
    complement_in_box,
    index_to_partition,
    partitions_in_box,
)


def _strip(parts: Iterable[int]) -> tuple[int, ...]:
    parts = tuple(parts)
    end = len(parts)
    while end and parts[end - 1] == 0:
        end -= 1
    return parts[:end]


def _pad(parts: tuple[int, ...], rows: int) -> tuple[int, ...]:
    return tuple(parts) + (0,) * (rows - len(parts))


def _horizontal_strips(shape: list[int], m: int, first_row: int, rows: int) -> Iterator[tuple[int, ...]]:
    """Ways to add ``m`` cells as a horizontal strip in rows ``>= first_row``.

    Yields the number of cells added to each row (length ``rows``).
    """
    added = [0] * rows

    def rec(j: int, left: int):
        if left == 0:
            yield tuple(added)
            return
        if j >= rows:
            return
        cap = left if j == 0 else min(left, shape[j - 1] - shape[j])
        lo = 0
        if j < first_row:
            cap = 0
        for a in range(cap, lo - 1, -1):
            added[j] = a
            yield from rec(j + 1, left - a)
        added[j] = 0

    yield from rec(0, m)


@lru_cache(maxsize=None)
def lr_expand(lam: tuple[int, ...], mu: tuple[int, ...], rows: int) -> Mapping[tuple[int, ...], int]:
    """Classical product ``s_lam * s_mu`` truncated to partitions with at most ``rows`` rows.

    Counts Littlewood-Richardson tableaux of shape ``nu / lam`` and content
    ``mu``: labels go in as horizontal strips, and the right-to-left,
    top-to-bottom reading word must be a lattice word.
    """
    lam, mu = _strip(lam), _strip(mu)
    if len(lam) > rows or len(mu) > rows:
        return {}
    result: dict[tuple[int, ...], int] = {}
    shape = list(_pad(lam, rows))
    # counts[j][i] = number of label i+1 in row j
    counts = [[0] * len(mu) for _ in range(rows)]

    def lattice_ok(i: int) -> bool:
        if i == 0:
            return True
        prev = cur = 0
        for j in range(rows):
            cur += counts[j][i]
            if cur > prev:
                return False
            prev += counts[j][i - 1]
        return True

    def rec(i: int):
        if i == len(mu):
            key = _strip(shape)
            result[key] = result.get(key, 0) + 1
            return
        for strip in _horizontal_strips(shape, mu[i], i, rows):
            for j, a in enumerate(strip):
                shape[j] += a
                counts[j][i] = a
            if lattice_ok(i):
                rec(i + 1)
            for j, a in enumerate(strip):
                shape[j] -= a
                counts[j][i] = 0

    rec(0)
    return result


def _check_same_box(*ps: BoxPartition) -> tuple[int, int]:
    rows, cols = ps[0].rows, ps[0].cols
    for p in ps[1:]:
        if (p.rows, p.cols) != (rows, cols):
            raise ValueError(f"box mismatch: {rows}x{cols} vs {p.rows}x{p.cols}")
    return rows, cols


def lr_coefficient(lam: BoxPartition, mu: BoxPartition, nu: BoxPartition) -> int:
    """Multiplicity of ``sigma_nu`` in ``sigma_lam * sigma_mu`` in H*(Gr(r, n))."""
    rows, _ = _check_same_box(lam, mu, nu)
    if lam.size() + mu.size() != nu.size():
        return 0
    return lr_expand(lam.inner.parts, mu.inner.parts, rows).get(nu.inner.parts, 0)


def rim_hook_reduce(nu: tuple[int, ...], r: int, n: int) -> tuple[int, int, tuple[int, ...]] | None:
    """Reduce a partition with at most ``r`` rows into the ``r x (n - r)`` box.

    Returns ``(sign, d, reduced)`` where ``d`` rim hooks of length ``n`` were
    removed, or ``None`` when the class vanishes in quantum cohomology.
    Works on the bead positions ``x_a = nu_a + r - a``: removing an ``n``-rim
    hook moves one bead down by ``n`` and passing over ``k`` beads means the
    hook has height ``k + 1``, contributing ``(-1)^(r - 1 - k)``.
    """
    nu = _pad(nu, r)
    beads = [nu[a] + r - 1 - a for a in range(r)]
    residues = [x % n for x in beads]
    if len(set(residues)) < r:
        return None
    d = sum((x - y) // n for x, y in zip(beads, residues))
    # parity of the permutation sorting residues decreasingly
    inversions = sum(1 for a in range(r) for b in range(a + 1, r) if residues[a] < residues[b])
    sign = -1 if (d * (r - 1) + inversions) % 2 else 1
    ordered = sorted(residues, reverse=True)
    reduced = tuple(ordered[a] - (r - 1 - a) for a in range(r))
    return sign, d, _strip(reduced)


@lru_cache(maxsize=None)
def _basis_product(lam: tuple[int, ...], mu: tuple[int, ...], r: int, n: int) -> Mapping[tuple[tuple[int, ...], int], int]:
    acc: dict[tuple[tuple[int, ...], int], int] = {}
    for nu, c in lr_expand(lam, mu, r).items():
        red = rim_hook_reduce(nu, r, n)
        if red is None:
            continue
        sign, d, rho = red
        key = (rho, d)
        acc[key] = acc.get(key, 0) + sign * c
    out = {k: v for k, v in acc.items() if v}
    bad = {k: v for k, v in out.items() if v < 0}
    if bad:
        raise AssertionError(f"negative quantum structure constants {bad} for {lam}*{mu} in Gr({r},{n})")
    return out


@dataclass(frozen=True)
class GrassmannianRing:
    r: int
    n: int

    def __post_init__(self):
        if not 0 < self.r < self.n:
            raise ValueError(f"need 0 < r < n, got r={self.r}, n={self.n}")

    @property
    def cols(self) -> int:
        return self.n - self.r

    @property
    def basis(self) -> list[BoxPartition]:
        return [BoxPartition.of(p, self.r, self.cols) for p in partitions_in_box(self.r, self.cols)]

    def schubert(self, p: BoxPartition | Iterable[int]) -> "QClass":
        if not isinstance(p, BoxPartition):
            p = BoxPartition.of(tuple(p), self.r, self.cols)
        if (p.rows, p.cols) != (self.r, self.cols):
            raise ValueError(f"{p} is not in the {self.r}x{self.cols} box")
        return QClass(self, {(p.inner.parts, 0): 1})

    def one(self) -> "QClass":
        return QClass(self, {((), 0): 1})


@dataclass(frozen=True)
class QClass:
    """Element of QH*(Gr(r, n)) with nonnegative integer coefficients.

    ``coeffs`` maps ``(partition tuple, q-degree)`` to the coefficient.
    """

    ring: GrassmannianRing
    coeffs: Mapping[tuple[tuple[int, ...], int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (p, d), c in self.coeffs.items():
            p = _strip(p)
            if c < 0:
                raise ValueError(f"negative coefficient {c}")
            if c == 0:
                continue
            if len(p) > self.ring.r or (p and p[0] > self.ring.cols) or d < 0:
                raise ValueError(f"term {(p, d)} outside QH*(Gr({self.ring.r},{self.ring.n}))")
            clean[(p, d)] = clean.get((p, d), 0) + c
        object.__setattr__(self, "coeffs", clean)

    def coefficient(self, p: BoxPartition | Iterable[int], d: int = 0) -> int:
        parts = p.inner.parts if isinstance(p, BoxPartition) else _strip(tuple(p))
        return self.coeffs.get((parts, d), 0)

    def __add__(self, other: "QClass") -> "QClass":
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return QClass(self.ring, out)

    def __mul__(self, other: "QClass") -> "QClass":
        return quantum_product(self, other)

    def __repr__(self) -> str:
        terms = " + ".join(
            f"{c}*q^{d}*s{list(p)}" for (p, d), c in sorted(self.coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        )
        return f"QClass(Gr({self.ring.r},{self.ring.n}): {terms or '0'})"


def quantum_product(a: QClass, b: QClass) -> QClass:
    if a.ring != b.ring:
        raise ValueError("ring mismatch")
    r, n = a.ring.r, a.ring.n
    out: dict[tuple[tuple[int, ...], int], int] = {}
    for (p, d1), c1 in a.coeffs.items():
        for (q, d2), c2 in b.coeffs.items():
            lo, hi = (p, q) if p <= q else (q, p)
            for (rho, d), c in _basis_product(lo, hi, r, n).items():
                key = (rho, d + d1 + d2)
                out[key] = out.get(key, 0) + c * c1 * c2
    return QClass(a.ring, out)


@dataclass(frozen=True)
class GWQuery:
    r: int
    n: int
    d: int
    indices: tuple[SchubertIndex, ...]
    D: int = 0

    def __post_init__(self):
        idx = tuple(i if isinstance(i, SchubertIndex) else SchubertIndex(self.n, tuple(i)) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        GrassmannianRing(self.r, self.n)
        for i in idx:
            if i.n != self.n or i.r != self.r:
                raise ValueError(f"index {i.elems} is not an {self.r}-subset of [{self.n}]")

    @property
    def s(self) -> int:
        return len(self.indices)

    def codim_ok(self) -> bool:
        r, n = self.r, self.n
        return sum(i.codim() for i in self.indices) == r * (n - r) + self.d * n - self.D * r


def _product_coefficient(parts: list[tuple[int, ...]], target: tuple[int, ...], d: int, r: int, n: int) -> int:
    """Coefficient of ``q^d sigma_target`` in the quantum product of ``parts``."""
    if not parts:
        return 1 if (target == () and d == 0) else 0
    if len(parts) == 1:
        return 1 if (parts[0] == target and d == 0) else 0
    if len(parts) == 2:
        lo, hi = sorted(parts)
        return _basis_product(lo, hi, r, n).get((target, d), 0)
    lo, hi = sorted(parts[:2])
    total = 0
    for (kappa, d1), c in _basis_product(lo, hi, r, n).items():
        if d1 <= d:
            total += c * _product_coefficient([kappa] + parts[2:], target, d - d1, r, n)
    return total


def gw_invariant(q: GWQuery) -> int:
    """Genus-zero GW number ``<sigma_{I^1}, ..., sigma_{I^s}>_d`` of Gr(r, n)."""
    if q.D != 0:
        raise ValueError("gw_invariant needs D = 0; use gw_generalized")
    if q.s < 2:
        raise ValueError("need at least two insertions")
    if q.d < 0 or not q.codim_ok():
        return 0
    r, n = q.r, q.n
    parts = [index_to_partition(i).inner.parts for i in q.indices]
    last = index_to_partition(q.indices[-1])
    dual = complement_in_box(last).inner.parts
    # multiply the smallest classes first to keep intermediate products short
    return _cached_gw(tuple(sorted(parts[:-1])), dual, q.d, r, n)


@lru_cache(maxsize=None)
def _cached_gw(parts: tuple[tuple[int, ...], ...], dual: tuple[int, ...], d: int, r: int, n: int) -> int:
    return _product_coefficient(list(parts), dual, d, r, n)


def shift_index(index: SchubertIndex) -> tuple[SchubertIndex, int]:
    """One shift at a point: returns the new index and the change in degree.

    ``J -> J - 1`` when ``1`` is not in ``J``; otherwise ``1`` wraps to ``n``
    and the degree drops by one.  ``D`` always drops by one.
    """
    n, elems = index.n, index.elems
    if elems[0] != 1:
        return SchubertIndex(n, tuple(e - 1 for e in elems)), 0
    return SchubertIndex(n, tuple(e - 1 for e in elems[1:]) + (n,)), -1


def gw_generalized(q: GWQuery, point: int = 0) -> int:
    """``<sigma_{I^1}, ..., sigma_{I^s}>_{d,D}`` reduced to an ordinary GW number.

    Uses ``<J>_{d+r, D+n} = <J>_{d, D}`` to bring ``D`` into ``[0, n)`` and
    then ``D`` single shifts at ``point``.
    """
    if not q.codim_ok():
        return 0
    r, n = q.r, q.n
    d, D = q.d, q.D
    if D < 0 or D >= n:
        k = D // n
        d, D = d - k * r, D - k * n
    indices = list(q.indices)
    target = indices[point]
    for _ in range(D):
        target, dd = shift_index(target)
        d += dd
    indices[point] = target
    if d < 0:
        return 0
    return gw_invariant(GWQuery(r, n, d, tuple(indices)))

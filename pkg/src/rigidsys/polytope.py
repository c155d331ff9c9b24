"""The polytope ``P_n(s)`` of ``s``-tuples of SU(n) conjugacy classes with product one.

Points are tuples of alcove points.  The polytope is cut out of ``Delta_n^s``
by ``sum_j sum_{k in I^j} a^j_k <= d`` for every ``(d, r, I)`` with GW number 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import gcd
from typing import Iterable, Sequence

from .alcove import AlcovePoint, LineBundleData, Weight, central_twist, kappa, shift_rows_forward, vertex_to_bundle
from .divisors import CycleData, FaceData, divisor_class, enumerate_codim1_cycles, wall_slack
from .fusion import h0
from .partitions import SchubertIndex, all_indices
from .qschubert import GWQuery, gw_invariant

Point = tuple[AlcovePoint, ...]


@dataclass(frozen=True)
class Facet:
    """``sum_j sum_{k in I^j} a^j_k <= d`` (regular) or an alcove wall.

    Alcove walls are stored with ``face=None`` and ``wall=(j, k)``: for
    ``k < n`` the wall is ``a^j_{k+1} - a^j_k <= 0``, for ``k = n`` it is
    ``a^j_1 - a^j_n <= 1``.
    """

    n: int
    s: int
    face: FaceData | None = None
    wall: tuple[int, int] | None = None

    @property
    def regular(self) -> bool:
        return self.face is not None

    @property
    def rhs(self) -> int:
        if self.face is not None:
            return self.face.d
        return 1 if self.wall[1] == self.n else 0

    def normal(self) -> tuple[int, ...]:
        """Coefficients on the ``s * n`` coordinates ``a^1_1, ..., a^s_n``."""
        n, s = self.n, self.s
        vec = [0] * (n * s)
        if self.face is not None:
            for j, I in enumerate(self.face.I):
                for k in I.elems:
                    vec[j * n + k - 1] += 1
        else:
            j, k = self.wall
            if k < n:
                vec[j * n + k] += 1
                vec[j * n + k - 1] -= 1
            else:
                vec[j * n] += 1
                vec[j * n + n - 1] -= 1
        return tuple(vec)

    def value(self, point: Point) -> Fraction:
        coords = [x for p in point for x in p.coords]
        return sum((c * x for c, x in zip(self.normal(), coords)), Fraction(0))

    def slack(self, point: Point) -> Fraction:
        return self.rhs - self.value(point)

    def to_json(self) -> dict:
        if self.face is not None:
            return {"kind": "regular", **self.face.to_json()}
        return {"kind": "alcove", "point": self.wall[0], "wall": self.wall[1]}


def _indices_by_codim(r: int, n: int) -> dict[int, list[SchubertIndex]]:
    groups: dict[int, list[SchubertIndex]] = {}
    for idx in all_indices(r, n):
        groups.setdefault(idx.codim(), []).append(idx)
    return groups


def _index_tuples(r: int, n: int, s: int, total: int):
    groups = _indices_by_codim(r, n)
    codims = sorted(groups)

    def rec(k: int, left: int):
        if k == s:
            if left == 0:
                yield ()
            return
        for c in codims:
            if c > left:
                break
            for rest in rec(k + 1, left - c):
                yield (c,) + rest

    for pattern in rec(0, total):
        yield from product(*(groups[c] for c in pattern))


def facet_degrees(r: int, n: int, s: int) -> range:
    return range(0, (s - 1) * r * (n - r) // n + 1)


def regular_facets(n: int, s: int, d_max: int | None = None) -> list[Facet]:
    out = []
    for r in range(1, n):
        for d in facet_degrees(r, n, s):
            if d_max is not None and d > d_max:
                break
            for I in _index_tuples(r, n, s, r * (n - r) + d * n):
                if gw_invariant(GWQuery(r, n, d, I)) == 1:
                    out.append(Facet(n, s, FaceData(d, r, n, I)))
    return out


def alcove_walls(n: int, s: int) -> list[Facet]:
    return [Facet(n, s, wall=(j, k)) for j in range(s) for k in range(1, n + 1)]


def facets(n: int, s: int, d_max: int | None = None) -> list[Facet]:
    if n < 2 or s < 2:
        raise ValueError("need n >= 2 and s >= 2")
    return _facets_cached(n, s, d_max)


@lru_cache(maxsize=None)
def _facets_cached(n: int, s: int, d_max: int | None) -> list[Facet]:
    return regular_facets(n, s, d_max) + alcove_walls(n, s)


def _as_point(points: Sequence) -> Point:
    return tuple(p if isinstance(p, AlcovePoint) else AlcovePoint(len(p), tuple(p)) for p in points)


def violated_facet(points: Sequence) -> Facet | None:
    """A regular facet violated by the point, scanning all ``(r, I)`` without a degree bound."""
    pts = _as_point(points)
    n, s = pts[0].n, len(pts)
    for r in range(1, n):
        sums = [{I: sum(p.coords[k - 1] for k in I.elems) for I in all_indices(r, n)} for p in pts]
        for I in product(*(list(sm) for sm in sums)):
            total = sum(i.codim() for i in I) - r * (n - r)
            if total < 0 or total % n:
                continue
            d = total // n
            lhs = sum(sm[i] for sm, i in zip(sums, I))
            if lhs > d and gw_invariant(GWQuery(r, n, d, I)) == 1:
                return Facet(n, s, FaceData(d, r, n, I))
    return None


def _bundle_for_point(points: Point) -> LineBundleData:
    return vertex_to_bundle(points)


def membership(points: Sequence, check: bool = True) -> bool:
    """Whether the tuple of alcove points lies in ``P_n(s)``.

    The facet route is primary; with ``check`` the section route (``h0 > 0``
    of the bundle with these kappa points) is evaluated and must agree.
    """
    pts = _as_point(points)
    inside = violated_facet(pts) is None
    if check:
        other = h0(_bundle_for_point(pts)) > 0
        if other != inside:
            raise AssertionError(f"membership disagreement: facets say {inside}, sections say {other}")
    return inside


def bundle_points(L: LineBundleData) -> Point:
    return tuple(kappa(w, L.level) for w in L.weights)


def _rank(rows: Iterable[Sequence]) -> int:
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    if not mat:
        return 0
    cols = len(mat[0])
    for c in range(cols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][c] != 0:
                f = mat[i][c] / mat[rank][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def active_facets(points: Sequence, facet_list: Sequence[Facet] | None = None) -> list[Facet]:
    pts = _as_point(points)
    n, s = pts[0].n, len(pts)
    facet_list = facets(n, s) if facet_list is None else facet_list
    return [f for f in facet_list if f.slack(pts) == 0]


def certify_vertex(points: Sequence, facet_list: Sequence[Facet] | None = None) -> bool:
    """Active constraints (with the ``sum a^j = 0`` equations) have full rank."""
    pts = _as_point(points)
    n, s = pts[0].n, len(pts)
    rows = [f.normal() for f in active_facets(pts, facet_list)]
    for j in range(s):
        rows.append(tuple(1 if j * n <= c < (j + 1) * n else 0 for c in range(n * s)))
    return _rank(rows) == n * s


@dataclass
class FVertexCertificate:
    point: Point
    bundle: LineBundleData
    witness_cycle: CycleData
    active_facets: list[Facet] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "point": [[str(x) for x in p.coords] for p in self.point],
            "bundle": self.bundle.to_json(),
            "witness_cycle": self.witness_cycle.to_json(),
            "active_facets": [f.to_json() for f in self.active_facets],
        }


def _permute_cycle(c: CycleData, perm: Sequence[int]) -> CycleData:
    return CycleData(c.d, c.r, c.n, tuple(c.J[i] for i in perm), c.D)


def _permute_bundle(L: LineBundleData, perm: Sequence[int]) -> LineBundleData:
    return LineBundleData(L.n, tuple(L.weights[i] for i in perm), L.level, L.degN)


def f_line_bundles(n: int, s: int) -> dict[LineBundleData, CycleData]:
    """All F-line bundles with a witness cycle each, by scanning codimension-one cycles."""
    found: dict[LineBundleData, CycleData] = {}
    for c in enumerate_codim1_cycles(n, s, d_min=-1, unordered=True):
        L = divisor_class(c)
        if L.level == 0:
            continue
        if wall_slack(L, c.J, c.d) <= 0:
            continue
        if _normalize(L) != L:
            continue
        for perm in permutations(range(s)):
            Lp = _permute_bundle(L, perm)
            if Lp not in found:
                found[Lp] = _permute_cycle(c, perm)
    return found


def _normalize(L: LineBundleData) -> LineBundleData:
    from .alcove import normalize_indivisible

    return normalize_indivisible(L)


def f_vertices(n: int, s: int, with_facets: bool = True) -> list[FVertexCertificate]:
    if n < 2:
        raise ValueError("need n >= 2")
    bundles = f_line_bundles(n, s)
    facet_list = facets(n, s) if with_facets else None
    out = []
    for L in sorted(bundles, key=_bundle_key):
        pt = bundle_points(L)
        act = active_facets(pt, facet_list) if with_facets else []
        out.append(FVertexCertificate(pt, L, bundles[L], act))
    return out


def _bundle_key(L: LineBundleData) -> tuple:
    return (L.level, tuple(w.rows for w in L.weights))


def twist_bundle(L: LineBundleData, shifts: Sequence[int]) -> LineBundleData:
    """Central twist of the weights: rotate point ``i`` by ``shifts[i]`` shifts (sum divisible by n)."""
    if sum(shifts) % L.n:
        raise ValueError("twist exponents must sum to 0 mod n")
    ws = []
    for w, m in zip(L.weights, shifts):
        rows = w.rows
        for _ in range(m % L.n):
            rows = shift_rows_forward(rows, L.level)
        ws.append(Weight(L.n, rows))
    return LineBundleData(L.n, tuple(ws), L.level, L.degN)


def bundle_orbit(L: LineBundleData) -> set[LineBundleData]:
    n, s = L.n, L.s
    out = set()
    for shifts in product(range(n), repeat=s - 1):
        last = (-sum(shifts)) % n
        T = twist_bundle(L, tuple(shifts) + (last,))
        for perm in permutations(range(s)):
            out.add(_permute_bundle(T, perm))
    return out


def canonical_bundle(L: LineBundleData) -> LineBundleData:
    """Orbit representative with lexicographically least weight matrix."""
    return min(bundle_orbit(L), key=_bundle_key)


def symmetry_orbit(points: Sequence) -> set[Point]:
    pts = _as_point(points)
    n, s = pts[0].n, len(pts)
    powers = []
    for p in pts:
        seq = [p]
        for _ in range(n - 1):
            seq.append(central_twist(seq[-1]))
        powers.append(seq)
    out = set()
    for shifts in product(range(n), repeat=s - 1):
        last = (-sum(shifts)) % n
        twisted = tuple(powers[j][m] for j, m in enumerate(tuple(shifts) + (last,)))
        for perm in permutations(range(s)):
            out.add(tuple(twisted[i] for i in perm))
    return out


def f_vertex_orbits(n: int, s: int, min_level: int = 2) -> list[LineBundleData]:
    reps = {canonical_bundle(L) for L in f_line_bundles(n, s) if L.level >= min_level}
    return sorted(reps, key=_bundle_key)


def central_points(n: int, s: int) -> set[Point]:
    """The tuples ``(zeta^{m_1} I, ..., zeta^{m_s} I)`` with ``sum m_i = 0 mod n``."""
    return symmetry_orbit((AlcovePoint.center(n),) * s)


# exact double description


class SizeGuard(RuntimeError):
    pass


def _primitive(vec: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in vec:
        g = gcd(g, x)
    return tuple(x // g for x in vec) if g > 1 else tuple(vec)


def _constraint_rows(n: int, s: int) -> list[tuple[int, ...]]:
    """Rows ``m`` with ``m . (x, t) >= 0`` where ``x`` drops each ``a^j_n``.

    Every constraint ``normal . a <= rhs`` becomes ``rhs t - normal . a >= 0``
    after substituting ``a^j_n = -sum_{k<n} a^j_k``.
    """
    rows = set()
    for f in facets(n, s):
        normal = f.normal()
        reduced = []
        for j in range(s):
            last = normal[j * n + n - 1]
            reduced.extend(-(normal[j * n + k] - last) for k in range(n - 1))
        rows.add(_primitive(tuple(reduced) + (f.rhs,)))
    return sorted(rows)


def _double_description(rows: list[tuple[int, ...]], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{y : row . y >= 0}`` in ``Z^dim``."""
    # pick an invertible initial subsystem
    basis: list[int] = []
    for i, row in enumerate(rows):
        if _rank([rows[b] for b in basis] + [row]) > len(basis):
            basis.append(i)
        if len(basis) == dim:
            break
    if len(basis) < dim:
        raise ValueError("cone is not pointed")
    # rays of {B y >= 0} are the columns of B^{-1}, scaled to integers
    B = [[Fraction(x) for x in rows[i]] for i in basis]
    inv = _inverse(B)
    rays = []
    for c in range(dim):
        col = [inv[r][c] for r in range(dim)]
        den = 1
        for x in col:
            den = den * x.denominator // gcd(den, x.denominator)
        rays.append(_primitive([int(x * den) for x in col]))
    processed = list(basis)

    def dot(row, ray):
        return sum(a * b for a, b in zip(row, ray))

    zero_sets = [frozenset(i for i in processed if dot(rows[i], ray) == 0) for ray in rays]
    for i, row in enumerate(rows):
        if i in basis:
            continue
        vals = [dot(row, ray) for ray in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        new_rays = [rays[k] for k in pos + zer]
        new_zero = [zero_sets[k] | ({i} if vals[k] == 0 else frozenset()) for k in pos + zer]
        for p in pos:
            for q in neg:
                common = zero_sets[p] & zero_sets[q]
                if len(common) < dim - 2:
                    continue
                if any(k not in (p, q) and common <= zero_sets[k] for k in range(len(rays))):
                    continue
                ray = _primitive([vals[p] * b - vals[q] * a for a, b in zip(rays[p], rays[q])])
                new_rays.append(ray)
                new_zero.append(common | {i})
        rays, zero_sets = new_rays, new_zero
        processed.append(i)
        if len(rays) > 200000:
            raise SizeGuard("double description blew up")
    return rays


def _inverse(M: list[list[Fraction]]) -> list[list[Fraction]]:
    size = len(M)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(M)]
    for c in range(size):
        pivot = next(i for i in range(c, size) if aug[i][c] != 0)
        aug[c], aug[pivot] = aug[pivot], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(size):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [row[size:] for row in aug]


def dd_vertex_enumeration(n: int, s: int = 3) -> set[Point]:
    """All vertices of ``P_n(s)`` by exact double description on its facet system."""
    if n > 4 or s != 3:
        raise SizeGuard("double description oracle only runs for n <= 4 and s = 3")
    rows = _constraint_rows(n, s)
    dim = s * (n - 1) + 1
    out = set()
    for ray in _double_description(rows, dim):
        t = ray[-1]
        if t <= 0:
            continue
        pts = []
        for j in range(s):
            head = [Fraction(x, t) for x in ray[j * (n - 1) : (j + 1) * (n - 1)]]
            pts.append(AlcovePoint(n, tuple(head) + (-sum(head),)))
        out.add(tuple(pts))
    return out

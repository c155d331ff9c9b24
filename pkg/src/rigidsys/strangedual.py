"""Rank-``l`` local-monodromy data with ``n``-th root of unity eigenvalues and their duals.

A conjugacy class is recorded by an exponent partition ``mu`` (``l`` parts,
each in ``[0, n)``): the eigenvalues are ``exp(2 pi i mu_j / n)``.  Its dual
weight is the transpose ``mu^T`` in the ``n x l`` box.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import gcd
from typing import Iterable, Sequence

from .alcove import AlcovePoint, LineBundleData, Weight, galois_bundle, kappa, normalize_indivisible
from .divisors import CycleData, divisor_class, wall_slack
from .fusion import h0
from .partitions import BoxPartition, SchubertIndex, transpose_in_box


@dataclass(frozen=True)
class ConjClassTuple:
    rank: int
    n: int
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        classes = []
        for mu in self.classes:
            mu = tuple(sorted((int(x) for x in mu), reverse=True))
            if len(mu) > self.rank:
                raise ValueError(f"class {mu} has more than {self.rank} eigenvalues")
            mu = mu + (0,) * (self.rank - len(mu))
            if any(not 0 <= x < self.n for x in mu):
                raise ValueError(f"exponents {mu} are not in [0, {self.n})")
            classes.append(mu)
        object.__setattr__(self, "classes", tuple(classes))
        if sum(sum(mu) for mu in classes) % self.n:
            raise ValueError("product of determinants is not 1")

    @property
    def s(self) -> int:
        return len(self.classes)

    def multiplicities(self, i: int) -> Counter:
        return Counter(self.classes[i])

    def to_json(self) -> dict:
        return {"rank": self.rank, "n": self.n, "classes": [list(mu) for mu in self.classes]}

    @classmethod
    def from_json(cls, obj: dict) -> "ConjClassTuple":
        classes = [tuple(mu) for mu in obj["classes"]]
        rank = int(obj.get("rank", max(len(mu) for mu in classes)))
        return cls(rank, int(obj["n"]), tuple(classes))


def to_bundle(A: ConjClassTuple) -> LineBundleData:
    n, rank = A.n, A.rank
    weights = []
    for mu in A.classes:
        lam = transpose_in_box(BoxPartition.of(mu, rank, n)).padded()
        weights.append(Weight(n, lam))
    return LineBundleData(n, tuple(weights), rank)


def from_bundle(L: LineBundleData) -> ConjClassTuple:
    if L.degN != 0:
        raise ValueError("bundle must live on the moduli with trivial determinant")
    if L.grade() != 0:
        raise ValueError("bundle has nonzero grade")
    if not L.within_level():
        raise ValueError("weights exceed the level")
    classes = tuple(transpose_in_box(BoxPartition.of(w.rows, L.n, L.level)).padded() for w in L.weights)
    return ConjClassTuple(L.level, L.n, classes)


def v_of_A(A: ConjClassTuple) -> tuple[AlcovePoint, ...]:
    L = to_bundle(A)
    return tuple(kappa(w, A.rank) for w in L.weights)


def max_common_multiplicity(A: ConjClassTuple) -> int:
    """``max sum_i m_i(e_i)`` over exponent tuples with ``sum e_i = 0 mod n``."""
    n = A.n
    best = {0: 0}
    for i in range(A.s):
        mult = A.multiplicities(i)
        nxt: dict[int, int] = {}
        for res, val in best.items():
            for e in range(n):
                key = (res + e) % n
                cand = val + mult.get(e, 0)
                if cand > nxt.get(key, -1):
                    nxt[key] = cand
        best = nxt
    return best[0]


def rigidity_numerics(A: ConjClassTuple) -> tuple[int, int, bool]:
    lhs = sum(sum(m * m for m in A.multiplicities(i).values()) for i in range(A.s))
    rhs = (A.s - 2) * A.rank**2 + 2
    return lhs, rhs, max_common_multiplicity(A) <= (A.s - 2) * A.rank


def property_P(A: ConjClassTuple, strong: bool = False) -> bool:
    """No class has two eigenvalues with ratio ``zeta_n`` (any primitive root if ``strong``)."""
    n = A.n
    steps = [u for u in range(1, n) if gcd(u, n) == 1] if strong else [1]
    for mu in A.classes:
        present = set(mu)
        for e in present:
            if any((e + u) % n in present for u in steps):
                return False
    return True


def _candidate_indices(n: int, r: int, coeffs: Sequence[int], slack: int) -> list[SchubertIndex]:
    required, forbidden = set(), set()
    for b, c in enumerate(coeffs, start=1):
        if c:
            required.add(b)
            forbidden.add(b + 1)
    if slack:
        required.add(n)
        forbidden.add(1)
    if required & forbidden or len(required) > r:
        return []
    free = [x for x in range(1, n + 1) if x not in required and x not in forbidden]

    return [SchubertIndex(n, tuple(sorted(required | set(extra)))) for extra in combinations(free, r - len(required))]


def find_witness_cycle(L: LineBundleData) -> CycleData | None:
    """A codimension-one cycle ``E`` with ``O(E) = L`` satisfying the strict wall inequality.

    Index sets are constrained by the shape of the class: a nonzero ``c^b``
    needs ``b in J`` and ``b + 1 not in J``; a positive gap ``l - sum c^b``
    needs ``n in J`` and ``1 not in J``.
    """
    n, level = L.n, L.level
    funds = [w.fund for w in L.weights]
    slacks = [level - sum(f) for f in funds]
    for r in range(1, n):
        per_point = [_candidate_indices(n, r, f, sl) for f, sl in zip(funds, slacks)]
        if any(not c for c in per_point):
            continue
        for J in product(*per_point):
            total = sum(j.codim() for j in J) - r * (n - r) - 1
            if total % n:
                continue
            d = total // n
            if d < -1:
                continue
            if wall_slack(L, J, d) <= 0:
                continue
            c = CycleData(d, r, n, J)
            if divisor_class(c) == L:
                return c
    return None


def is_f_line_bundle(L: LineBundleData) -> bool:
    return f_line_bundle_witness(L) is not None


def f_line_bundle_witness(L: LineBundleData) -> CycleData | None:
    if L.degN != 0 or L.grade() != 0 or L.level <= 0:
        return None
    if normalize_indivisible(L) != L:
        return None
    if h0(L) != 1:
        return None
    return find_witness_cycle(L)


def _splittings(L: LineBundleData) -> Iterable[tuple[LineBundleData, LineBundleData]]:
    n, level = L.n, L.level
    funds = [w.fund for w in L.weights]
    ranges = [product(*(range(c + 1) for c in f)) for f in funds]
    choices = [list(r) for r in ranges]
    for lv in range(1, level // 2 + 1):
        for parts in product(*choices):
            if any(sum(p) > lv for p in parts):
                continue
            rest = [tuple(c - x for c, x in zip(f, p)) for f, p in zip(funds, parts)]
            if any(sum(q) > level - lv for q in rest):
                continue
            A = LineBundleData(n, tuple(Weight.from_fund(p) for p in parts), lv)
            if A.grade() != 0:
                continue
            B = LineBundleData(n, tuple(Weight.from_fund(q) for q in rest), level - lv)
            yield A, B


def find_splitting(L: LineBundleData) -> tuple[LineBundleData, LineBundleData] | None:
    """``L = L' + L''`` with both summands effective of positive level, if one exists."""
    for A, B in _splittings(L):
        if _h0_cached(A) > 0 and _h0_cached(B) > 0:
            return A, B
    return None


@lru_cache(maxsize=None)
def _h0_cached(L: LineBundleData) -> int:
    return h0(L)


def galois_images(L: LineBundleData) -> list[tuple[int, LineBundleData]]:
    return [(m, normalize_indivisible(galois_bundle(L, m))) for m in range(1, L.n) if gcd(m, L.n) == 1]


def galois_test(A: ConjClassTuple, catalog: set | None = None) -> bool:
    """Every Galois twist of the dual bundle is again an F-line bundle.

    ``catalog`` may hold the complete set of F-line bundles for this ``n``
    and ``s``; membership then replaces the witness search.
    """
    L = to_bundle(A)
    if not is_f_line_bundle(L):
        raise ValueError("tuple is not rigid and unitary")
    for _, Lm in galois_images(L):
        ok = Lm in catalog if catalog is not None else is_f_line_bundle(Lm)
        if not ok:
            return False
    return True


@dataclass
class RigidReport:
    input: ConjClassTuple
    exists_unitary: bool
    irreducible_forced: bool
    rigid_unitary: bool
    finite_monodromy: bool
    dual_bundle: LineBundleData
    certificates: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "input": self.input.to_json(),
            "exists_unitary": self.exists_unitary,
            "irreducible_forced": self.irreducible_forced,
            "rigid_unitary": self.rigid_unitary,
            "finite_monodromy": self.finite_monodromy,
            "dual_bundle": self.dual_bundle.to_json(),
            "certificates": self.certificates,
        }


def classify(A: ConjClassTuple, catalog: set | None = None) -> RigidReport:
    L = to_bundle(A)
    certificates: list = []
    sections = h0(L)
    exists = sections > 0
    certificates.append({"h0": sections})
    witness = f_line_bundle_witness(L) if exists else None
    rigid = witness is not None
    if rigid:
        certificates.append({"witness_cycle": witness.to_json()})
        # an irreducible divisor cannot be a sum of two effective divisors
        irreducible = True
    elif exists:
        split = find_splitting(L)
        irreducible = split is None
        if split is not None:
            certificates.append({"splitting": [split[0].to_json(), split[1].to_json()]})
    else:
        irreducible = False
    finite = galois_test(A, catalog) if rigid else False
    return RigidReport(A, exists, irreducible, rigid, finite, L, certificates)

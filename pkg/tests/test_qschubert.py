import random
from collections import Counter
from functools import lru_cache
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from rigidsys.fusion import witten_rank
from rigidsys.partitions import BoxPartition, SchubertIndex, complement_in_box, partition_to_index, partitions_in_box
from rigidsys.qschubert import (
    GrassmannianRing,
    GWQuery,
    gw_generalized,
    gw_invariant,
    lr_coefficient,
    lr_expand,
    rim_hook_reduce,
    shift_index,
)


# brute-force Schur polynomials in ``rows`` variables via semistandard tableaux


def _ssyt_monomials(shape, rows):
    cells = [(i, j) for i, length in enumerate(shape) for j in range(length)]
    out = Counter()

    def rec(k, filling):
        if k == len(cells):
            exp = [0] * rows
            for v in filling.values():
                exp[v] += 1
            out[tuple(exp)] += 1
            return
        i, j = cells[k]
        lo = 0
        if j > 0:
            lo = filling[(i, j - 1)]
        if i > 0:
            lo = max(lo, filling[(i - 1, j)] + 1)
        for v in range(lo, rows):
            filling[(i, j)] = v
            rec(k + 1, filling)
        filling.pop((i, j), None)

    rec(0, {})
    return out


@lru_cache(maxsize=None)
def schur(shape, rows):
    return _ssyt_monomials(shape, rows)


def schur_expand_oracle(lam, mu, rows):
    """Product of Schur polynomials decomposed by peeling off leading monomials."""
    prod = Counter()
    for a, ca in schur(lam, rows).items():
        for b, cb in schur(mu, rows).items():
            prod[tuple(x + y for x, y in zip(a, b))] += ca * cb
    out = {}
    while any(prod.values()):
        lead = max(e for e, c in prod.items() if c)
        c = prod[lead]
        shape = tuple(x for x in lead if x)
        out[shape] = c
        for e, m in schur(shape, rows).items():
            prod[e] -= c * m
    return out


@pytest.mark.parametrize(
    "lam, mu, rows",
    [((2, 1), (2, 1), 3), ((1,), (1,), 2), ((2,), (1, 1), 3), ((3, 1), (2,), 2), ((2, 2), (2, 1), 3), ((1, 1), (1, 1), 4)],
)
def test_lr_matches_schur_oracle(lam, mu, rows):
    assert dict(lr_expand(lam, mu, rows)) == schur_expand_oracle(lam, mu, rows)


def test_lr_coefficient_two():
    box = lambda p: BoxPartition.of(p, 3, 3)
    assert lr_coefficient(box((2, 1)), box((2, 1)), box((3, 2, 1))) == 2
    assert lr_coefficient(box((2, 1)), box((2, 1)), box((2, 1))) == 0


def test_rim_hook_examples():
    # (2, 2) * (2, 2) in Gr(2, 4) has LR term (4, 4) which reduces to q^2
    assert rim_hook_reduce((4, 4), 2, 4) == (1, 2, ())
    assert rim_hook_reduce((3, 1), 2, 4) == (1, 1, ())
    assert rim_hook_reduce((3,), 2, 4) is None
    assert rim_hook_reduce((2, 1), 2, 4) == (1, 0, (2, 1))


@pytest.mark.parametrize(
    "r, n, a, b, expected",
    [
        (2, 4, (2, 2), (2, 2), {((), 2): 1}),
        (2, 4, (1,), (2, 2), {((1,), 1): 1}),
        (2, 4, (1,), (1,), {((2,), 0): 1, ((1, 1), 0): 1}),
        (1, 3, (1,), (2,), {((), 1): 1}),
    ],
)
def test_quantum_product_examples(r, n, a, b, expected):
    ring = GrassmannianRing(r, n)
    assert dict((ring.schubert(a) * ring.schubert(b)).coeffs) == expected


@st.composite
def ring_and_triples(draw):
    n = draw(st.integers(min_value=2, max_value=7))
    r = draw(st.integers(min_value=1, max_value=n - 1))
    basis = list(partitions_in_box(r, n - r))
    triple = [draw(st.sampled_from(basis)) for _ in range(3)]
    return GrassmannianRing(r, n), triple


@settings(max_examples=60, deadline=None)
@given(ring_and_triples())
def test_quantum_product_associative_and_commutative(data):
    ring, (a, b, c) = data
    x, y, z = (ring.schubert(p) for p in (a, b, c))
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x


def test_gw_four_lines():
    assert gw_invariant(GWQuery(2, 4, 0, ((2, 4),) * 4)) == 2


@pytest.mark.parametrize(
    "q, expected",
    [
        (GWQuery(2, 4, 1, ((1, 4), (1, 3), (1, 3))), 1),
        (GWQuery(4, 8, 2, ((2, 3, 4, 7), (1, 3, 4, 7), (1, 3, 4, 7))), 1),
        (GWQuery(2, 4, 2, ((2, 4),) * 4, D=4), 2),
        (GWQuery(3, 9, 0, ((3, 7, 8), (3, 6, 9), (3, 6, 9))), 1),
    ],
)
def test_gw_generalized_examples(q, expected):
    assert gw_generalized(q) == expected


def test_gw_wrong_codimension_is_zero():
    assert gw_generalized(GWQuery(2, 4, 0, ((1, 3), (3, 4), (3, 4)))) == 0


def test_shift_index():
    assert shift_index(SchubertIndex(4, (2, 4))) == (SchubertIndex(4, (1, 3)), 0)
    idx, dd = shift_index(SchubertIndex(4, (1, 3)))
    assert idx == SchubertIndex(4, (2, 4)) and dd == -1


def _three_point_coefficient_oracle(r, n):
    """Structure constants against Verlinde ranks: c^{nu,d}_{lam,mu} = <lam, mu, nu^dual>_d."""
    ring = GrassmannianRing(r, n)
    basis = ring.basis
    for lam, mu in product(basis, repeat=2):
        prod = ring.schubert(lam) * ring.schubert(mu)
        for nu in basis:
            dual = partition_to_index(complement_in_box(nu))
            for d in range(0, 3):
                q = GWQuery(r, n, d, (partition_to_index(lam), partition_to_index(mu), dual))
                yield prod.coefficient(nu, d), witten_rank(q)


@pytest.mark.parametrize("r, n", [(1, 3), (2, 4), (2, 5), (3, 6)])
def test_structure_constants_match_verlinde(r, n):
    for ours, oracle in _three_point_coefficient_oracle(r, n):
        assert ours == oracle


def test_random_four_point_against_verlinde():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(3, 6)
        r = rng.randint(1, n - 1)
        idx = [SchubertIndex(n, tuple(sorted(rng.sample(range(1, n + 1), r)))) for _ in range(4)]
        total = sum(i.codim() for i in idx) - r * (n - r)
        if total < 0 or total % n:
            continue
        q = GWQuery(r, n, total // n, tuple(idx))
        assert gw_generalized(q) == witten_rank(q)

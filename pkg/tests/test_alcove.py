from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from rigidsys.alcove import (
    AlcovePoint,
    LineBundleData,
    Weight,
    central_twist,
    galois_Tm,
    kappa,
    normalize_indivisible,
    shift_bundle,
    shift_rows_forward,
    shift_rows_inverse,
    to_degree_zero,
    vertex_to_bundle,
)


@st.composite
def dominant_weights(draw, max_n=7, max_level=5):
    n = draw(st.integers(min_value=2, max_value=max_n))
    level = draw(st.integers(min_value=1, max_value=max_level))
    rows = sorted(draw(st.lists(st.integers(0, level), min_size=n - 1, max_size=n - 1)), reverse=True)
    return Weight(n, tuple(rows) + (0,)), level


@st.composite
def bundles(draw):
    w, level = draw(dominant_weights(max_n=5))
    extra = [draw(dominant_weights(max_n=w.n)) for _ in range(2)]
    ws = [w] + [Weight(w.n, tuple(min(x, level) for x in v.rows[: w.n]) + (0,) * max(0, w.n - v.n)) for v, _ in extra]
    return LineBundleData(w.n, tuple(ws), level, draw(st.integers(-3, 3)))


def test_weight_normalizes_last_entry():
    assert Weight(3, (5, 3, 2)).rows == (3, 1, 0)
    assert Weight.from_fund((1, 0, 2)).rows == (3, 2, 2, 0)
    assert Weight(4, (3, 2, 2, 0)).fund == (1, 0, 2)


def test_kappa_example():
    w = Weight(8, (4, 3, 3, 3, 1, 1, 1, 0))
    expected = tuple(F(x) for x in ("1/2", "1/4", "1/4", "1/4", "-1/4", "-1/4", "-1/4", "-1/2"))
    assert kappa(w, 4).coords == expected


def test_kappa_rejects_out_of_level():
    with pytest.raises(ValueError):
        kappa(Weight(3, (3, 0, 0)), 2)


@given(dominant_weights())
def test_kappa_lands_in_alcove(data):
    w, level = data
    p = kappa(w, level)
    assert sum(p.coords) == 0
    assert p.coords[-1] >= p.coords[0] - 1


@given(dominant_weights())
def test_row_shifts_are_inverse(data):
    w, level = data
    assert shift_rows_inverse(shift_rows_forward(w.rows, level), level) == w.rows
    assert shift_rows_forward(shift_rows_inverse(w.rows, level), level) == w.rows


@given(bundles(), st.integers(0, 2))
def test_shift_bundle_round_trip_keeps_grade(L, point):
    fwd = shift_bundle(L, point, "forward")
    assert fwd.degN == L.degN - 1
    assert fwd.grade() == L.grade()
    assert shift_bundle(fwd, point, "inverse") == L


@given(bundles())
def test_to_degree_zero(L):
    Z = to_degree_zero(L)
    assert Z.degN == 0 and Z.grade() == L.grade()
    assert Z.weights[1:] == L.weights[1:]


def test_shift_bundle_direction_validated():
    L = LineBundleData(2, (Weight(2, (1, 0)),), 1)
    with pytest.raises(ValueError):
        shift_bundle(L, 0, "sideways")


@pytest.mark.parametrize("n", [3, 4, 5, 7, 8])
def test_galois_group_law(n):
    from math import gcd

    units = [m for m in range(1, n) if gcd(m, n) == 1]
    w = Weight.from_fund(tuple(range(1, n)))
    for a in units:
        for b in units:
            assert galois_Tm(galois_Tm(w, a), b) == galois_Tm(w, (a * b) % n)
    assert galois_Tm(w, 1) == w


def test_galois_requires_unit():
    with pytest.raises(ValueError):
        galois_Tm(Weight(4, (1, 0, 0, 0)), 2)


@given(dominant_weights())
def test_galois_minus_one_is_duality(data):
    w, _ = data
    dual = Weight(w.n, tuple(w.rows[0] - x for x in reversed(w.rows)))
    assert galois_Tm(w, w.n - 1) == dual


def test_central_twist_has_order_n():
    p = AlcovePoint(4, (F(1, 2), 0, 0, F(-1, 2)))
    q = p
    for _ in range(4):
        q = central_twist(q)
    assert q == p and central_twist(p) != p


def test_vertex_to_bundle_oldie():
    pt = AlcovePoint(4, (F(1, 2), 0, 0, F(-1, 2)))
    L = vertex_to_bundle([pt] * 3)
    assert L.level == 2 and all(w.rows == (2, 1, 1, 0) for w in L.weights)


def test_normalize_indivisible_divides_out_content():
    L = LineBundleData(4, tuple(Weight(4, (4, 2, 2, 0)) for _ in range(3)), 4)
    N = normalize_indivisible(L)
    assert N.level == 2 and N.weights[0].rows == (2, 1, 1, 0)


@pytest.mark.parametrize("coords", [(F(1), F(0), F(-1)), (F(0), F(1, 2), F(-1, 2)), (F(1), F(1))])
def test_alcove_point_validation(coords):
    with pytest.raises(ValueError):
        AlcovePoint(len(coords) if len(coords) == 3 else 3, coords)

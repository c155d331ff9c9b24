import pytest
from hypothesis import given, strategies as st

from rigidsys.partitions import (
    BoxPartition,
    Partition,
    SchubertIndex,
    all_indices,
    complement_in_box,
    index_to_partition,
    partition_to_index,
    partitions_in_box,
    transpose_in_box,
)


@st.composite
def box_partitions(draw, max_rows=7, max_cols=7):
    rows = draw(st.integers(min_value=1, max_value=max_rows))
    cols = draw(st.integers(min_value=1, max_value=max_cols))
    parts = sorted(draw(st.lists(st.integers(0, cols), min_size=rows, max_size=rows)), reverse=True)
    return BoxPartition.of(parts, rows, cols)


@st.composite
def schubert_indices(draw, max_n=9):
    n = draw(st.integers(min_value=2, max_value=max_n))
    r = draw(st.integers(min_value=1, max_value=n - 1))
    elems = draw(st.lists(st.integers(1, n), min_size=r, max_size=r, unique=True))
    return SchubertIndex(n, tuple(sorted(elems)))


def test_partition_normalizes_trailing_zeros():
    assert Partition((3, 1, 0, 0)).parts == (3, 1)
    assert Partition((2, 2)).size() == 4


@pytest.mark.parametrize("bad", [(1, 2), (2, -1)])
def test_partition_rejects_bad_parts(bad):
    with pytest.raises(ValueError):
        Partition(bad)


def test_box_partition_must_fit():
    with pytest.raises(ValueError):
        BoxPartition.of((3,), 2, 2)
    with pytest.raises(ValueError):
        BoxPartition.of((1, 1, 1), 2, 5)


@pytest.mark.parametrize(
    "parts, rows, cols, expected",
    [((2, 1), 2, 3, (2, 1, 0)), ((3, 3), 2, 3, (2, 2, 2)), ((), 2, 2, (0, 0)), ((4, 2, 1), 3, 4, (3, 2, 1, 1))],
)
def test_transpose_examples(parts, rows, cols, expected):
    assert transpose_in_box(BoxPartition.of(parts, rows, cols)).padded() == expected


def test_complement_example():
    assert complement_in_box(BoxPartition.of((2, 1), 2, 3)).padded() == (2, 1)
    assert complement_in_box(BoxPartition.of((3, 0), 2, 3)).padded() == (3, 0)
    assert complement_in_box(BoxPartition.of((1,), 3, 2)).padded() == (2, 2, 1)


@given(box_partitions())
def test_transpose_is_involution(p):
    assert transpose_in_box(transpose_in_box(p)) == p
    assert transpose_in_box(p).size() == p.size()


@given(box_partitions())
def test_complement_is_involution(p):
    c = complement_in_box(p)
    assert complement_in_box(c) == p
    assert c.size() + p.size() == p.rows * p.cols


@given(box_partitions())
def test_transpose_commutes_with_complement(p):
    assert transpose_in_box(complement_in_box(p)) == complement_in_box(transpose_in_box(p))


@pytest.mark.parametrize(
    "n, elems, parts",
    [(4, (1, 3), (2, 1)), (4, (2, 4), (1, 0)), (4, (3, 4), (0, 0)), (8, (1, 3, 4, 7), (4, 3, 3, 1)), (9, (3, 7, 8), (4, 1, 1))],
)
def test_index_to_partition(n, elems, parts):
    assert index_to_partition(SchubertIndex(n, elems)).padded() == parts


@given(schubert_indices())
def test_index_partition_roundtrip(idx):
    p = index_to_partition(idx)
    assert partition_to_index(p) == idx
    assert p.size() == idx.codim()


@pytest.mark.parametrize("rows, cols", [(1, 1), (2, 2), (2, 3), (3, 3), (4, 2)])
def test_partitions_in_box_counts(rows, cols):
    from math import comb

    found = list(partitions_in_box(rows, cols))
    assert len(found) == len(set(found)) == comb(rows + cols, rows)
    assert len(list(all_indices(rows, rows + cols))) == comb(rows + cols, rows)


@pytest.mark.parametrize("bad", [(2, 1), (0, 2), (1, 5), ()])
def test_schubert_index_validation(bad):
    with pytest.raises(ValueError):
        SchubertIndex(4, bad)

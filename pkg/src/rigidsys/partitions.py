"""Young diagrams, box-bounded diagrams and Schubert index sets.

A Schubert index ``I = {i_1 < ... < i_r}`` in ``[n]`` corresponds to the
partition ``lambda_a = n - r + a - i_a`` inside the ``r x (n - r)`` box.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator


def _normalize(parts: Iterable[int]) -> tuple[int, ...]:
    parts = tuple(int(p) for p in parts)
    for a, b in zip(parts, parts[1:]):
        if a < b:
            raise ValueError(f"parts {parts} are not weakly decreasing")
    if parts and parts[-1] < 0:
        raise ValueError(f"parts {parts} contain a negative entry")
    end = len(parts)
    while end and parts[end - 1] == 0:
        end -= 1
    return parts[:end]


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", _normalize(self.parts))

    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i] if i < len(self.parts) else 0

    def padded(self, rows: int) -> tuple[int, ...]:
        if len(self.parts) > rows:
            raise ValueError(f"{self.parts} has more than {rows} rows")
        return self.parts + (0,) * (rows - len(self.parts))

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))


@dataclass(frozen=True)
class BoxPartition:
    """A partition together with the ``rows x cols`` box it is declared to fit in."""

    inner: Partition
    rows: int
    cols: int

    def __post_init__(self):
        if not isinstance(self.inner, Partition):
            object.__setattr__(self, "inner", Partition(tuple(self.inner)))
        if self.rows <= 0 or self.cols < 0:
            raise ValueError(f"bad box {self.rows}x{self.cols}")
        if len(self.inner) > self.rows or self.inner[0] > self.cols:
            raise ValueError(f"{self.inner.parts} does not fit a {self.rows}x{self.cols} box")

    @classmethod
    def of(cls, parts: Iterable[int], rows: int, cols: int) -> "BoxPartition":
        return cls(Partition(tuple(parts)), rows, cols)

    def padded(self) -> tuple[int, ...]:
        return self.inner.padded(self.rows)

    def size(self) -> int:
        return self.inner.size()


@dataclass(frozen=True, order=True)
class SchubertIndex:
    n: int
    elems: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(int(e) for e in self.elems)
        object.__setattr__(self, "elems", elems)
        if not elems:
            raise ValueError("empty Schubert index")
        if any(b <= a for a, b in zip(elems, elems[1:])):
            raise ValueError(f"{elems} is not strictly increasing")
        if elems[0] < 1 or elems[-1] > self.n:
            raise ValueError(f"{elems} is not inside [1, {self.n}]")

    @property
    def r(self) -> int:
        return len(self.elems)

    def codim(self) -> int:
        n, r = self.n, self.r
        return sum(n - r + a - i for a, i in enumerate(self.elems, start=1))

    def __contains__(self, x: int) -> bool:
        return x in self.elems


def transpose_in_box(p: BoxPartition) -> BoxPartition:
    return BoxPartition(p.inner.conjugate(), p.cols, p.rows)


def complement_in_box(p: BoxPartition) -> BoxPartition:
    rows = p.padded()
    return BoxPartition.of((p.cols - rows[p.rows - 1 - a] for a in range(p.rows)), p.rows, p.cols)


def index_to_partition(index: SchubertIndex) -> BoxPartition:
    n, r = index.n, index.r
    lam = [n - r + a - i for a, i in enumerate(index.elems, start=1)]
    return BoxPartition.of(lam, r, n - r)


def partition_to_index(p: BoxPartition) -> SchubertIndex:
    r, n = p.rows, p.rows + p.cols
    lam = p.padded()
    return SchubertIndex(n, tuple(n - r + a - lam[a - 1] for a in range(1, r + 1)))


def all_indices(r: int, n: int) -> Iterator[SchubertIndex]:
    for c in combinations(range(1, n + 1), r):
        yield SchubertIndex(n, c)


def partitions_in_box(rows: int, cols: int) -> Iterator[tuple[int, ...]]:
    """All weakly decreasing ``rows``-tuples with entries in ``[0, cols]``."""
    if rows == 0:
        yield ()
        return
    for first in range(cols, -1, -1):
        for rest in partitions_in_box(rows - 1, first):
            yield (first,) + rest

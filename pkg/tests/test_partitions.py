import functools
import math
import random

import pytest

from lgenus.errors import ParseError
from lgenus.partitions import Partition, enumerate_partitions, ordered_splittings


def test_canonical_order():
    assert [p.parts for p in enumerate_partitions(3)] == [(3,), (2, 1), (1, 1, 1)]
    assert [p.parts for p in enumerate_partitions(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert enumerate_partitions(0) == (Partition(),)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (5, 7), (8, 22), (10, 42)])
def test_partition_counts(n, count):
    assert len(enumerate_partitions(n)) == count


def test_order_is_sorted():
    for n in range(1, 9):
        parts = enumerate_partitions(n)
        assert list(parts) == sorted(parts)
        assert parts[0] == Partition((n,))
        assert parts[-1] == Partition.ones(n)


def test_conjugate():
    assert Partition((3, 1)).conjugate() == Partition((2, 1, 1))
    for p in enumerate_partitions(7):
        assert p.conjugate().conjugate() == p


def test_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((0,))
    assert Partition.of([1, 3, 2]) == Partition((3, 2, 1))


def test_parse():
    assert Partition.parse("[2,1]") == Partition((2, 1))
    assert Partition.parse("1,1,1") == Partition.ones(3)
    assert Partition.parse("[]") == Partition()
    assert str(Partition((2, 1))) == "[2,1]"
    with pytest.raises(ParseError):
        Partition.parse("2,x")
    with pytest.raises(ParseError):
        Partition.parse("2,0")


def test_ordered_splittings():
    splits = ordered_splittings(Partition((2, 1, 1)))
    # 2 的取法 × 1 的取法 = 2 × 3
    assert len(splits) == 6
    assert (Partition(), Partition((2, 1, 1))) == splits[0]
    assert (Partition((2, 1, 1)), Partition()) == splits[-1]
    for left, right in splits:
        assert Partition.of(left.parts + right.parts) == Partition((2, 1, 1))
    assert len(set(splits)) == len(splits)


def test_nontrivial_parts():
    assert Partition((3, 2, 1, 1)).nontrivial_parts() == 2
    assert Partition.ones(4).is_all_ones()


@pytest.mark.parametrize(
    "parts, expected",
    [
        ((1, 1), [((), (1, 1)), ((1,), (1,)), ((1, 1), ())]),
        ((2, 1), [((), (2, 1)), ((1,), (2,)), ((2,), (1,)), ((2, 1), ())]),
        ((), [((), ())]),
    ],
)
def test_small_splittings(parts, expected):
    splits = ordered_splittings(Partition(parts))
    assert [(left.parts, right.parts) for left, right in splits] == expected


def test_splitting_counts():
    for n in range(9):
        for partition in enumerate_partitions(n):
            expected = math.prod(mult + 1 for mult in partition.multiplicities().values())
            assert len(ordered_splittings(partition)) == expected


@functools.lru_cache(maxsize=None)
def _count(n, largest):
    if n == 0:
        return 1
    return sum(_count(n - first, first) for first in range(1, min(n, largest) + 1))


def test_counts_against_recursion():
    for n in range(31):
        assert len(enumerate_partitions(n)) == _count(n, n)


def test_sorting_shuffled_order():
    rng = random.Random(3)
    for n in (6, 12, 20):
        parts = list(enumerate_partitions(n))
        shuffled = parts[:]
        rng.shuffle(shuffled)
        assert sorted(shuffled) == parts

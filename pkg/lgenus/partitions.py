"""整数划分：枚举、规范顺序与多重集拆分"""

import functools
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, List, Tuple

from lgenus.errors import ParseError


@functools.total_ordering
@dataclass(frozen=True, eq=True)
class Partition:
    """弱递减的正整数序列

    规范顺序：先按权重，同权重内按部分序列字典序降序，
    所以 (n) 排第一，(1, …, 1) 排最后。
    """

    parts: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        """验证"""
        if not isinstance(self.parts, tuple):
            object.__setattr__(self, "parts", tuple(self.parts))
        for part in self.parts:
            if not isinstance(part, int) or part < 1:
                raise ValueError(f"Invalid part {part!r}: parts must be positive integers")
        for a, b in zip(self.parts, self.parts[1:]):
            if a < b:
                raise ValueError(f"Parts must be weakly decreasing: {self.parts}")

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        """任意顺序的部分排序后构造"""
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def ones(cls, n: int) -> "Partition":
        return cls((1,) * n)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """解析 "[2,1]"、"2,1" 或空划分 "[]" """
        body = text.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        if not body.strip():
            return cls()
        try:
            parts = [int(item) for item in body.split(",")]
        except ValueError:
            raise ParseError(f"invalid partition {text!r}") from None
        if any(p < 1 for p in parts):
            raise ParseError(f"invalid partition {text!r}: parts must be positive")
        return cls.of(parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def multiplicities(self) -> Counter:
        return Counter(self.parts)

    def is_all_ones(self) -> bool:
        return all(p == 1 for p in self.parts)

    def nontrivial_parts(self) -> int:
        """大于 1 的部分个数"""
        return sum(1 for p in self.parts if p > 1)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return self.weight, tuple(-p for p in self.parts)

    def __lt__(self, other: "Partition") -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def to_list(self) -> List[int]:
        return list(self.parts)

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self.parts) + "]"

    def __repr__(self) -> str:
        return f"Partition({self.parts!r})"


def _partitions_bounded(n: int, largest: int) -> Iterable[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


@functools.lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> Tuple[Partition, ...]:
    """n 的全部划分，按规范顺序"""
    if n < 0:
        raise ValueError(f"cannot partition a negative number: {n}")
    return tuple(Partition(parts) for parts in _partitions_bounded(n, n))


def ordered_splittings(partition: Partition) -> List[Tuple[Partition, Partition]]:
    """把多重集 J 拆成有序对 (J1, J2)，J1 ⊎ J2 = J，每种拆法恰好一次"""
    groups = sorted(partition.multiplicities().items(), reverse=True)
    splittings: List[Tuple[Partition, Partition]] = []
    for counts in itertools.product(*(range(mult + 1) for _part, mult in groups)):
        left: List[int] = []
        right: List[int] = []
        for (part, mult), taken in zip(groups, counts):
            left.extend([part] * taken)
            right.extend([part] * (mult - taken))
        splittings.append((Partition(tuple(left)), Partition(tuple(right))))
    splittings.sort(key=lambda pair: (pair[0].weight, pair[0].parts))
    return splittings

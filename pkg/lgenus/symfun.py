"""对称函数的基变换：单项式基 m_λ、初等基 e_μ 与 Newton 幂和

Pontryagin 类是根平方的初等对称函数，s 数是单项式对称函数（幂和是特例），
两者之间的换算都走这里。
"""

import functools
import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterator, Mapping, Tuple, TypeVar

from lgenus.partitions import Partition, enumerate_partitions

LOG = logging.getLogger("lgenus")

T = TypeVar("T")


@dataclass(frozen=True)
class ElemExpansion:
    """初等对称函数 e_μ 的有理线性组合，所有 μ 权重相同"""

    weight: int
    terms: Mapping[Partition, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """验证并按规范顺序固定"""
        clean: Dict[Partition, Fraction] = {}
        for mu in sorted(self.terms):
            if mu.weight != self.weight:
                raise ValueError(f"{mu} has weight {mu.weight}, expected {self.weight}")
            value = Fraction(self.terms[mu])
            if value:
                clean[mu] = value
        object.__setattr__(self, "terms", MappingProxyType(clean))

    def __getitem__(self, mu: Partition) -> Fraction:
        return self.terms.get(mu, Fraction(0))

    def items(self) -> Iterator[Tuple[Partition, Fraction]]:
        return iter(self.terms.items())

    def evaluate(self, values: Mapping[int, T], one: T) -> T:
        """代入 e_j ↦ values[j]"""
        total = one * 0
        for mu, coeff in self.terms.items():
            term = one
            for part in mu.parts:
                term = term * values[part]
            total = total + term * coeff
        return total


def _choose(groups: Tuple[Tuple[int, int], ...], r: int) -> Iterator[Tuple[int, ...]]:
    if not groups:
        if r == 0:
            yield ()
        return
    _value, count = groups[0]
    for taken in range(min(count, r), -1, -1):
        for rest in _choose(groups[1:], r - taken):
            yield (taken,) + rest


@functools.lru_cache(maxsize=None)
def _count_zero_one(rows: Tuple[int, ...], cols: Tuple[int, ...]) -> int:
    """行和为 rows、列和为 cols 的 0-1 矩阵个数（cols 降序且不含 0）"""
    if sum(rows) != sum(cols):
        return 0
    if not rows:
        return 1
    first, rest = rows[0], rows[1:]
    if first > len(cols):
        return 0
    groups = tuple((value, sum(1 for c in cols if c == value)) for value in sorted(set(cols), reverse=True))
    total = 0
    for choice in _choose(groups, first):
        ways = 1
        remaining = []
        for (value, count), taken in zip(groups, choice):
            ways *= math.comb(count, taken)
            remaining.extend([value - 1] * taken + [value] * (count - taken))
        total += ways * _count_zero_one(rest, tuple(sorted((c for c in remaining if c), reverse=True)))
    return total


@functools.lru_cache(maxsize=None)
def _elementary_table(weight: int) -> Mapping[Partition, Mapping[Partition, int]]:
    # e_μ = Σ_λ #{0-1 矩阵，行和 μ，列和 λ} · m_λ
    started = time.perf_counter()
    basis = enumerate_partitions(weight)
    table: Dict[Partition, Mapping[Partition, int]] = {}
    for mu in basis:
        row = {}
        for lam in basis:
            count = _count_zero_one(mu.parts, lam.parts)
            if count:
                row[lam] = count
        table[mu] = MappingProxyType(row)
    LOG.info("e->m transitions for weight %d built in %.3fs", weight, time.perf_counter() - started)
    return MappingProxyType(table)


@functools.lru_cache(maxsize=None)
def _monomial_table(weight: int) -> Mapping[Partition, ElemExpansion]:
    # e_{ν'} = m_ν + (dominance 更小的 m_λ)，在规范顺序下是上单位三角阵，从末尾回代
    e_table = _elementary_table(weight)
    solved: Dict[Partition, Dict[Partition, Fraction]] = {}
    for nu in reversed(enumerate_partitions(weight)):
        row = e_table[nu.conjugate()]
        if row.get(nu) != 1:
            raise ArithmeticError(f"transition for {nu} is not unitriangular")
        expansion: Dict[Partition, Fraction] = {nu.conjugate(): Fraction(1)}
        for lam, count in row.items():
            if lam == nu:
                continue
            if lam not in solved:
                raise ArithmeticError(f"{lam} precedes {nu} in the transition for {nu.conjugate()}")
            for mu, coeff in solved[lam].items():
                expansion[mu] = expansion.get(mu, Fraction(0)) - count * coeff
        solved[nu] = expansion
    return MappingProxyType({nu: ElemExpansion(weight, solved[nu]) for nu in enumerate_partitions(weight)})


def monomial_to_elementary(lam: Partition) -> ElemExpansion:
    """m_λ 在初等基下的展开"""
    if lam.weight < 1:
        raise ValueError("monomial_to_elementary needs a partition of positive weight")
    return _monomial_table(lam.weight)[lam]


def elementary_to_monomial(mu: Partition) -> Dict[Partition, Fraction]:
    """e_μ 在单项式基下的展开（系数为整数）"""
    if mu.weight < 1:
        raise ValueError("elementary_to_monomial needs a partition of positive weight")
    return {lam: Fraction(count) for lam, count in _elementary_table(mu.weight)[mu].items()}


@functools.lru_cache(maxsize=None)
def power_sum_in_elementary(n: int) -> ElemExpansion:
    """Newton 恒等式：p_n = Σ_{i<n} (-1)^{i-1} e_i p_{n-i} + (-1)^{n-1} n e_n"""
    if n < 1:
        raise ValueError(f"power sums start at n = 1, got {n}")
    terms: Dict[Partition, Fraction] = {Partition((n,)): Fraction((-1) ** (n - 1) * n)}
    for i in range(1, n):
        sign = (-1) ** (i - 1)
        for mu, coeff in power_sum_in_elementary(n - i).items():
            key = Partition.of(mu.parts + (i,))
            terms[key] = terms.get(key, Fraction(0)) + sign * coeff
    return ElemExpansion(n, terms)

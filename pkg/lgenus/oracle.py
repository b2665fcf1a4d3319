"""独立的对照：Q(x) = x/tanh(x) 的乘性序列

只用于交叉验证；lsolver 从不导入本模块。
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from lgenus.lsolver import GeneratorAssignment, LGenusResult, solve_l
from lgenus.partitions import Partition, enumerate_partitions
from lgenus.symfun import monomial_to_elementary

LOG = logging.getLogger("lgenus")


@dataclass(frozen=True)
class EvenSeries:
    """Σ_j coeffs[j]·x^{2j}，截断到 x^{2·order}"""

    order: int
    coeffs: List[Fraction] = field(default_factory=list)

    def __post_init__(self) -> None:
        """验证"""
        if self.order < 0:
            raise ValueError(f"order must be >= 0, got {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"series of order {self.order} needs {self.order + 1} coefficients")
        object.__setattr__(self, "coeffs", [Fraction(c) for c in self.coeffs])

    def __getitem__(self, j: int) -> Fraction:
        return self.coeffs[j]

    def __mul__(self, other: "EvenSeries") -> "EvenSeries":
        order = min(self.order, other.order)
        return EvenSeries(
            order,
            [sum((self[a] * other[n - a] for a in range(n + 1)), Fraction(0)) for n in range(order + 1)],
        )

    def __truediv__(self, other: "EvenSeries") -> "EvenSeries":
        if other[0] == 0:
            raise ZeroDivisionError("series division needs a nonzero constant term")
        order = min(self.order, other.order)
        quotient: List[Fraction] = []
        for n in range(order + 1):
            acc = self[n] - sum((quotient[a] * other[n - a] for a in range(n)), Fraction(0))
            quotient.append(acc / other[0])
        return EvenSeries(order, quotient)


def cosh_series(order: int) -> EvenSeries:
    return EvenSeries(order, [Fraction(1, math.factorial(2 * j)) for j in range(order + 1)])


def sinh_over_x_series(order: int) -> EvenSeries:
    return EvenSeries(order, [Fraction(1, math.factorial(2 * j + 1)) for j in range(order + 1)])


def q_series(order: int) -> EvenSeries:
    """x·cosh(x)/sinh(x)，用阶乘级数精确相除"""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    return cosh_series(order) / sinh_over_x_series(order)


def multiplicative_sequence(series: EvenSeries, i: int, source: str = "oracle") -> LGenusResult:
    """∏_j Q(t_j) 的 2i 次部分写成 p_λ = e_λ(t²) 的组合

    关于 β_j = t_j² 对称，m_λ 的系数是 ∏_t q_{λ_t}；再用 m → e 换基。
    """
    if i < 1:
        raise ValueError(f"dimension index must be positive, got {i}")
    if series.order < i:
        raise ValueError(f"series of order {series.order} cannot produce L_{i}")
    if series[0] != 1:
        raise ValueError("a genus needs a series with constant term 1")
    coeffs: Dict[Partition, Fraction] = {mu: Fraction(0) for mu in enumerate_partitions(i)}
    for lam in enumerate_partitions(i):
        weight = Fraction(1)
        for part in lam.parts:
            weight *= series[part]
        if not weight:
            continue
        for mu, coeff in monomial_to_elementary(lam).items():
            coeffs[mu] += weight * coeff
    return LGenusResult(i, coeffs, source)


def oracle_l(i: int) -> LGenusResult:
    return multiplicative_sequence(q_series(i), i)


def compare(i: int, assignment: Optional[GeneratorAssignment] = None, workers: int = 1) -> bool:
    """两条路线必须完全一致"""
    expected = oracle_l(i)
    actual = solve_l(i, assignment, workers)
    if actual != expected:
        LOG.warning("L_%d mismatch: solver %s, oracle %s", i, actual.pretty(), expected.pretty())
        return False
    return True

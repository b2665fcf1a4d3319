"""示性数：Pontryagin 数 p_J、单项式对称数 s_J（含 Thom 的 s_n）与乘积公式"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from lgenus.algebra import ParamPoly, Scalar
from lgenus.cohomology import ClassElement
from lgenus.errors import ParseError, WeightMismatchError
from lgenus.manifolds import ManifoldModel
from lgenus.partitions import Partition, enumerate_partitions, ordered_splittings
from lgenus.symfun import elementary_to_monomial, monomial_to_elementary, power_sum_in_elementary

LOG = logging.getLogger("lgenus")

BASES = ("p", "s")


@dataclass(frozen=True)
class CharVector:
    """按规范顺序排列的全部示性数，p 基或 s 基"""

    dim4: int
    basis: str  # "p" | "s"
    values: Mapping[Partition, ParamPoly] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """验证并固定顺序"""
        if self.basis not in BASES:
            raise ValueError(f"Invalid basis: {self.basis}. Must be 'p' or 's'")
        expected = enumerate_partitions(self.dim4)
        if set(self.values) != set(expected):
            raise ValueError(f"CharVector of dim4 {self.dim4} needs exactly the partitions of {self.dim4}")
        ordered = {key: ParamPoly.coerce(self.values[key]) for key in expected}
        object.__setattr__(self, "values", MappingProxyType(ordered))

    def __getitem__(self, key: Partition) -> ParamPoly:
        return self.values[key]

    def items(self) -> Iterator[Tuple[Partition, ParamPoly]]:
        return iter(self.values.items())

    def params(self) -> frozenset:
        names: frozenset = frozenset()
        for value in self.values.values():
            names |= value.params()
        return names

    def to_basis(self, target: str) -> "CharVector":
        """p 基与 s 基互换"""
        if target == self.basis:
            return self
        if target not in BASES:
            raise ValueError(f"Invalid basis: {target}. Must be 'p' or 's'")
        if self.dim4 == 0:
            return CharVector(0, target, dict(self.values))
        converted: Dict[Partition, ParamPoly] = {}
        if target == "s":
            # s_λ = Σ_μ r_λμ p_μ，其中 m_λ = Σ_μ r_λμ e_μ
            for lam in self.values:
                total = ParamPoly()
                for mu, coeff in monomial_to_elementary(lam).items():
                    total = total + self.values[mu] * coeff
                converted[lam] = total
        else:
            # p_μ = Σ_λ K_μλ s_λ，其中 e_μ = Σ_λ K_μλ m_λ
            for mu in self.values:
                total = ParamPoly()
                for lam, coeff in elementary_to_monomial(mu).items():
                    total = total + self.values[lam] * coeff
                converted[mu] = total
        return CharVector(self.dim4, target, converted)

    def specialize(self, assignment: Mapping[str, Scalar]) -> "CharVector":
        return CharVector(
            self.dim4,
            self.basis,
            {key: ParamPoly.constant(value.specialize(assignment)) for key, value in self.items()},
        )

    def substitute(self, assignment: Mapping[str, Scalar]) -> "CharVector":
        return CharVector(
            self.dim4, self.basis, {key: value.substitute(assignment) for key, value in self.items()}
        )

    def to_dict(self) -> dict:
        """转换为字典（用于序列化）"""
        return {
            "dim4": self.dim4,
            "basis": self.basis,
            "entries": [
                {"partition": key.to_list(), "value": str(value)} for key, value in self.items()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CharVector":
        """从字典创建"""
        try:
            values = {
                Partition.of(entry["partition"]): ParamPoly.parse(entry["value"])
                for entry in data["entries"]
            }
            return cls(int(data["dim4"]), data["basis"], values)
        except (KeyError, TypeError) as e:
            raise ParseError(f"malformed CharVector: {e}") from None


def point_char_vector(basis: str = "s") -> CharVector:
    return CharVector(0, basis, {Partition(): 1})


def _check_weight(manifold: ManifoldModel, weight: int) -> None:
    if weight != manifold.dim4:
        raise WeightMismatchError(
            f"weight {weight} does not match {manifold.name} of dimension {4 * manifold.dim4}"
        )


def _class_product(manifold: ManifoldModel, partition: Partition) -> ClassElement:
    result = manifold.ring.one()
    for part in partition.parts:
        result = result * manifold.pontryagin_class(part)
    return result


def pontryagin_number(manifold: ManifoldModel, partition: Partition) -> ParamPoly:
    """⟨p_{j_1}⋯p_{j_l}, [M]⟩"""
    _check_weight(manifold, partition.weight)
    return manifold.ring.top_evaluate(_class_product(manifold, partition))


def s_number(source: Union[ManifoldModel, CharVector], n: int) -> ParamPoly:
    """Thom 的 s_n(M) = Σ_i ⟨y_i^{2n}, [M]⟩，用 Newton 恒等式写成 Pontryagin 类"""
    if isinstance(source, CharVector):
        if n != source.dim4:
            raise WeightMismatchError(f"weight {n} does not match a vector of dim4 {source.dim4}")
        return source.to_basis("s")[Partition((n,))]
    _check_weight(source, n)
    classes = {j: source.pontryagin_class(j) for j in range(1, n + 1)}
    return source.ring.top_evaluate(power_sum_in_elementary(n).evaluate(classes, source.ring.one()))


def _pontryagin_numbers(manifold: ManifoldModel) -> Dict[Partition, ParamPoly]:
    prefixes: Dict[Tuple[int, ...], ClassElement] = {(): manifold.ring.one()}
    values: Dict[Partition, ParamPoly] = {}
    for partition in enumerate_partitions(manifold.dim4):
        parts = partition.parts
        for length in range(1, len(parts) + 1):
            key = parts[:length]
            if key not in prefixes:
                prefixes[key] = prefixes[parts[: length - 1]] * manifold.pontryagin_class(parts[length - 1])
        values[partition] = manifold.ring.top_evaluate(prefixes[parts])
    return values


def char_vector(manifold: ManifoldModel, basis: str = "p") -> CharVector:
    """M 的全部示性数"""
    vector = CharVector(manifold.dim4, "p", _pontryagin_numbers(manifold))
    LOG.debug("char vector of %s computed", manifold.name)
    return vector.to_basis(basis)


def product_char_vector(left: CharVector, right: CharVector) -> CharVector:
    """s_J(M×N) = Σ_{J1⊎J2=J} s_{J1}(M)·s_{J2}(N)，只有权重与因子维数相符的项非零"""
    left = left.to_basis("s")
    right = right.to_basis("s")
    dim4 = left.dim4 + right.dim4
    values: Dict[Partition, ParamPoly] = {}
    for partition in enumerate_partitions(dim4):
        total = ParamPoly()
        for j1, j2 in ordered_splittings(partition):
            if j1.weight == left.dim4 and j2.weight == right.dim4:
                total = total + left[j1] * right[j2]
        values[partition] = total
    return CharVector(dim4, "s", values)


def convolved_char_vector(factors: Iterable[ManifoldModel]) -> CharVector:
    """不建张量模型，逐个因子卷积出乘积的 s 基示性数"""
    vector = point_char_vector("s")
    for factor in factors:
        vector = product_char_vector(vector, char_vector(factor, "s"))
    return vector


def generator_certificate(
    source: Union[ManifoldModel, CharVector], assignment: Optional[Mapping[str, Scalar]] = None
) -> bool:
    """s_m(M) ≠ 0 时 [M] 可以作为 Ω⋆⊗Q 在该维数的多项式生成元"""
    if source.dim4 == 0:
        return False
    return s_number(source, source.dim4).specialize(assignment or {}) != 0


def evaluate_combination(
    coeffs: Mapping[Partition, Scalar], source: Union[ManifoldModel, CharVector]
) -> ParamPoly:
    """Σ_J λ_J p_J 在流形（或其示性数向量）上的值"""
    if isinstance(source, ManifoldModel):
        dim4 = source.dim4
        numbers: Mapping[Partition, ParamPoly] = {}
    else:
        dim4 = source.dim4
        numbers = source.to_basis("p").values
    total = ParamPoly()
    for partition, coeff in coeffs.items():
        if partition.weight != dim4:
            raise WeightMismatchError(f"{partition} does not have weight {dim4}")
        if not coeff:
            continue
        if isinstance(source, ManifoldModel):
            value = pontryagin_number(source, partition)
        else:
            value = numbers[partition]
        total = total + value * Fraction(coeff)
    return total

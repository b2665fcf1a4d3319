"""流形模型：CP^{2m}、S⁴ 上的 CP^{2k} 丛 X_c 以及它们的乘积"""

import functools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

from lgenus.algebra import ParamPoly, Scalar
from lgenus.cohomology import (
    DEFAULT_MAX_BASIS,
    ClassElement,
    RingModel,
    lift,
    point_model,
    tensor,
)
from lgenus.parsing import FactorSpec

LOG = logging.getLogger("lgenus")

BundleConstant = Union[str, Scalar, ParamPoly]


@dataclass(frozen=True, eq=False)
class ManifoldModel:
    """上同调模型 + 总 Pontryagin 类 + 指定的符号差"""

    name: str
    dim4: int  # 实维数 4m 中的 m
    ring: RingModel
    total_p: ClassElement
    signature: Fraction
    params: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        """验证"""
        if self.total_p.model is not self.ring:
            raise ValueError("total Pontryagin class lives in a different model")
        if self.ring.top_degree != 4 * self.dim4:
            raise ValueError(f"top degree {self.ring.top_degree} does not match dim4 = {self.dim4}")
        if self.total_p.constant_term != 1:
            raise ValueError("total Pontryagin class must start with 1")
        object.__setattr__(self, "signature", Fraction(self.signature))
        object.__setattr__(self, "params", frozenset(self.params))

    @functools.cached_property
    def pontryagin_classes(self) -> Tuple[ClassElement, ...]:
        """(p_0, p_1, …, p_m)，p_j 是总类的 4j 次分量"""
        return tuple(self.total_p.component(4 * j) for j in range(self.dim4 + 1))

    def pontryagin_class(self, j: int) -> ClassElement:
        if j > self.dim4:
            return self.ring.zero()
        return self.pontryagin_classes[j]

    def __str__(self) -> str:
        return self.name


def _bundle_constant(c: BundleConstant) -> Tuple[ParamPoly, frozenset]:
    if isinstance(c, str):
        return ParamPoly.var(c), frozenset({c})
    poly = ParamPoly.coerce(c)
    return poly, poly.params()


def _constant_label(c: BundleConstant) -> str:
    return c if isinstance(c, str) else str(c)


def point() -> ManifoldModel:
    ring = point_model()
    return ManifoldModel("pt", 0, ring, ring.one(), Fraction(1))


def complex_projective_even(m: int, generator: str = "a") -> ManifoldModel:
    """CP^{2m}：a^{2m+1} = 0，p = (1 + a²)^{2m+1}，⟨a^{2m}⟩ = 1，符号差 1"""
    if m < 1:
        raise ValueError(f"CP^(2m) needs m >= 1, got {m}")
    ring = RingModel(
        [(generator, 2)],
        {(2 * m + 1,): {}},
        4 * m,
        {(2 * m,): 1},
        name=f"CP^{2 * m}",
    )
    total_p = (ring.one() + ring.monomial(**{generator: 2})) ** (2 * m + 1)
    return ManifoldModel(f"CP^{2 * m}", m, ring, total_p, Fraction(1))


def bundle_ring(k: int, c: BundleConstant = "c") -> RingModel:
    """H*(X_c)：x² = 0，y^{2k+1} = -c·x·y^{2k-1}，⟨x·y^{2k}⟩ = 1"""
    if k < 1:
        raise ValueError(f"projective bundles need k >= 1, got {k}")
    constant, _params = _bundle_constant(c)
    # 生成元顺序 (y, x)：字典序下 y^{2k+1} 是关系里最大的单项式
    return RingModel(
        [("y", 2), ("x", 4)],
        {
            (0, 2): {},
            (2 * k + 1, 0): {(2 * k - 1, 1): -constant},
        },
        4 * (k + 1),
        {(2 * k, 1): 1},
        name=f"X_{_constant_label(c)}(k={k})",
    )


def projective_bundle(k: int, c: BundleConstant = "c", *, ring: Optional[RingModel] = None) -> ManifoldModel:
    """S⁴ 上 2k+1 秩复向量丛的射影化 X_c（CP^{2k} 丛），符号差为 0

    c 为字符串时是形式参数，否则是具体的有理数。ring 可以替换成别的 (y, x) 模型。
    """
    if ring is None:
        ring = bundle_ring(k, c)
    constant, params = _bundle_constant(c)
    y2 = ring.monomial(y=2)
    cx = ring.gen("x") * constant
    # 分裂原理：y_1 + y_2 = 2y，y_1·y_2 = y² + cx
    root_sum = y2 * 2 - cx * 2  # y_1² + y_2²
    root_product = (y2 + cx) * (y2 + cx)  # y_1²·y_2²
    total_p = (ring.one() + y2) ** (2 * k - 1) * (ring.one() + root_sum + root_product)
    return ManifoldModel(ring.name, k + 1, ring, total_p, Fraction(0), params)


def bundle_chern_class(ring: RingModel, k: int, c: BundleConstant = "c") -> ClassElement:
    """纵向切丛的总 Chern 类 (1+y)^{2k+1} + c·x·(1+y)^{2k-1}"""
    constant, _params = _bundle_constant(c)
    one_plus_y = ring.one() + ring.gen("y")
    return one_plus_y ** (2 * k + 1) + ring.gen("x") * constant * one_plus_y ** (2 * k - 1)


def chern_to_pontryagin(chern: ClassElement, model: Union[RingModel, None] = None) -> ClassElement:
    """复丛的 Chern 类 → 其实化的 Pontryagin 类

    Σ (-1)^j p_j = c(E)·c(Ē)，c_i(Ē) = (-1)^i c_i(E)。
    """
    ring = model or chern.model
    if chern.model is not ring:
        raise ValueError("Chern class lives in a different model")
    if chern.constant_term != 1:
        raise ValueError("total Chern class must start with 1")
    conjugate = ring.zero()
    for degree in chern.degrees():
        sign = -1 if (degree // 2) % 2 else 1
        conjugate = conjugate + chern.component(degree) * sign
    product = chern * conjugate
    result = ring.zero()
    for degree in product.degrees():
        if degree % 4:
            if not product.component(degree).is_zero():
                raise ArithmeticError(f"c(E)c(conj E) has a nonzero component in degree {degree}")
            continue
        sign = -1 if (degree // 4) % 2 else 1
        result = result + product.component(degree) * sign
    return result


def middle_isotropic_class(ring: RingModel, k: int) -> ClassElement:
    """中间维数 2k+2 中的 x·y^{k-1}，它的平方为零"""
    return ring.monomial(x=1, y=k - 1)


def product(m: ManifoldModel, n: ManifoldModel, max_basis: int = DEFAULT_MAX_BASIS) -> ManifoldModel:
    """M × N：Whitney 乘积公式，符号差相乘"""
    ring = tensor(m.ring, n.ring, max_basis)
    total_p = lift(m.total_p, ring, 0) * lift(n.total_p, ring, len(m.ring.names))
    name = "*".join(part for part in (m.name, n.name) if part != "pt") or "pt"
    return ManifoldModel(
        name,
        m.dim4 + n.dim4,
        ring,
        total_p,
        m.signature * n.signature,
        m.params | n.params,
    )


def factor_model(spec: FactorSpec) -> ManifoldModel:
    if spec.kind == "pt":
        return point()
    if spec.kind == "cp":
        return complex_projective_even(spec.size)
    return projective_bundle(spec.size, spec.c)


def product_of(factors: Iterable[ManifoldModel], max_basis: int = DEFAULT_MAX_BASIS) -> ManifoldModel:
    result = point()
    for factor in factors:
        result = product(result, factor, max_basis)
    return result


def from_spec(factors: Iterable[FactorSpec], max_basis: int = DEFAULT_MAX_BASIS) -> ManifoldModel:
    """按流形描述构造张量积模型"""
    return product_of((factor_model(spec) for spec in factors), max_basis)


def middle_isotropy_holds(k: int, c: BundleConstant = "c") -> bool:
    """(x·y^{k-1})² = 0：中间维数的相交形式有一半维数的迷向子空间"""
    ring = bundle_ring(k, c)
    square = middle_isotropic_class(ring, k) ** 2
    return square.is_zero()


def root_power_sum(ring: RingModel, m: int, c: BundleConstant = "c") -> ClassElement:
    """y_1^m + y_2^m，只用 e_1 = 2y 与 e_2 = y² + cx（Newton 递推）"""
    if m < 0:
        raise ValueError(f"power must be >= 0, got {m}")
    constant, _params = _bundle_constant(c)
    e1 = ring.gen("y") * 2
    e2 = ring.monomial(y=2) + ring.gen("x") * constant
    previous, current = ring.scalar(2), e1
    if m == 0:
        return previous
    for _ in range(m - 1):
        previous, current = current, e1 * current - e2 * previous
    return current


def free_bundle_ring(top_degree: int) -> RingModel:
    """只带 x² = 0 的 (y, x) 模型，用来在截断次数以内检验根的恒等式"""
    return RingModel([("y", 2), ("x", 4)], {(0, 2): {}}, top_degree, {}, name="Q[y,x]/(x^2)")

"""由 CP² 与 S⁴ 上的 CP^{2k} 丛组成 Ω_{4i}⊗Q 的基，组装 Pontryagin 数矩阵并解出 L_i

这条路线只用到符号差在基上的取值（CP² 的幂为 1，其余含 X_c 因子的为 0），
从不调用签名定理或 x/tanh(x) 级数；那一边由 oracle 模块独立计算。
"""

import functools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from lgenus.algebra import (
    ParamPoly,
    RatMatrix,
    Scalar,
    common_denominator,
    format_rational,
    linear_solve,
    nullspace,
    primitive_integer_vector,
)
from lgenus.charnum import (
    CharVector,
    char_vector,
    evaluate_combination,
    point_char_vector,
    product_char_vector,
)
from lgenus.cohomology import DEFAULT_MAX_BASIS
from lgenus.errors import (
    BasisGuardError,
    ParseError,
    SingularMatrixError,
    WeightMismatchError,
    ZeroCombinationError,
)
from lgenus.manifolds import ManifoldModel, complex_projective_even, product_of, projective_bundle
from lgenus.parsing import parse_key_values, parse_rational, parse_sum
from lgenus.partitions import Partition, enumerate_partitions

LOG = logging.getLogger("lgenus")

BundleValue = Union[Fraction, str]


@dataclass
class GeneratorAssignment:
    """每个维数 j ≥ 2 的丛常数 c_j（X_{c_j} 取 k = j - 1），未列出的用 default"""

    constants: Dict[int, Fraction] = field(default_factory=dict)
    default: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        """验证配置"""
        self.default = Fraction(self.default)
        if self.default == 0:
            raise ValueError("Bundle constant must be nonzero, got default c = 0")
        clean: Dict[int, Fraction] = {}
        for j, value in self.constants.items():
            if not isinstance(j, int) or j < 2:
                raise ValueError(f"Bundle constants are indexed by j >= 2, got {j!r}")
            value = Fraction(value)
            if value == 0:
                raise ValueError(f"Bundle constant must be nonzero, got c_{j} = 0")
            clean[j] = value
        self.constants = dict(sorted(clean.items()))

    def c_for(self, j: int) -> Fraction:
        return self.constants.get(j, self.default)

    @classmethod
    def uniform(cls, c: Scalar) -> "GeneratorAssignment":
        return cls(default=Fraction(c))

    @classmethod
    def parse(cls, text: str) -> "GeneratorAssignment":
        """解析 "2:1,3:-3"；键 "*" 设置默认值"""
        constants: Dict[int, Fraction] = {}
        default = Fraction(1)
        for key, value in parse_key_values(text):
            c = parse_rational(value)
            if key == "*":
                default = c
                continue
            if not key.isdigit():
                raise ParseError(f"invalid dimension index {key!r} in {text!r}")
            constants[int(key)] = c
        try:
            return cls(constants, default)
        except ValueError as e:
            raise ParseError(str(e)) from None

    def to_dict(self) -> dict:
        """转换为字典（用于序列化）"""
        return {
            "default": format_rational(self.default),
            "constants": {str(j): format_rational(c) for j, c in self.constants.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratorAssignment":
        """从字典创建"""
        return cls(
            {int(j): parse_rational(c) for j, c in data.get("constants", {}).items()},
            parse_rational(str(data.get("default", "1"))),
        )


# ---------------- basis manifolds ----------------


@functools.lru_cache(maxsize=None)
def generator_s_vector(j: int, c: BundleValue = Fraction(1)) -> CharVector:
    """α_1 = CP²，α_j = X_c（k = j - 1）的 s 基示性数"""
    if j < 1:
        raise ValueError(f"generator index must be positive, got {j}")
    if j == 1:
        return char_vector(complex_projective_even(1), "s")
    return char_vector(projective_bundle(j - 1, c), "s")


def factor_constants(partition: Partition, assignment: Optional[GeneratorAssignment] = None, *,
                     symbolic: bool = False) -> List[Tuple[int, Optional[BundleValue]]]:
    """α_I 各因子的 (j, c)；symbolic 时每个 X 因子一个形式参数"""
    assignment = assignment or GeneratorAssignment()
    bundles = partition.nontrivial_parts()
    factors: List[Tuple[int, Optional[BundleValue]]] = []
    seen = 0
    for part in partition.parts:
        if part == 1:
            factors.append((1, None))
        elif symbolic:
            seen += 1
            factors.append((part, "c" if bundles == 1 else f"c{seen}"))
        else:
            factors.append((part, assignment.c_for(part)))
    return factors


def basis_char_vector(partition: Partition, assignment: Optional[GeneratorAssignment] = None, *,
                      symbolic: bool = False) -> CharVector:
    """α_I 的 s 基示性数，逐个因子卷积"""
    vector = point_char_vector("s")
    for j, c in factor_constants(partition, assignment, symbolic=symbolic):
        factor = generator_s_vector(1) if j == 1 else generator_s_vector(j, c)
        vector = product_char_vector(vector, factor)
    return vector


def basis_factors(
    partition: Partition, assignment: Optional[GeneratorAssignment] = None, *, symbolic: bool = False
) -> List[ManifoldModel]:
    return [
        complex_projective_even(1) if j == 1 else projective_bundle(j - 1, c)
        for j, c in factor_constants(partition, assignment, symbolic=symbolic)
    ]


def basis_manifold(
    partition: Partition,
    assignment: Optional[GeneratorAssignment] = None,
    max_basis: int = DEFAULT_MAX_BASIS,
    *,
    symbolic: bool = False,
) -> Union[ManifoldModel, CharVector]:
    """α_I = ∏ α_{i_t}；张量模型超过上限时退回卷积得到的 p 基向量"""
    try:
        return product_of(basis_factors(partition, assignment, symbolic=symbolic), max_basis)
    except BasisGuardError as e:
        LOG.info("%s; using the convolution path for %s", e, partition)
        return basis_char_vector(partition, assignment, symbolic=symbolic).to_basis("p")


# ---------------- assembly and solve ----------------


def _assemble_row(parts: Tuple[int, ...], assignment: GeneratorAssignment) -> List[Fraction]:
    vector = basis_char_vector(Partition(parts), assignment).to_basis("p")
    return [value.constant_value() for _key, value in vector.items()]


def assemble(
    i: int, assignment: Optional[GeneratorAssignment] = None, workers: int = 1
) -> Tuple[RatMatrix, List[Fraction]]:
    """A[I][J] = p_J(α_I)，b[I] = σ(α_I)；行列都按规范顺序"""
    if i < 1:
        raise ValueError(f"dimension index must be positive, got {i}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    assignment = assignment or GeneratorAssignment()
    basis = enumerate_partitions(i)
    started = time.perf_counter()
    if workers > 1 and len(basis) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_assemble_row, [p.parts for p in basis], [assignment] * len(basis)))
    else:
        rows = [_assemble_row(p.parts, assignment) for p in basis]
    # 只有 (CP²)^i 的符号差为 1，其余基元素都含 X_c 因子
    rhs = [Fraction(1) if p.is_all_ones() else Fraction(0) for p in basis]
    LOG.info("assembled %dx%d system for i=%d in %.3fs", len(basis), len(basis), i, time.perf_counter() - started)
    return RatMatrix(rows), rhs


@dataclass(frozen=True)
class LGenusResult:
    """L_i = Σ_J λ_J p_J"""

    i: int
    coeffs: Mapping[Partition, Fraction]
    source: str = field(default="solver", compare=False)

    def __post_init__(self) -> None:
        """验证并固定顺序"""
        expected = enumerate_partitions(self.i)
        if set(self.coeffs) != set(expected):
            raise ValueError(f"L_{self.i} needs exactly the partitions of {self.i}")
        ordered = {key: Fraction(self.coeffs[key]) for key in expected}
        object.__setattr__(self, "coeffs", MappingProxyType(ordered))

    def __getitem__(self, key: Partition) -> Fraction:
        return self.coeffs[key]

    @property
    def denominator(self) -> int:
        return common_denominator(self.coeffs.values())

    def pretty(self) -> str:
        """"L_3 = (62*p[3] - 13*p[2]*p[1] + 2*p[1]^3)/945" """
        den = self.denominator
        pieces: List[str] = []
        for key, coeff in self.coeffs.items():
            if not coeff:
                continue
            scaled = coeff * den
            magnitude = abs(scaled)
            body = pontryagin_monomial(key) if magnitude == 1 else f"{magnitude}*{pontryagin_monomial(key)}"
            if not pieces:
                pieces.append(f"-{body}" if scaled < 0 else body)
            else:
                pieces.append(f" - {body}" if scaled < 0 else f" + {body}")
        if not pieces:
            return f"L_{self.i} = 0"
        numerator = "".join(pieces)
        if den == 1:
            return f"L_{self.i} = {numerator}"
        if len(pieces) == 1:
            return f"L_{self.i} = {numerator}/{den}"
        return f"L_{self.i} = ({numerator})/{den}"

    def to_dict(self) -> dict:
        """转换为字典（用于序列化）"""
        return {
            "i": self.i,
            "source": self.source,
            "terms": [
                {"partition": key.to_list(), "coefficient": format_rational(value)}
                for key, value in self.coeffs.items()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LGenusResult":
        """从字典创建"""
        try:
            coeffs = {Partition.of(t["partition"]): parse_rational(t["coefficient"]) for t in data["terms"]}
            return cls(int(data["i"]), coeffs, data.get("source", "solver"))
        except (KeyError, TypeError) as e:
            raise ParseError(f"malformed L-genus result: {e}") from None


def pontryagin_monomial(partition: Partition) -> str:
    """[2,1,1] → "p[2]*p[1]^2" """
    if not partition.parts:
        return "1"
    pieces = []
    for part, mult in sorted(partition.multiplicities().items(), reverse=True):
        pieces.append(f"p[{part}]" if mult == 1 else f"p[{part}]^{mult}")
    return "*".join(pieces)


def solve_l(i: int, assignment: Optional[GeneratorAssignment] = None, workers: int = 1) -> LGenusResult:
    """解 Aλ = b；矩阵奇异说明基假设被破坏，直接报错"""
    matrix, rhs = assemble(i, assignment, workers)
    started = time.perf_counter()
    solution = linear_solve(matrix, rhs)
    LOG.info("solved for L_%d in %.3fs", i, time.perf_counter() - started)
    return LGenusResult(i, dict(zip(enumerate_partitions(i), solution)), "solver")


def verify_independence(i: int, assignments: Sequence[GeneratorAssignment], workers: int = 1) -> bool:
    """不同的 c 取值必须给出完全相同的 L_i"""
    if len(assignments) < 2:
        raise ValueError("independence needs at least two assignments")
    results = [solve_l(i, assignment, workers) for assignment in assignments]
    return all(result == results[0] for result in results[1:])


# ---------------- combinations ----------------


@dataclass(frozen=True)
class Combo:
    """Pontryagin 数的有理线性组合 f = Σ_J f_J p_J"""

    i: int
    coeffs: Mapping[Partition, Fraction]

    def __post_init__(self) -> None:
        """验证并补齐"""
        if self.i < 1:
            raise ValueError(f"dimension index must be positive, got {self.i}")
        full = {key: Fraction(0) for key in enumerate_partitions(self.i)}
        for key, value in self.coeffs.items():
            if key.weight != self.i:
                raise WeightMismatchError(f"{key} has weight {key.weight}, expected {self.i}")
            full[key] += Fraction(value)
        object.__setattr__(self, "coeffs", MappingProxyType(full))

    def is_zero(self) -> bool:
        return not any(self.coeffs.values())

    @classmethod
    def parse(cls, text: str, i: Optional[int] = None) -> "Combo":
        """解析 "7*p[2]-p[1]^2"；i 缺省时取第一项的权重"""
        coeffs: Dict[Partition, Fraction] = {}
        for coeff, atoms in parse_sum(text):
            parts: List[int] = []
            for atom, exponent in atoms.items():
                if not (atom.startswith("p[") and atom.endswith("]")):
                    raise ParseError(f"expected p[j] factors, got {atom!r} in {text!r}")
                j = int(atom[2:-1])
                if j < 1:
                    raise ParseError(f"Pontryagin classes start at p[1], got {atom!r}")
                parts.extend([j] * exponent)
            key = Partition.of(parts)
            if i is None:
                i = key.weight
            coeffs[key] = coeffs.get(key, Fraction(0)) + coeff
        if i is None:
            raise ParseError(f"empty combination {text!r}")
        for key in coeffs:
            if key.weight != i:
                raise WeightMismatchError(f"term {pontryagin_monomial(key)} has weight {key.weight}, expected {i}")
        return cls(i, coeffs)

    @classmethod
    def from_result(cls, result: LGenusResult) -> "Combo":
        return cls(result.i, dict(result.coeffs))

    def __str__(self) -> str:
        pieces: List[str] = []
        for key, coeff in self.coeffs.items():
            if not coeff:
                continue
            magnitude = abs(coeff)
            body = pontryagin_monomial(key) if magnitude == 1 else f"{format_rational(magnitude)}*{pontryagin_monomial(key)}"
            if not pieces:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(pieces) or "0"


@dataclass(frozen=True)
class Classification:
    """classify_combo 的结果：符号差的倍数，或一个无界的见证"""

    i: int
    kind: str  # "multiple" | "witness"
    ratio: Optional[Fraction] = None
    partition: Optional[Partition] = None
    value: Optional[ParamPoly] = None

    def __post_init__(self) -> None:
        if self.kind == "multiple" and self.ratio is None:
            raise ValueError("a multiple needs its ratio")
        if self.kind == "witness" and (self.partition is None or self.value is None):
            raise ValueError("a witness needs a partition and a value")
        if self.kind not in ("multiple", "witness"):
            raise ValueError(f"Invalid kind: {self.kind}. Must be 'multiple' or 'witness'")

    @property
    def is_multiple(self) -> bool:
        return self.kind == "multiple"

    def describe(self) -> str:
        if self.is_multiple:
            return f"multiple of signature, ratio {format_rational(self.ratio)}"
        return f"unbounded; witness α_I = {self.partition}, value = {self.value}"

    def to_dict(self) -> dict:
        """转换为字典（用于序列化）"""
        if self.is_multiple:
            return {"i": self.i, "kind": "multiple", "ratio": format_rational(self.ratio)}
        return {"i": self.i, "kind": "witness", "partition": self.partition.to_list(), "value": str(self.value)}

    @classmethod
    def from_dict(cls, data: dict) -> "Classification":
        """从字典创建"""
        try:
            if data["kind"] == "multiple":
                return cls(int(data["i"]), "multiple", ratio=parse_rational(data["ratio"]))
            return cls(
                int(data["i"]),
                data["kind"],
                partition=Partition.of(data["partition"]),
                value=ParamPoly.parse(data["value"]),
            )
        except (KeyError, TypeError) as e:
            raise ParseError(f"malformed classification: {e}") from None


def classify_combo(combo: Combo) -> Classification:
    """f 在每个含 X 因子的 α_I 上取值（c 为形式参数）；全为零则 f = r·L_i，否则给出见证

    见证的值是关于各 c 的非零多项式，次数等于 I 中大于 1 的部分个数，
    所以 c 变化时 f 无界。
    """
    if combo.is_zero():
        raise ZeroCombinationError(f"combination in dimension {4 * combo.i} is identically zero")
    for partition in enumerate_partitions(combo.i):
        if partition.is_all_ones():
            continue
        value = evaluate_combination(combo.coeffs, basis_char_vector(partition, symbolic=True))
        if value:
            LOG.debug("witness %s for %s: %s", partition, combo, value)
            return Classification(combo.i, "witness", partition=partition, value=value)
    # σ((CP²)^i) = 1，所以比值就是 f 在 (CP²)^i 上的值
    ratio = evaluate_combination(combo.coeffs, basis_char_vector(Partition.ones(combo.i))).constant_value()
    if ratio == 0:
        raise SingularMatrixError(f"{combo} vanishes on every basis manifold")
    return Classification(combo.i, "multiple", ratio=ratio)


# ---------------- kernel route ----------------


def vanishing_combination(i: int, assignment: Optional[GeneratorAssignment] = None) -> Tuple[Combo, Fraction]:
    """在所有含 X 因子的 α_I 上为零的整系数组合（互素，在 (CP²)^i 上为正），以及它在 (CP²)^i 上的值"""
    matrix, _rhs = assemble(i, assignment)
    basis = enumerate_partitions(i)
    rows = [matrix.row(r) for r, p in enumerate(basis) if not p.is_all_ones()]
    if rows:
        kernel = nullspace(RatMatrix(rows))
    else:
        kernel = [[Fraction(1)]]
    if len(kernel) != 1:
        raise SingularMatrixError(f"kernel of the bundle rows has dimension {len(kernel)}, expected 1")
    vector = primitive_integer_vector(kernel[0])
    ones_row = matrix.row(len(basis) - 1)
    value = sum((Fraction(a) * b for a, b in zip(vector, ones_row)), Fraction(0))
    if value == 0:
        raise SingularMatrixError(f"vanishing combination is also zero on (CP^2)^{i}")
    if value < 0:
        vector = [-v for v in vector]
        value = -value
    return Combo(i, dict(zip(basis, vector))), value


def solve_l_via_kernel(i: int, assignment: Optional[GeneratorAssignment] = None) -> LGenusResult:
    """L_i = 核中的组合 / 它在 (CP²)^i 上的值"""
    combo, value = vanishing_combination(i, assignment)
    return LGenusResult(i, {key: coeff / value for key, coeff in combo.coeffs.items()}, "kernel")

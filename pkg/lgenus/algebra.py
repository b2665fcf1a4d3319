"""精确算术基础：有理数、参数多项式、有理矩阵与线性求解"""

import logging
import math
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from lgenus.errors import MissingParameterError, ParseError, SingularMatrixError
from lgenus.parsing import parse_rational, parse_sum

LOG = logging.getLogger("lgenus")

Rational = Fraction
Scalar = Union[int, Fraction]

# (参数名, 指数) 按参数名排序，空元组表示常数项
Monomial = Tuple[Tuple[str, int], ...]

_EMPTY: Monomial = ()


def format_rational(value: Scalar) -> str:
    """"n/d"（最简）或 "n"（d = 1）"""
    return str(Fraction(value))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for name, exp in b:
        merged[name] = merged.get(name, 0) + exp
    return tuple(sorted(merged.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(exp for _name, exp in m)


def _mono_str(m: Monomial) -> str:
    return "*".join(name if exp == 1 else f"{name}^{exp}" for name, exp in m)


class ParamPoly:
    """形式参数（丛常数 c）上的稀疏多项式，系数为有理数

    不可变；只含常数项的多项式与对应的有理数相等且哈希一致。
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None) -> None:
        clean: Dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            key = tuple(sorted((name, exp) for name, exp in mono if exp))
            for _name, exp in key:
                if exp < 0:
                    raise ValueError(f"negative exponent in monomial {mono!r}")
            value = clean.get(key, Fraction(0)) + Fraction(coeff)
            if value:
                clean[key] = value
            else:
                clean.pop(key, None)
        self._terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def _wrap(cls, clean: Dict[Monomial, Fraction]) -> "ParamPoly":
        poly = cls.__new__(cls)
        poly._terms = clean
        poly._hash = None
        return poly

    # ----- constructors -----
    @classmethod
    def constant(cls, value: Scalar) -> "ParamPoly":
        value = Fraction(value)
        return cls._wrap({_EMPTY: value} if value else {})

    @classmethod
    def var(cls, name: str) -> "ParamPoly":
        return cls._wrap({((name, 1),): Fraction(1)})

    @classmethod
    def coerce(cls, value: Union["ParamPoly", Scalar]) -> "ParamPoly":
        if isinstance(value, ParamPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.constant(value)
        raise TypeError(f"cannot use {type(value).__name__} as a polynomial coefficient")

    @classmethod
    def parse(cls, text: str) -> "ParamPoly":
        """解析 str() 的输出，如 "-21*c"、"3*c^2 - 1"、"0" """
        terms: Dict[Monomial, Fraction] = {}
        for coeff, atoms in parse_sum(text):
            for name in atoms:
                if "[" in name:
                    raise ParseError(f"unexpected indexed name {name!r} in {text!r}")
            key = tuple(sorted(atoms.items()))
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return cls(terms)

    # ----- inspection -----
    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _EMPTY in self._terms)

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get(_EMPTY, Fraction(0))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.constant_term

    def params(self) -> frozenset:
        return frozenset(name for mono in self._terms for name, _exp in mono)

    def total_degrees(self) -> frozenset:
        """各项关于全部参数的总次数"""
        return frozenset(_mono_degree(mono) for mono in self._terms)

    def degree_in(self, name: str) -> int:
        return max((dict(mono).get(name, 0) for mono in self._terms), default=0)

    # ----- arithmetic -----
    def __add__(self, other: Union["ParamPoly", Scalar]) -> "ParamPoly":
        try:
            other = ParamPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        result = dict(self._terms)
        for mono, coeff in other._terms.items():
            value = result.get(mono, Fraction(0)) + coeff
            if value:
                result[mono] = value
            else:
                result.pop(mono, None)
        return ParamPoly._wrap(result)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly._wrap({mono: -coeff for mono, coeff in self._terms.items()})

    def __sub__(self, other: Union["ParamPoly", Scalar]) -> "ParamPoly":
        try:
            other = ParamPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "ParamPoly":
        return ParamPoly.coerce(other) - self

    def __mul__(self, other: Union["ParamPoly", Scalar]) -> "ParamPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ParamPoly._wrap({})
            return ParamPoly._wrap({mono: coeff * other for mono, coeff in self._terms.items()})
        if not isinstance(other, ParamPoly):
            return NotImplemented
        if self.is_constant():
            return other * self.constant_term
        if other.is_constant():
            return self * other.constant_term
        result: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _mono_mul(m1, m2)
                value = result.get(mono, Fraction(0)) + c1 * c2
                if value:
                    result[mono] = value
                else:
                    result.pop(mono, None)
        return ParamPoly._wrap(result)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "ParamPoly":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self * (1 / Fraction(other))

    def __pow__(self, exponent: int) -> "ParamPoly":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = ParamPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # ----- substitution -----
    def specialize(self, assignment: Mapping[str, Scalar]) -> Fraction:
        """代入全部参数，返回精确的有理数"""
        total = Fraction(0)
        for mono, coeff in self._terms.items():
            value = coeff
            for name, exp in mono:
                if name not in assignment:
                    raise MissingParameterError(f"no value for parameter {name!r}")
                value *= Fraction(assignment[name]) ** exp
            total += value
        return total

    def substitute(self, assignment: Mapping[str, Scalar]) -> "ParamPoly":
        """只代入给出的参数，其余保持形式"""
        result: Dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            value = coeff
            rest = []
            for name, exp in mono:
                if name in assignment:
                    value *= Fraction(assignment[name]) ** exp
                else:
                    rest.append((name, exp))
            key = tuple(rest)
            result[key] = result.get(key, Fraction(0)) + value
        return ParamPoly(result)

    # ----- comparison -----
    def __eq__(self, other: object) -> bool:
        if isinstance(other, ParamPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term)
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # ----- printing -----
    def _sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        names = sorted(self.params())

        def key(item: Tuple[Monomial, Fraction]) -> Tuple:
            exps = dict(item[0])
            return (-_mono_degree(item[0]), tuple(-exps.get(name, 0) for name in names))

        return sorted(self._terms.items(), key=key)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: List[str] = []
        for index, (mono, coeff) in enumerate(self._sorted_terms()):
            magnitude = abs(coeff)
            if not mono:
                body = format_rational(magnitude)
            elif magnitude == 1:
                body = _mono_str(mono)
            else:
                body = f"{format_rational(magnitude)}*{_mono_str(mono)}"
            if index == 0:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"ParamPoly({str(self)!r})"


def as_fraction(value: Union[ParamPoly, Scalar]) -> Fraction:
    if isinstance(value, ParamPoly):
        return value.constant_value()
    return Fraction(value)


# ---------------- dense rational matrices ----------------


class RatMatrix:
    """稠密有理矩阵，按行存放在 dtype=object 的 numpy 数组里"""

    __slots__ = ("_data",)

    def __init__(self, rows: Iterable[Iterable[Union[ParamPoly, Scalar, str]]]) -> None:
        table = [[_entry(value) for value in row] for row in rows]
        width = len(table[0]) if table else 0
        for row in table:
            if len(row) != width:
                raise ValueError("matrix rows must all have the same length")
        data = np.empty((len(table), width), dtype=object)
        for i, row in enumerate(table):
            for j, value in enumerate(row):
                data[i, j] = value
        self._data = data

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        return self._data[index]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return tuple(self._data[i, :])

    def to_lists(self) -> List[List[Fraction]]:
        return [list(self._data[i, :]) for i in range(self.rows)]

    def matvec(self, vector: Sequence[Union[ParamPoly, Scalar]]) -> List[Fraction]:
        if len(vector) != self.cols:
            raise ValueError(f"vector length {len(vector)} != {self.cols} columns")
        out = []
        for i in range(self.rows):
            total = Fraction(0)
            for a, v in zip(self._data[i, :], vector):
                total += a * _entry(v)
            out.append(total)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.to_lists() == other.to_lists()

    def __repr__(self) -> str:
        body = "; ".join(", ".join(format_rational(v) for v in row) for row in self.to_lists())
        return f"RatMatrix([{body}])"


def _entry(value: Union[ParamPoly, Scalar, str]) -> Fraction:
    if isinstance(value, str):
        return parse_rational(value)
    return as_fraction(value)


def _pivot_row(data: np.ndarray, col: int, start: int) -> Optional[int]:
    best: Optional[int] = None
    for r in range(start, data.shape[0]):
        value = data[r, col]
        if value and (best is None or abs(value.numerator) > abs(data[best, col].numerator)):
            best = r
    return best


def _row_reduce(data: np.ndarray, ncols: int) -> List[int]:
    """就地化为简化行阶梯形，只在前 ncols 列选主元；返回主元列"""
    pivots: List[int] = []
    row = 0
    for col in range(ncols):
        if row >= data.shape[0]:
            break
        pivot = _pivot_row(data, col, row)
        if pivot is None:
            continue
        if pivot != row:
            data[[row, pivot]] = data[[pivot, row]]
        data[row, :] = data[row, :] / data[row, col]
        for r in range(data.shape[0]):
            factor = data[r, col]
            if r != row and factor:
                data[r, :] = data[r, :] - factor * data[row, :]
        pivots.append(col)
        row += 1
    return pivots


def linear_solve(a: RatMatrix, b: Sequence[Union[ParamPoly, Scalar]]) -> List[Fraction]:
    """精确求解 Ax = b（Gauss 消元，按分子绝对值最大选主元）"""
    n = a.rows
    if a.cols != n:
        raise ValueError(f"matrix must be square, got {a.rows}x{a.cols}")
    if len(b) != n:
        raise ValueError(f"right-hand side has length {len(b)}, expected {n}")
    augmented = np.empty((n, n + 1), dtype=object)
    augmented[:, :n] = a._data
    for i, value in enumerate(b):
        augmented[i, n] = _entry(value)
    pivots = _row_reduce(augmented, n)
    if len(pivots) < n:
        missing = sorted(set(range(n)) - set(pivots))
        raise SingularMatrixError(f"singular {n}x{n} system, no pivot in columns {missing}")
    LOG.debug("solved %dx%d system", n, n)
    return [Fraction(augmented[i, n]) for i in range(n)]


def nullspace(a: RatMatrix) -> List[List[Fraction]]:
    """零空间的一组基（每个自由列一个向量）"""
    data = a._data.copy()
    pivots = _row_reduce(data, a.cols)
    free = [col for col in range(a.cols) if col not in pivots]
    basis: List[List[Fraction]] = []
    for f in free:
        vector = [Fraction(0)] * a.cols
        vector[f] = Fraction(1)
        for row, col in enumerate(pivots):
            vector[col] = -Fraction(data[row, f])
        basis.append(vector)
    return basis


def common_denominator(values: Iterable[Scalar]) -> int:
    """分母的最小公倍数"""
    den = 1
    for value in values:
        den = math.lcm(den, Fraction(value).denominator)
    return den


def primitive_integer_vector(values: Sequence[Scalar]) -> List[int]:
    """按比例化为互素的整数向量（方向不变）"""
    den = common_denominator(values)
    ints = [int(Fraction(v) * den) for v in values]
    content = math.gcd(*ints) if ints else 0
    if content == 0:
        return ints
    return [v // content for v in ints]

"""有限分次交换上同调模型

模型由生成元（名字、偶数次数）、定向改写规则、顶次数和基本类求值给出。
单项式用指数元组表示，位置与生成元一一对应；系数一律是 ParamPoly，
同一套构造既能带形式参数 c，也能代入具体的有理数。
"""

import logging
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from lgenus.algebra import ParamPoly, Scalar
from lgenus.errors import BasisGuardError, ConfluenceError

LOG = logging.getLogger("lgenus")

ExpVec = Tuple[int, ...]
Coefficient = Union[ParamPoly, Scalar]

DEFAULT_MAX_BASIS = 10**6

_ZERO = ParamPoly()
_ONE = ParamPoly.constant(1)


def _add(a: ExpVec, b: ExpVec) -> ExpVec:
    return tuple(x + y for x, y in zip(a, b))


def _divides(lhs: ExpVec, mono: ExpVec) -> bool:
    return all(m >= l for l, m in zip(lhs, mono))


class RingModel:
    """生成元 + 改写关系 + 顶次截断 + 基本类求值"""

    def __init__(
        self,
        generators: Sequence[Tuple[str, int]],
        relations: Mapping[ExpVec, Mapping[ExpVec, Coefficient]],
        top_degree: int,
        fundamental: Mapping[ExpVec, Coefficient],
        *,
        name: str = "",
        basis: Optional[Mapping[int, Sequence[ExpVec]]] = None,
        check: bool = True,
    ) -> None:
        self.name = name
        self.names: Tuple[str, ...] = tuple(n for n, _d in generators)
        self.degrees: Tuple[int, ...] = tuple(d for _n, d in generators)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"Duplicate generator names: {self.names}")
        for gen_name, degree in generators:
            if degree <= 0 or degree % 2:
                raise ValueError(f"Generator {gen_name} must have even positive degree, got {degree}")
        if top_degree < 0 or top_degree % 4:
            raise ValueError(f"Top degree must be a nonnegative multiple of 4, got {top_degree}")
        self.top_degree = top_degree

        rules: List[Tuple[ExpVec, Dict[ExpVec, ParamPoly]]] = []
        for lhs, rhs in relations.items():
            lhs = tuple(lhs)
            self._check_width(lhs)
            clean: Dict[ExpVec, ParamPoly] = {}
            for mono, coeff in rhs.items():
                mono = tuple(mono)
                self._check_width(mono)
                if self.degree_of(mono) != self.degree_of(lhs):
                    raise ValueError(f"Relation {lhs} -> {mono} is not homogeneous")
                if self._order_key(mono) >= self._order_key(lhs):
                    raise ValueError(f"Relation {lhs} -> {mono} does not decrease the monomial")
                coeff = ParamPoly.coerce(coeff)
                if coeff:
                    clean[mono] = coeff
            rules.append((lhs, clean))
        self.rules: Tuple[Tuple[ExpVec, Mapping[ExpVec, ParamPoly]], ...] = tuple(
            (lhs, MappingProxyType(rhs)) for lhs, rhs in rules
        )
        self._nf_cache: Dict[ExpVec, Mapping[ExpVec, ParamPoly]] = {}

        if basis is None:
            basis = self._enumerate_basis()
        self.basis: Mapping[int, Tuple[ExpVec, ...]] = MappingProxyType(
            {degree: tuple(monos) for degree, monos in sorted(basis.items())}
        )

        top_basis = set(self.basis.get(top_degree, ()))
        fund: Dict[ExpVec, ParamPoly] = {}
        for mono, value in fundamental.items():
            mono = tuple(mono)
            if mono not in top_basis:
                raise ValueError(f"Fundamental class is evaluated on {mono}, not a top-degree basis monomial")
            value = ParamPoly.coerce(value)
            if value:
                fund[mono] = value
        self.fundamental: Mapping[ExpVec, ParamPoly] = MappingProxyType(fund)

        if check:
            self.check_confluence()

    # ----- monomials -----
    def _check_width(self, mono: ExpVec) -> None:
        if len(mono) != len(self.names) or any(e < 0 for e in mono):
            raise ValueError(f"Monomial {mono} does not fit generators {self.names}")

    def degree_of(self, mono: ExpVec) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def _order_key(self, mono: ExpVec) -> Tuple[int, ExpVec]:
        return self.degree_of(mono), mono

    def _find_rule(self, mono: ExpVec) -> Optional[Tuple[ExpVec, Mapping[ExpVec, ParamPoly]]]:
        for rule in self.rules:
            if _divides(rule[0], mono):
                return rule
        return None

    def _enumerate_basis(self) -> Dict[int, List[ExpVec]]:
        basis: Dict[int, List[ExpVec]] = {}

        def walk(index: int, prefix: ExpVec, degree: int) -> None:
            if index == len(self.names):
                basis.setdefault(degree, []).append(prefix)
                return
            exponent = 0
            while degree + exponent * self.degrees[index] <= self.top_degree:
                candidate = prefix + (exponent,)
                padded = candidate + (0,) * (len(self.names) - index - 1)
                if self._find_rule(padded) is not None:
                    break
                walk(index + 1, candidate, degree + exponent * self.degrees[index])
                exponent += 1

        walk(0, (), 0)
        for monos in basis.values():
            monos.sort(key=self._order_key, reverse=True)
        return basis

    @property
    def size(self) -> int:
        return sum(len(monos) for monos in self.basis.values())

    def normal_form(self, mono: ExpVec) -> Mapping[ExpVec, ParamPoly]:
        """单项式的约化形式；次数超过顶次的部分为零"""
        cached = self._nf_cache.get(mono)
        if cached is not None:
            return cached
        if self.degree_of(mono) > self.top_degree:
            result: Mapping[ExpVec, ParamPoly] = MappingProxyType({})
        else:
            rule = self._find_rule(mono)
            if rule is None:
                result = MappingProxyType({mono: _ONE})
            else:
                result = MappingProxyType(self._apply_then_reduce(mono, *rule))
        self._nf_cache[mono] = result
        return result

    def rewrite_steps(self, mono: ExpVec) -> int:
        """不走缓存地约化，返回最长改写链的长度"""
        if self.degree_of(mono) > self.top_degree:
            return 0
        rule = self._find_rule(mono)
        if rule is None:
            return 0
        lhs, rhs = rule
        quotient = tuple(m - l for m, l in zip(mono, lhs))
        return 1 + max((self.rewrite_steps(_add(quotient, rmono)) for rmono in rhs), default=0)

    def check_confluence(self) -> None:
        """对每对规则的临界单项式，两条改写路径必须得到同一个范式"""
        for i, (lhs_a, rhs_a) in enumerate(self.rules):
            for lhs_b, rhs_b in self.rules[i + 1 :]:
                lcm = tuple(max(a, b) for a, b in zip(lhs_a, lhs_b))
                if self.degree_of(lcm) > self.top_degree:
                    continue
                via_a = self._apply_then_reduce(lcm, lhs_a, rhs_a)
                via_b = self._apply_then_reduce(lcm, lhs_b, rhs_b)
                if via_a != via_b:
                    raise ConfluenceError(
                        f"{self.name or 'model'}: rules {lhs_a} and {lhs_b} disagree on {lcm}"
                    )

    def _apply_then_reduce(
        self, mono: ExpVec, lhs: ExpVec, rhs: Mapping[ExpVec, ParamPoly]
    ) -> Dict[ExpVec, ParamPoly]:
        quotient = tuple(m - l for m, l in zip(mono, lhs))
        acc: Dict[ExpVec, ParamPoly] = {}
        for rmono, coeff in rhs.items():
            for nmono, ncoeff in self.normal_form(_add(quotient, rmono)).items():
                acc[nmono] = acc.get(nmono, _ZERO) + coeff * ncoeff
        return {m: c for m, c in acc.items() if c}

    # ----- elements -----
    def element(self, terms: Mapping[ExpVec, Coefficient]) -> "ClassElement":
        """由任意（未约化的）单项式组合构造元素"""
        acc: Dict[ExpVec, ParamPoly] = {}
        for mono, coeff in terms.items():
            mono = tuple(mono)
            self._check_width(mono)
            coeff = ParamPoly.coerce(coeff)
            if not coeff:
                continue
            for nmono, ncoeff in self.normal_form(mono).items():
                acc[nmono] = acc.get(nmono, _ZERO) + coeff * ncoeff
        return ClassElement(self, acc)

    def zero(self) -> "ClassElement":
        return ClassElement(self, {})

    def one(self) -> "ClassElement":
        return self.scalar(1)

    def scalar(self, value: Coefficient) -> "ClassElement":
        return self.element({(0,) * len(self.names): value})

    def monomial(self, **exponents: int) -> "ClassElement":
        """model.monomial(x=1, y=2) 即 x·y²"""
        unknown = set(exponents) - set(self.names)
        if unknown:
            raise ValueError(f"Unknown generators {sorted(unknown)} for {self.names}")
        return self.element({tuple(exponents.get(n, 0) for n in self.names): 1})

    def gen(self, name: str) -> "ClassElement":
        return self.monomial(**{name: 1})

    def mul(self, a: "ClassElement", b: "ClassElement") -> "ClassElement":
        if a.model is not self or b.model is not self:
            raise ValueError("elements belong to a different model")
        acc: Dict[ExpVec, ParamPoly] = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                product = _add(m1, m2)
                if self.degree_of(product) > self.top_degree:
                    continue
                coeff = c1 * c2
                for nmono, ncoeff in self.normal_form(product).items():
                    acc[nmono] = acc.get(nmono, _ZERO) + coeff * ncoeff
        return ClassElement(self, acc)

    def top_evaluate(self, a: "ClassElement") -> ParamPoly:
        """⟨a, [M]⟩：只取顶次分量，低次分量忽略"""
        total = _ZERO
        for mono, coeff in a.terms.items():
            value = self.fundamental.get(mono)
            if value is not None:
                total = total + coeff * value
        return total

    def __repr__(self) -> str:
        label = self.name or "RingModel"
        gens = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"<{label} [{gens}] top={self.top_degree} basis={self.size}>"


class ClassElement:
    """模型中的元素：约化单项式 → ParamPoly 系数（可以不齐次）"""

    __slots__ = ("model", "_terms")

    def __init__(self, model: RingModel, terms: Mapping[ExpVec, Coefficient]) -> None:
        self.model = model
        clean: Dict[ExpVec, ParamPoly] = {}
        for mono, coeff in terms.items():
            coeff = ParamPoly.coerce(coeff)
            if coeff:
                clean[tuple(mono)] = coeff
        self._terms = clean

    @property
    def terms(self) -> Mapping[ExpVec, ParamPoly]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> List[int]:
        return sorted({self.model.degree_of(m) for m in self._terms})

    def component(self, degree: int) -> "ClassElement":
        return ClassElement(
            self.model, {m: c for m, c in self._terms.items() if self.model.degree_of(m) == degree}
        )

    @property
    def constant_term(self) -> ParamPoly:
        return self._terms.get((0,) * len(self.model.names), _ZERO)

    def params(self) -> frozenset:
        names: frozenset = frozenset()
        for coeff in self._terms.values():
            names |= coeff.params()
        return names

    def _same_model(self, other: "ClassElement") -> None:
        if other.model is not self.model:
            raise ValueError("elements belong to different models")

    def __add__(self, other: Union["ClassElement", Coefficient]) -> "ClassElement":
        if not isinstance(other, ClassElement):
            other = self.model.scalar(other)
        self._same_model(other)
        acc = dict(self._terms)
        for mono, coeff in other._terms.items():
            acc[mono] = acc.get(mono, _ZERO) + coeff
        return ClassElement(self.model, acc)

    __radd__ = __add__

    def __neg__(self) -> "ClassElement":
        return ClassElement(self.model, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Union["ClassElement", Coefficient]) -> "ClassElement":
        return self + (-other)

    def __rsub__(self, other: Coefficient) -> "ClassElement":
        return (-self) + other

    def __mul__(self, other: Union["ClassElement", Coefficient]) -> "ClassElement":
        if isinstance(other, ClassElement):
            return self.model.mul(self, other)
        if isinstance(other, (int, Fraction, ParamPoly)):
            return ClassElement(self.model, {m: c * other for m, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ClassElement":
        if exponent < 0:
            raise ValueError("negative powers are not defined")
        result = self.model.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ClassElement):
            return other.model is self.model and other._terms == self._terms
        if isinstance(other, (int, Fraction, ParamPoly)):
            return self == self.model.scalar(other)
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        model = self.model
        pieces: List[str] = []
        for mono in sorted(self._terms, key=model._order_key, reverse=True):
            coeff = self._terms[mono]
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(model.names, mono) if e]
            mono_text = "*".join(factors)
            coeff_text = str(coeff)
            if len(coeff.terms) > 1:
                coeff_text = f"({coeff_text})"
            if not mono_text:
                piece = coeff_text
            elif coeff_text == "1":
                piece = mono_text
            elif coeff_text == "-1":
                piece = f"-{mono_text}"
            else:
                piece = f"{coeff_text}*{mono_text}"
            pieces.append(piece)
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"ClassElement({self})"


def point_model() -> RingModel:
    """一点的上同调：只有单位元"""
    return RingModel([], {}, 0, {(): 1}, name="pt")


def _fresh_name(name: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if name not in taken:
        return name
    index = 2
    while f"{name}_{index}" in taken:
        index += 1
    return f"{name}_{index}"


def tensor(a: RingModel, b: RingModel, max_basis: int = DEFAULT_MAX_BASIS) -> RingModel:
    """Künneth：A ⊗ B，生成元不交并，基本类取两边的乘积"""
    size = a.size * b.size
    if size > max_basis:
        raise BasisGuardError(f"tensor basis of {size} monomials exceeds the limit {max_basis}")
    width_a, width_b = len(a.names), len(b.names)
    pad_a = (0,) * width_a
    pad_b = (0,) * width_b

    names: List[str] = list(a.names)
    for name in b.names:
        names.append(_fresh_name(name, names))
    generators = list(zip(names, a.degrees + b.degrees))

    relations: Dict[ExpVec, Mapping[ExpVec, ParamPoly]] = {}
    for lhs, rhs in a.rules:
        relations[lhs + pad_b] = {m + pad_b: c for m, c in rhs.items()}
    for lhs, rhs in b.rules:
        relations[pad_a + lhs] = {pad_a + m: c for m, c in rhs.items()}

    basis: Dict[int, List[ExpVec]] = {}
    for deg_a, monos_a in a.basis.items():
        for deg_b, monos_b in b.basis.items():
            bucket = basis.setdefault(deg_a + deg_b, [])
            bucket.extend(ma + mb for ma in monos_a for mb in monos_b)

    fundamental = {
        ma + mb: fa * fb for ma, fa in a.fundamental.items() for mb, fb in b.fundamental.items()
    }
    name = "*".join(n for n in (a.name, b.name) if n and n != "pt") or a.name
    LOG.debug("tensor %s with %s: %d basis monomials", a.name, b.name, size)
    # 两边的规则变量不相交，临界对自动合流，不再检查
    return RingModel(
        generators,
        relations,
        a.top_degree + b.top_degree,
        fundamental,
        name=name,
        basis=basis,
        check=False,
    )


def lift(element: ClassElement, target: RingModel, offset: int) -> ClassElement:
    """把因子中的元素搬到张量积模型里（offset 为该因子第一个生成元的位置）"""
    width = len(element.model.names)
    tail = len(target.names) - offset - width
    if tail < 0:
        raise ValueError("factor does not fit in the target model")
    return ClassElement(
        target,
        {(0,) * offset + mono + (0,) * tail: coeff for mono, coeff in element.terms.items()},
    )

"""迷你语言解析

三种文本格式共用一个加法式语法：

    sum    := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := NUMBER ['/' NUMBER] | ATOM ['^' NUMBER]

ATOM 是标识符，可带下标（``p[2]``）。参数多项式（``3*c^2 - 1``）、
Pontryagin 数组合（``7*p[2]-p[1]^2``）都按这个语法读入；
流形描述（``cp:m=1*xc:k=1,c=@c``）另有自己的格式。
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from lgenus.errors import ParseError

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<atom>[A-Za-z_][A-Za-z_0-9]*(?:\[\d+\])?)|(?P<op>[-+*/^()]))"
)

Term = Tuple[Fraction, Dict[str, int]]


def _tokenize(text: str) -> List[Tuple[str, str]]:
    tokens: List[Tuple[str, str]] = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN_RE.match(stripped, pos)
        if match is None or match.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        kind = match.lastgroup or ""
        tokens.append((kind, match.group(kind)))
        pos = match.end()
    return tokens


class _SumParser:
    def __init__(self, text: str) -> None:
        self._text = text
        self._tokens = _tokenize(text)
        self._pos = 0

    def _peek(self) -> Optional[Tuple[str, str]]:
        if self._pos < len(self._tokens):
            return self._tokens[self._pos]
        return None

    def _take(self) -> Tuple[str, str]:
        token = self._peek()
        if token is None:
            raise ParseError(f"unexpected end of input in {self._text!r}")
        self._pos += 1
        return token

    def _expect_number(self) -> int:
        kind, value = self._take()
        if kind != "num":
            raise ParseError(f"expected a number, got {value!r} in {self._text!r}")
        return int(value)

    def parse(self) -> List[Term]:
        if not self._tokens:
            raise ParseError("empty expression")
        terms: List[Term] = []
        sign = 1
        token = self._peek()
        if token is not None and token[0] == "op" and token[1] in "+-":
            self._take()
            sign = -1 if token[1] == "-" else 1
        while True:
            coeff, monomial = self._parse_term()
            terms.append((sign * coeff, monomial))
            token = self._peek()
            if token is None:
                return terms
            kind, value = self._take()
            if kind != "op" or value not in "+-":
                raise ParseError(f"expected '+' or '-', got {value!r} in {self._text!r}")
            sign = -1 if value == "-" else 1

    def _parse_term(self) -> Term:
        coeff = Fraction(1)
        monomial: Dict[str, int] = {}
        while True:
            kind, value = self._take()
            if kind == "num":
                number = Fraction(int(value))
                nxt = self._peek()
                if nxt == ("op", "/"):
                    self._take()
                    den = self._expect_number()
                    if den == 0:
                        raise ParseError(f"zero denominator in {self._text!r}")
                    number /= den
                coeff *= number
            elif kind == "atom":
                exponent = 1
                if self._peek() == ("op", "^"):
                    self._take()
                    exponent = self._expect_number()
                monomial[value] = monomial.get(value, 0) + exponent
            else:
                raise ParseError(f"unexpected {value!r} in {self._text!r}")
            if self._peek() == ("op", "*"):
                self._take()
                continue
            return coeff, monomial


def parse_sum(text: str) -> List[Term]:
    """把加法式解析成 (系数, {原子: 指数}) 列表，不合并同类项"""
    return _SumParser(text).parse()


def parse_rational(text: str) -> Fraction:
    """解析 "n"、"-n"、"n/d" 形式的有理数"""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"invalid rational {text!r}: {e}") from None
    if "." in text or "e" in text.lower():
        raise ParseError(f"invalid rational {text!r}: decimals are not exact")
    return value


# ---------------- manifold description ----------------


@dataclass(frozen=True)
class FactorSpec:
    """流形描述中的一个因子"""

    kind: str  # "cp" | "xc" | "pt"
    size: int = 0  # cp: m, xc: k
    c: Union[Fraction, str, None] = None  # xc 才有；str 为形式参数名

    def __post_init__(self) -> None:
        if self.kind not in ("cp", "xc", "pt"):
            raise ParseError(f"Invalid factor kind: {self.kind}. Must be 'cp', 'xc' or 'pt'")
        if self.kind != "pt" and self.size < 1:
            raise ParseError(f"Invalid size for {self.kind}: {self.size}")
        if self.kind == "xc" and self.c is None:
            raise ParseError("xc factor needs a value for c")

    def __str__(self) -> str:
        if self.kind == "pt":
            return "pt"
        if self.kind == "cp":
            return f"cp:m={self.size}"
        c_text = f"@{self.c}" if isinstance(self.c, str) else str(self.c)
        return f"xc:k={self.size},c={c_text}"


_PARAM_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


def _parse_factor(text: str) -> FactorSpec:
    text = text.strip()
    if text == "pt":
        return FactorSpec("pt")
    kind, sep, rest = text.partition(":")
    if not sep:
        raise ParseError(f"factor {text!r} must look like 'cp:m=1' or 'xc:k=2,c=1'")
    fields: Dict[str, str] = {}
    for item in rest.split(","):
        key, eq, value = item.partition("=")
        if not eq:
            raise ParseError(f"expected key=value in {text!r}")
        fields[key.strip()] = value.strip()
    kind = kind.strip()
    if kind == "cp":
        if set(fields) != {"m"}:
            raise ParseError(f"cp factor takes exactly 'm': {text!r}")
        return FactorSpec("cp", _parse_positive(fields["m"], text))
    if kind == "xc":
        if set(fields) != {"k", "c"}:
            raise ParseError(f"xc factor takes exactly 'k' and 'c': {text!r}")
        raw_c = fields["c"]
        c: Union[Fraction, str]
        if raw_c.startswith("@"):
            name = raw_c[1:]
            if not _PARAM_NAME_RE.match(name):
                raise ParseError(f"invalid parameter name {name!r}")
            c = name
        else:
            c = parse_rational(raw_c)
        return FactorSpec("xc", _parse_positive(fields["k"], text), c)
    raise ParseError(f"unknown manifold kind {kind!r} in {text!r}")


def _parse_positive(value: str, context: str) -> int:
    if not value.isdigit() or int(value) < 1:
        raise ParseError(f"expected a positive integer, got {value!r} in {context!r}")
    return int(value)


def parse_manifold_spec(text: str) -> List[FactorSpec]:
    """解析 "cp:m=1*xc:k=1,c=@c" 这类流形描述"""
    if not text.strip():
        raise ParseError("empty manifold description")
    return [_parse_factor(part) for part in text.split("*")]


def parse_key_values(text: str) -> List[Tuple[str, str]]:
    """解析 "2:1,3:-3" 或 "c=1" 这类逗号分隔的键值对"""
    pairs: List[Tuple[str, str]] = []
    if not text.strip():
        return pairs
    for item in text.split(","):
        for sep in (":", "="):
            key, found, value = item.partition(sep)
            if found:
                pairs.append((key.strip(), value.strip()))
                break
        else:
            raise ParseError(f"expected key:value in {item!r}")
    return pairs

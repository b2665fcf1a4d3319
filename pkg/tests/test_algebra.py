import math
import random
from fractions import Fraction

import pytest

from lgenus.algebra import (
    ParamPoly,
    RatMatrix,
    common_denominator,
    format_rational,
    linear_solve,
    nullspace,
    primitive_integer_vector,
)
from lgenus.errors import MissingParameterError, ParseError, SingularMatrixError


def test_format_rational():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-3)) == "-3"
    assert format_rational(0) == "0"


def test_poly_arithmetic_and_printing(c):
    assert str(c * -21) == "-21*c"
    assert str(3 * c**2 - 1) == "3*c^2 - 1"
    assert str(c / 2) == "1/2*c"
    assert str(c - c) == "0"
    assert (c + 1) * (c - 1) == c**2 - 1


def test_constant_poly_equals_rational():
    assert ParamPoly.constant(Fraction(2, 3)) == Fraction(2, 3)
    assert hash(ParamPoly.constant(5)) == hash(5)
    assert ParamPoly() == 0


def test_parse_round_trip(c):
    for poly in (c * -21, 3 * c**2 - 1, ParamPoly.var("c1") * ParamPoly.var("c2") * Fraction(-1, 2), ParamPoly()):
        assert ParamPoly.parse(str(poly)) == poly


def test_parse_rejects_indexed_names():
    with pytest.raises(ParseError):
        ParamPoly.parse("p[1]")


def test_specialize_and_substitute():
    a, b = ParamPoly.var("a"), ParamPoly.var("b")
    poly = a * b * 3 + a
    assert poly.specialize({"a": 2, "b": Fraction(1, 3)}) == 4
    assert poly.substitute({"a": 2}) == b * 6 + 2
    with pytest.raises(MissingParameterError):
        poly.specialize({"a": 1})


def test_degrees(c):
    poly = c**2 * ParamPoly.var("d") + c
    assert poly.total_degrees() == {3, 1}
    assert poly.degree_in("c") == 2
    assert poly.params() == {"c", "d"}


def test_linear_solve_exact():
    a = RatMatrix([[-3, -21], [9, 18]])
    assert linear_solve(a, [0, 1]) == [Fraction(7, 45), Fraction(-1, 45)]


def test_linear_solve_singular():
    with pytest.raises(SingularMatrixError):
        linear_solve(RatMatrix([[1, 2], [2, 4]]), [1, 0])


def test_linear_solve_against_sympy():
    sympy = pytest.importorskip("sympy")
    rows = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    rhs = [1, 0, Fraction(1, 3)]
    expected = sympy.Matrix(rows).LUsolve(sympy.Matrix([1, 0, sympy.Rational(1, 3)]))
    solution = linear_solve(RatMatrix(rows), rhs)
    assert [sympy.Rational(v.numerator, v.denominator) for v in solution] == list(expected)


def test_nullspace_and_primitive_vector():
    kernel = nullspace(RatMatrix([[-3, -21]]))
    assert len(kernel) == 1
    assert primitive_integer_vector(kernel[0]) == [-7, 1]
    assert RatMatrix([[-3, -21]]).matvec(kernel[0]) == [0]


def test_common_denominator():
    assert common_denominator([Fraction(7, 45), Fraction(-1, 45), Fraction(1, 3)]) == 45


def test_matrix_shape():
    m = RatMatrix([[1, 2, 3], [4, 5, 6]])
    assert m.shape == (2, 3)
    assert list(m.row(1)) == [4, 5, 6]
    with pytest.raises(ValueError):
        RatMatrix([[1, 2], [3]])


def _random_fraction(rng, bits=80):
    return Fraction(rng.randint(-(2**bits), 2**bits), rng.randint(1, 2**bits))


def test_arithmetic_against_cross_multiplication():
    rng = random.Random(11)
    for _ in range(200):
        a, b = _random_fraction(rng), _random_fraction(rng)
        n1, d1, n2, d2 = a.numerator, a.denominator, b.numerator, b.denominator
        total = (ParamPoly.constant(a) + b).constant_value()
        product = (ParamPoly.constant(a) * b).constant_value()
        assert total.numerator * (d1 * d2) == (n1 * d2 + n2 * d1) * total.denominator
        assert product.numerator * (d1 * d2) == (n1 * n2) * product.denominator
        for value in (total, product):
            assert value.denominator > 0
            assert math.gcd(value.numerator, value.denominator) == 1


def _random_poly(rng):
    c, d = ParamPoly.var("c"), ParamPoly.var("d")
    poly = ParamPoly()
    for _ in range(rng.randint(0, 4)):
        poly = poly + c ** rng.randint(0, 3) * d ** rng.randint(0, 2) * Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return poly


def test_specialize_preserves_products():
    rng = random.Random(5)
    for _ in range(100):
        a, b = _random_poly(rng), _random_poly(rng)
        point = {"c": _random_fraction(rng, 8), "d": _random_fraction(rng, 8)}
        assert (a * b).specialize(point) == a.specialize(point) * b.specialize(point)
        assert (a + b).specialize(point) == a.specialize(point) + b.specialize(point)


def _invertible(rng, n):
    # 单位下三角 × 对角非零的上三角，行列式非零
    lower = [[1 if i == j else (rng.randint(-3, 3) if j < i else 0) for j in range(n)] for i in range(n)]
    upper = [
        [rng.choice([-2, -1, 1, 2, 3]) if i == j else (rng.randint(-3, 3) if j > i else 0) for j in range(n)]
        for i in range(n)
    ]
    return [[sum(lower[i][k] * upper[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("n", [1, 3, 10, 25, 50])
def test_solve_then_multiply_reproduces_rhs(n):
    rng = random.Random(n)
    matrix = RatMatrix(_invertible(rng, n))
    rhs = [_random_fraction(rng, 16) for _ in range(n)]
    assert matrix.matvec(linear_solve(matrix, rhs)) == rhs

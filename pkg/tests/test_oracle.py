from fractions import Fraction

import pytest

from lgenus.charnum import evaluate_combination
from lgenus.lsolver import GeneratorAssignment, solve_l
from lgenus.manifolds import complex_projective_even
from lgenus.oracle import (
    EvenSeries,
    compare,
    cosh_series,
    multiplicative_sequence,
    oracle_l,
    q_series,
    sinh_over_x_series,
)
from lgenus.partitions import Partition


def test_q_series_coefficients():
    q = q_series(3)
    assert q.coeffs == [1, Fraction(1, 3), Fraction(-1, 45), Fraction(2, 945)]


def test_q_series_against_sympy():
    sympy = pytest.importorskip("sympy")
    x = sympy.symbols("x")
    expansion = sympy.series(x / sympy.tanh(x), x, 0, 14).removeO()
    q = q_series(6)
    for j in range(7):
        assert sympy.Rational(q[j].numerator, q[j].denominator) == expansion.coeff(x, 2 * j)


def test_series_division_is_inverse():
    order = 8
    assert q_series(order) * sinh_over_x_series(order) == cosh_series(order)


def test_series_validation():
    with pytest.raises(ValueError):
        EvenSeries(2, [1, 2])
    with pytest.raises(ValueError):
        q_series(0)
    with pytest.raises(ZeroDivisionError):
        cosh_series(2) / EvenSeries(2, [0, 1, 0])


@pytest.mark.parametrize(
    "i, expected",
    [
        (1, {Partition((1,)): Fraction(1, 3)}),
        (2, {Partition((2,)): Fraction(7, 45), Partition((1, 1)): Fraction(-1, 45)}),
        (
            3,
            {
                Partition((3,)): Fraction(62, 945),
                Partition((2, 1)): Fraction(-13, 945),
                Partition((1, 1, 1)): Fraction(2, 945),
            },
        ),
    ],
)
def test_multiplicative_sequence(i, expected):
    result = multiplicative_sequence(q_series(i), i)
    assert dict(result.coeffs) == expected
    assert result.source == "oracle"


def test_multiplicative_sequence_needs_enough_terms():
    with pytest.raises(ValueError):
        multiplicative_sequence(q_series(2), 3)
    with pytest.raises(ValueError):
        multiplicative_sequence(EvenSeries(1, [2, 1]), 1)


def test_l4_known_values():
    result = oracle_l(4)
    assert result[Partition((4,))] == Fraction(381, 14175)
    assert result[Partition((1, 1, 1, 1))] == Fraction(-3, 14175)


@pytest.mark.parametrize("n", range(1, 7))
def test_genus_of_even_projective_spaces(n):
    assert evaluate_combination(oracle_l(n).coeffs, complex_projective_even(n)) == 1


@pytest.mark.parametrize("i", range(1, 7))
def test_solver_matches_oracle(i):
    assert compare(i)


def test_compare_with_other_constants():
    assert compare(5, GeneratorAssignment.parse("2:-1,3:2,4:1/3,5:7"))


@pytest.mark.slow
def test_solver_matches_oracle_dimension_thirty_two():
    assert solve_l(8) == oracle_l(8)


def test_solver_never_imports_oracle():
    import ast
    import inspect

    import lgenus.lsolver

    tree = ast.parse(inspect.getsource(lgenus.lsolver))
    imported = {node.module for node in ast.walk(tree) if isinstance(node, ast.ImportFrom)}
    assert "lgenus.oracle" not in imported

import random
from fractions import Fraction

import pytest

from lgenus.algebra import ParamPoly, RatMatrix
from lgenus.charnum import CharVector, char_vector
from lgenus.errors import ParseError, WeightMismatchError, ZeroCombinationError
from lgenus.lsolver import (
    Classification,
    Combo,
    GeneratorAssignment,
    LGenusResult,
    assemble,
    basis_char_vector,
    basis_manifold,
    classify_combo,
    factor_constants,
    solve_l,
    solve_l_via_kernel,
    vanishing_combination,
    verify_independence,
)
from lgenus.manifolds import ManifoldModel
from lgenus.partitions import Partition, enumerate_partitions

L2 = {Partition((2,)): Fraction(7, 45), Partition((1, 1)): Fraction(-1, 45)}
L3 = {
    Partition((3,)): Fraction(62, 945),
    Partition((2, 1)): Fraction(-13, 945),
    Partition((1, 1, 1)): Fraction(2, 945),
}


def P(*parts):
    return Partition(parts)


def test_assignment_validation():
    assert GeneratorAssignment().c_for(5) == 1
    assignment = GeneratorAssignment.parse("2:1,3:-3")
    assert assignment.c_for(3) == -3
    assert assignment.c_for(4) == 1
    assert GeneratorAssignment.parse("*:2").c_for(7) == 2
    with pytest.raises(ValueError):
        GeneratorAssignment({2: 0})
    with pytest.raises(ValueError):
        GeneratorAssignment({1: 2})
    with pytest.raises(ValueError):
        GeneratorAssignment.uniform(0)
    with pytest.raises(ParseError):
        GeneratorAssignment.parse("x:1")
    with pytest.raises(ParseError):
        GeneratorAssignment.parse("2:0")


def test_assignment_dict_round_trip():
    assignment = GeneratorAssignment.parse("2:1/2,3:-3")
    assert GeneratorAssignment.from_dict(assignment.to_dict()) == assignment
    assert assignment.to_dict() == {"default": "1", "constants": {"2": "1/2", "3": "-3"}}


def test_basis_manifolds():
    square = basis_manifold(P(1, 1))
    assert isinstance(square, ManifoldModel)
    assert square.signature == 1
    bundle = basis_manifold(P(2))
    assert bundle.signature == 0
    mixed = basis_manifold(P(2, 1), symbolic=True)
    c = ParamPoly.var("c")
    assert dict(char_vector(mixed, "p").items()) == {P(3): -9 * c, P(2, 1): -72 * c, P(1, 1, 1): -189 * c}


def test_basis_manifold_falls_back_to_convolution():
    result = basis_manifold(P(1, 1, 1), max_basis=10)
    assert isinstance(result, CharVector)
    assert result.basis == "p"
    assert result[P(1, 1, 1)] == 162


def test_assemble_dimension_eight():
    matrix, rhs = assemble(2)
    assert matrix == RatMatrix([[-3, -21], [9, 18]])
    assert rhs == [0, 1]


def test_assemble_dimension_four():
    matrix, rhs = assemble(1)
    assert matrix == RatMatrix([[3]])
    assert rhs == [1]


def test_assemble_ones_row_is_cp2_power():
    matrix, _rhs = assemble(4)
    expected = basis_char_vector(Partition.ones(4)).to_basis("p")
    assert list(matrix.row(matrix.rows - 1)) == [value for _key, value in expected.items()]


@pytest.mark.parametrize(
    "i, expected",
    [(1, {P(1): Fraction(1, 3)}), (2, L2), (3, L3)],
)
def test_solve_l(i, expected):
    result = solve_l(i)
    assert dict(result.coeffs) == expected
    assert result.source == "solver"


def test_solve_with_workers():
    assert solve_l(4, workers=2) == solve_l(4)


def test_pretty():
    assert solve_l(1).pretty() == "L_1 = p[1]/3"
    assert solve_l(2).pretty() == "L_2 = (7*p[2] - p[1]^2)/45"
    assert solve_l(3).pretty() == "L_3 = (62*p[3] - 13*p[2]*p[1] + 2*p[1]^3)/945"
    assert LGenusResult(1, {P(1): 2}).pretty() == "L_1 = 2*p[1]"


def test_result_json():
    result = solve_l(3)
    data = result.to_dict()
    assert data["terms"][0] == {"partition": [3], "coefficient": "62/945"}
    assert LGenusResult.from_dict(data) == result
    with pytest.raises(ParseError):
        LGenusResult.from_dict({"i": 3})


def test_result_validation():
    with pytest.raises(ValueError):
        LGenusResult(2, {P(2): 1})


def test_independence():
    assignments = [GeneratorAssignment.uniform(c) for c in (1, 2, -3)]
    assert verify_independence(3, assignments)
    assert verify_independence(2, [GeneratorAssignment(), GeneratorAssignment()])
    assert verify_independence(4, [GeneratorAssignment.uniform(1), GeneratorAssignment.uniform(5)])
    assert verify_independence(3, [GeneratorAssignment.parse("2:7,3:-1/2"), GeneratorAssignment()])
    with pytest.raises(ValueError):
        verify_independence(2, [GeneratorAssignment()])


def test_combo_parse():
    combo = Combo.parse("7*p[2]-p[1]^2", 2)
    assert dict(combo.coeffs) == {P(2): 7, P(1, 1): -1}
    assert str(combo) == "7*p[2] - p[1]^2"
    assert Combo.parse("p[2]*p[1] + p[1]*p[2]").coeffs[P(2, 1)] == 2
    with pytest.raises(WeightMismatchError):
        Combo.parse("p[2] + p[1]", 2)
    with pytest.raises(ParseError):
        Combo.parse("q[2]", 2)
    with pytest.raises(ParseError):
        Combo.parse("c*p[2]", 2)


def test_classify_multiples():
    result = classify_combo(Combo.parse("7*p[2]-p[1]^2", 2))
    assert result == Classification(2, "multiple", ratio=Fraction(45))
    assert result.describe() == "multiple of signature, ratio 45"
    assert classify_combo(Combo.parse("62*p[3]-13*p[2]*p[1]+2*p[1]^3", 3)).ratio == 945
    assert classify_combo(Combo.parse("p[1]", 1)).ratio == 3


def test_classify_witness():
    result = classify_combo(Combo.parse("p[2]", 2))
    assert result.kind == "witness"
    assert result.partition == P(2)
    assert result.value == -3 * ParamPoly.var("c")
    assert result.describe() == "unbounded; witness α_I = [2], value = -3*c"
    assert result.to_dict() == {"i": 2, "kind": "witness", "partition": [2], "value": "-3*c"}
    assert Classification.from_dict(result.to_dict()) == result


def test_classify_zero_combo():
    with pytest.raises(ZeroCombinationError):
        classify_combo(Combo(2, {}))


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_genus_is_its_own_multiple(i):
    result = classify_combo(Combo.from_result(solve_l(i)))
    assert result.is_multiple
    assert result.ratio == 1


@pytest.mark.parametrize("i", [2, 3, 4])
def test_random_non_multiples_have_witnesses(i):
    rng = random.Random(i)
    genus = solve_l(i)
    for _ in range(20):
        coeffs = {key: Fraction(rng.randint(-5, 5)) for key in enumerate_partitions(i)}
        combo = Combo(i, coeffs)
        values = [coeffs[key] / genus[key] for key in coeffs]
        if combo.is_zero() or len(set(values)) == 1:
            continue
        result = classify_combo(combo)
        assert result.kind == "witness"
        bundles = result.partition.nontrivial_parts()
        assert result.value.total_degrees() == {bundles}


def test_symbolic_constants_per_bundle():
    assert factor_constants(P(2, 1), symbolic=True) == [(2, "c"), (1, None)]
    assert factor_constants(P(3, 2), symbolic=True) == [(3, "c1"), (2, "c2")]
    assert factor_constants(P(3, 2), GeneratorAssignment.parse("3:5")) == [(3, 5), (2, 1)]
    assert basis_char_vector(P(2, 2), symbolic=True).params() == {"c1", "c2"}


def test_kernel_route():
    combo, value = vanishing_combination(2)
    assert dict(combo.coeffs) == {P(2): 7, P(1, 1): -1}
    assert value == 45
    combo, value = vanishing_combination(3)
    assert dict(combo.coeffs) == {P(3): 62, P(2, 1): -13, P(1, 1, 1): 2}
    assert value == 945
    for i in range(1, 6):
        kernel = solve_l_via_kernel(i)
        assert kernel == solve_l(i)
        assert kernel.source == "kernel"

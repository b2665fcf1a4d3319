
import pytest

from lgenus.algebra import ParamPoly
from lgenus.manifolds import complex_projective_even, projective_bundle


@pytest.fixture
def c() -> ParamPoly:
    return ParamPoly.var("c")


@pytest.fixture
def cp2():
    return complex_projective_even(1)


@pytest.fixture
def x1():
    """X_c，k = 1，c 为形式参数"""
    return projective_bundle(1, "c")


@pytest.fixture
def x2():
    return projective_bundle(2, "c")



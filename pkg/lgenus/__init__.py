"""Pontryagin 数与 L 亏格的精确计算"""

from lgenus.algebra import ParamPoly, RatMatrix, Rational, linear_solve, nullspace
from lgenus.charnum import (
    CharVector,
    char_vector,
    convolved_char_vector,
    evaluate_combination,
    generator_certificate,
    pontryagin_number,
    product_char_vector,
    s_number,
)
from lgenus.cohomology import ClassElement, RingModel, tensor
from lgenus.errors import LGenusError
from lgenus.lsolver import (
    Classification,
    Combo,
    GeneratorAssignment,
    LGenusResult,
    assemble,
    basis_manifold,
    classify_combo,
    solve_l,
    solve_l_via_kernel,
    vanishing_combination,
    verify_independence,
)
from lgenus.manifolds import (
    ManifoldModel,
    chern_to_pontryagin,
    complex_projective_even,
    product,
    projective_bundle,
)
from lgenus.partitions import Partition, enumerate_partitions

__all__ = [
    "CharVector",
    "ClassElement",
    "Classification",
    "Combo",
    "GeneratorAssignment",
    "LGenusError",
    "LGenusResult",
    "ManifoldModel",
    "ParamPoly",
    "Partition",
    "RatMatrix",
    "Rational",
    "RingModel",
    "assemble",
    "basis_manifold",
    "char_vector",
    "chern_to_pontryagin",
    "classify_combo",
    "complex_projective_even",
    "convolved_char_vector",
    "enumerate_partitions",
    "evaluate_combination",
    "generator_certificate",
    "linear_solve",
    "nullspace",
    "pontryagin_number",
    "product",
    "product_char_vector",
    "projective_bundle",
    "s_number",
    "solve_l",
    "solve_l_via_kernel",
    "tensor",
    "vanishing_combination",
    "verify_independence",
]

"""一次性复现全部计算结论的检查套件（verify 命令）"""

import logging
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from lgenus.algebra import ParamPoly
from lgenus.charnum import char_vector, evaluate_combination, pontryagin_number, s_number
from lgenus.cohomology import DEFAULT_MAX_BASIS, RingModel
from lgenus.config import DEFAULT_MAX_I, DEFAULT_MAX_K
from lgenus.lsolver import (
    Combo,
    GeneratorAssignment,
    LGenusResult,
    basis_char_vector,
    basis_factors,
    classify_combo,
    solve_l,
    solve_l_via_kernel,
    vanishing_combination,
    verify_independence,
)
from lgenus.manifolds import (
    ManifoldModel,
    bundle_chern_class,
    chern_to_pontryagin,
    complex_projective_even,
    free_bundle_ring,
    middle_isotropy_holds,
    product,
    product_of,
    projective_bundle,
    root_power_sum,
)
from lgenus.oracle import oracle_l
from lgenus.partitions import Partition, enumerate_partitions

LOG = logging.getLogger("lgenus")

BundleFactory = Callable[[int, str], ManifoldModel]

MAX_LEM_N = 10
MAX_PATH_I = 5
MAX_MULT_K = 6
RANDOM_COMBOS = 20


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    seconds: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status}  {self.name}  ({self.seconds:.3f}s)"
        return f"{text}  {self.detail}" if self.detail and not self.passed else text

    def to_dict(self) -> dict:
        """转换为字典（用于序列化）"""
        return {"name": self.name, "passed": self.passed, "seconds": round(self.seconds, 3), "detail": self.detail}


@dataclass
class VerifyReport:
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def lines(self) -> List[str]:
        failed = sum(1 for check in self.checks if not check.passed)
        summary = f"{len(self.checks) - failed}/{len(self.checks)} checks passed"
        return [check.line() for check in self.checks] + [summary]

    def to_dict(self) -> dict:
        """转换为字典（用于序列化）"""
        return {"passed": self.passed, "checks": [check.to_dict() for check in self.checks]}


class _Failure(Exception):
    pass


def _expect(condition: bool, detail: str) -> None:
    if not condition:
        raise _Failure(detail)


def corrupted_projective_bundle(k: int, c: str = "c") -> ManifoldModel:
    """关系写成 y^{2k+1} = +c·x·y^{2k-1} 的错误模型，作为反例"""
    ring = RingModel(
        [("y", 2), ("x", 4)],
        {(0, 2): {}, (2 * k + 1, 0): {(2 * k - 1, 1): ParamPoly.var(c)}},
        4 * (k + 1),
        {(2 * k, 1): 1},
        name=f"corrupted X_{c}(k={k})",
    )
    return projective_bundle(k, c, ring=ring)


class Verifier:
    """按顺序运行各项检查；每项独立计时，异常记为 FAIL"""

    def __init__(
        self,
        max_i: int = DEFAULT_MAX_I,
        max_k: int = DEFAULT_MAX_K,
        assignment: Optional[GeneratorAssignment] = None,
        workers: int = 1,
        max_basis: int = DEFAULT_MAX_BASIS,
        bundle_factory: BundleFactory = projective_bundle,
        seed: int = 0,
    ) -> None:
        if max_i < 1 or max_k < 1:
            raise ValueError(f"max_i and max_k must be positive, got {max_i}, {max_k}")
        self.max_i = max_i
        self.max_k = max_k
        self.assignment = assignment or GeneratorAssignment()
        self.workers = workers
        self.max_basis = max_basis
        self.bundle_factory = bundle_factory
        self.seed = seed
        self._solved: Dict[int, LGenusResult] = {}

    def _solve(self, i: int) -> LGenusResult:
        if i not in self._solved:
            self._solved[i] = solve_l(i, self.assignment, self.workers)
        return self._solved[i]

    def run(self) -> VerifyReport:
        report = VerifyReport()
        for name, check in self.checks():
            started = time.perf_counter()
            try:
                check()
                passed, detail = True, ""
            except _Failure as e:
                passed, detail = False, str(e)
            except Exception as e:  # noqa: BLE001
                LOG.debug("check %s raised", name, exc_info=True)
                passed, detail = False, f"{type(e).__name__}: {e}"
            elapsed = time.perf_counter() - started
            LOG.info("%s %s in %.3fs", "PASS" if passed else "FAIL", name, elapsed)
            report.checks.append(CheckResult(name, passed, elapsed, detail))
        return report

    def checks(self) -> List[Tuple[str, Callable[[], None]]]:
        return [
            (f"pontryagin lemmas k<={self.max_k}", self.check_lemmas),
            (f"universal multiples of c k<={min(self.max_k, MAX_MULT_K)}", self.check_multiples_of_c),
            ("bundle examples", self.check_examples),
            (f"root power sums n<={MAX_LEM_N}", self.check_root_power_sums),
            (f"chern route k<={self.max_k}", self.check_chern_route),
            (f"middle isotropy k<={self.max_k}", self.check_isotropy),
            (f"solver = oracle i<={self.max_i}", self.check_solver_oracle),
            (f"kernel route i<={self.max_i}", self.check_kernel_route),
            (f"c-independence i<={min(self.max_i, MAX_PATH_I)}", self.check_independence),
            (f"convolution = tensor i<={min(self.max_i, MAX_PATH_I)}", self.check_paths),
            (f"row degrees in c i<={min(self.max_i, 4)}", self.check_row_degrees),
            (f"genus on CP^2n n<={self.max_i}", self.check_projective_genus),
            (f"classify i<={min(self.max_i, MAX_PATH_I)}", self.check_classify),
        ]

    # ----- bundles -----
    def check_lemmas(self) -> None:
        c = ParamPoly.var("c")
        for k in range(1, self.max_k + 1):
            bundle = self.bundle_factory(k, "c")
            expected = {
                Partition.ones(k + 1): -(4 * k + 3) * (2 * k + 1) ** k * c,
                Partition((k + 1,)): -math.comb(2 * k + 1, k + 1) * c,
                Partition.of([2] + [1] * (k - 1)): -((2 * k + 1) ** (k - 1)) * (4 * k * k + 3 * k - 4) * c,
            }
            for partition, value in expected.items():
                actual = pontryagin_number(bundle, partition)
                _expect(actual == value, f"k={k} p{partition} = {actual}, expected {value}")
            s_value = s_number(bundle, k + 1)
            s_expected = -(2 * k + 1) * (2 * k + 3) * c
            _expect(s_value == s_expected, f"k={k} s_{k + 1} = {s_value}, expected {s_expected}")

    def check_multiples_of_c(self) -> None:
        for k in range(1, min(self.max_k, MAX_MULT_K) + 1):
            bundle = self.bundle_factory(k, "c")
            for partition, value in char_vector(bundle, "p").items():
                _expect(value.constant_term == 0, f"k={k} p{partition} = {value} has a constant term")
                _expect(value.params() <= {"c"} and value.degree_in("c") <= 1, f"k={k} p{partition} = {value}")

    def check_examples(self) -> None:
        c = ParamPoly.var("c")
        cases = [
            (self.bundle_factory(1, "c"), {(1, 1): -21, (2,): -3}),
            (self.bundle_factory(2, "c"), {(1, 1, 1): -275, (2, 1): -90, (3,): -10}),
            (
                product(complex_projective_even(1), self.bundle_factory(1, "c"), self.max_basis),
                {(1, 1, 1): -189, (2, 1): -72, (3,): -9},
            ),
        ]
        for manifold, values in cases:
            for parts, factor in values.items():
                actual = pontryagin_number(manifold, Partition(parts))
                _expect(actual == factor * c, f"{manifold.name} p{list(parts)} = {actual}, expected {factor * c}")

    def check_root_power_sums(self) -> None:
        c = ParamPoly.var("c")

        def expected(ring: RingModel, n: int):
            return ring.monomial(y=2 * n + 2) * 2 - ring.monomial(x=1, y=2 * n) * (c * (2 * (n + 1) * (2 * n + 1)))

        free = free_bundle_ring(4 * (MAX_LEM_N + 1))
        for n in range(MAX_LEM_N + 1):
            _expect(root_power_sum(free, 2 * n + 2) == expected(free, n), f"free ring n={n}")
        for k in range(1, self.max_k + 1):
            ring = self.bundle_factory(k, "c").ring
            for n in range(MAX_LEM_N + 1):
                _expect(root_power_sum(ring, 2 * n + 2) == expected(ring, n), f"k={k} n={n}")

    def check_chern_route(self) -> None:
        for k in range(1, self.max_k + 1):
            bundle = self.bundle_factory(k, "c")
            chern = bundle_chern_class(bundle.ring, k)
            _expect(chern.component(4 * k + 2).is_zero(), f"k={k}: c_{2 * k + 1} does not vanish")
            _expect(chern_to_pontryagin(chern) == bundle.total_p, f"k={k}: Chern route disagrees")

    def check_isotropy(self) -> None:
        for k in range(1, self.max_k + 1):
            _expect(middle_isotropy_holds(k), f"k={k}: (x*y^{k - 1})^2 != 0")

    # ----- solver -----
    def check_solver_oracle(self) -> None:
        for i in range(1, self.max_i + 1):
            solved, expected = self._solve(i), oracle_l(i)
            _expect(solved == expected, f"solver {solved.pretty()} != oracle {expected.pretty()}")

    def check_kernel_route(self) -> None:
        known = {2: ({(2,): 7, (1, 1): -1}, 45), 3: ({(3,): 62, (2, 1): -13, (1, 1, 1): 2}, 945)}
        for i in range(1, self.max_i + 1):
            combo, value = vanishing_combination(i, self.assignment)
            if i in known:
                coeffs, expected_value = known[i]
                expected = Combo(i, {Partition(p): v for p, v in coeffs.items()})
                _expect(combo == expected and value == expected_value, f"i={i}: {combo} with value {value}")
            kernel = solve_l_via_kernel(i, self.assignment)
            _expect(kernel == self._solve(i), f"i={i}: kernel route {kernel.pretty()}")

    def check_independence(self) -> None:
        assignments = [GeneratorAssignment.uniform(c) for c in (1, 2, -3)]
        for i in range(2, min(self.max_i, MAX_PATH_I) + 1):
            _expect(verify_independence(i, assignments, self.workers), f"i={i} depends on c")

    def check_paths(self) -> None:
        for i in range(1, min(self.max_i, MAX_PATH_I) + 1):
            for partition in enumerate_partitions(i):
                # 这里必须真的建出张量模型；超过上限即为失败
                direct = product_of(basis_factors(partition, self.assignment), self.max_basis)
                convolved = basis_char_vector(partition, self.assignment)
                _expect(
                    char_vector(direct, "s") == convolved,
                    f"α{partition}: convolution and tensor model disagree",
                )

    def check_row_degrees(self) -> None:
        for i in range(1, min(self.max_i, 4) + 1):
            for partition in enumerate_partitions(i):
                bundles = partition.nontrivial_parts()
                row = basis_char_vector(partition, symbolic=True).to_basis("p")
                for key, value in row.items():
                    _expect(
                        value.is_zero() or value.total_degrees() == {bundles},
                        f"α{partition} p{key} = {value}, expected degree {bundles} in c",
                    )

    def check_projective_genus(self) -> None:
        # CP^{2n}（n ≥ 2）不在基里，是独立的检验
        for n in range(1, self.max_i + 1):
            value = evaluate_combination(self._solve(n).coeffs, complex_projective_even(n))
            _expect(value == 1, f"L_{n}(CP^{2 * n}) = {value}")

    def check_classify(self) -> None:
        rng = random.Random(self.seed)
        for i in range(1, min(self.max_i, MAX_PATH_I) + 1):
            genus = self._solve(i)
            for scale in (Fraction(1), Fraction(-3, 7), Fraction(genus.denominator)):
                combo = Combo(i, {key: value * scale for key, value in genus.coeffs.items()})
                result = classify_combo(combo)
                _expect(result.is_multiple and result.ratio == scale, f"i={i} scale {scale}: {result.describe()}")
            if i == 1:
                continue
            keys = list(genus.coeffs)
            for _ in range(RANDOM_COMBOS):
                coeffs = {key: Fraction(rng.randint(-9, 9)) for key in keys}
                combo = Combo(i, coeffs)
                if combo.is_zero() or _proportional(coeffs, genus.coeffs):
                    continue
                result = classify_combo(combo)
                _expect(not result.is_multiple and not result.value.is_zero(), f"i={i} {combo}: {result.describe()}")


def _proportional(a: Dict[Partition, Fraction], b: Dict[Partition, Fraction]) -> bool:
    ratio: Optional[Fraction] = None
    for key, value in b.items():
        if value == 0:
            if a[key] != 0:
                return False
            continue
        current = a[key] / value
        if ratio is None:
            ratio = current
        elif current != ratio:
            return False
    return True


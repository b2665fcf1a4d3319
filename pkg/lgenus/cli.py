"""命令行入口：lgenus / charnum / svector / certify / classify / verify"""

import argparse
import logging
import os
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from lgenus.charnum import (
    CharVector,
    char_vector,
    convolved_char_vector,
    evaluate_combination,
    generator_certificate,
    s_number,
)
from lgenus.config import DEFAULT_MAX_I, DEFAULT_MAX_K, CliConfig
from lgenus.cohomology import DEFAULT_MAX_BASIS
from lgenus.errors import (
    BasisGuardError,
    LGenusError,
    MissingParameterError,
    ParseError,
    WeightMismatchError,
    ZeroCombinationError,
)
from lgenus.lsolver import (
    Combo,
    GeneratorAssignment,
    LGenusResult,
    classify_combo,
    solve_l,
    solve_l_via_kernel,
)
from lgenus.manifolds import ManifoldModel, factor_model, from_spec
from lgenus.oracle import oracle_l
from lgenus.parsing import parse_key_values, parse_manifold_spec, parse_rational
from lgenus.partitions import Partition
from lgenus.persistence import ReportStore, dumps
from lgenus.verify import Verifier, corrupted_projective_bundle

LOG = logging.getLogger("lgenus")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

_LEVELS = {0: logging.WARNING, 1: logging.INFO, 2: logging.DEBUG}


def _setup_logging(verbosity: int) -> None:
    level = _LEVELS[max(0, min(2, verbosity))]
    log_path = os.environ.get("LGENUS_LOG_PATH")
    if log_path:
        log_dir = os.path.dirname(log_path)
        try:
            if log_dir:
                os.makedirs(log_dir, exist_ok=True)
        except OSError:
            log_path = None
    if log_path:
        logging.basicConfig(
            level=level,
            format="%(asctime)s %(levelname)s %(message)s",
            filename=log_path,
            filemode="a",
        )
    else:
        logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(message)s", stream=sys.stderr)
    LOG.setLevel(level)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="输出 JSON")
    common.add_argument("--c-assignment", default="", metavar="J:C,...", help='各维数的丛常数，如 "2:1,3:-3"')
    common.add_argument("--max-basis", type=_positive_int, default=DEFAULT_MAX_BASIS, help="张量模型的基大小上限")
    common.add_argument("--workers", type=_positive_int, default=1, help="组装矩阵的进程数")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v 为 INFO，-vv 为 DEBUG")

    parser = argparse.ArgumentParser(prog="lgenus", description="Pontryagin 数与 L 亏格的精确计算")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lgenus", parents=[common], help="求 L_i")
    p.add_argument("i", type=_positive_int)
    p.add_argument("--source", choices=("solver", "oracle", "both", "kernel"), default="solver")
    p.add_argument("--report", metavar="FILE", help="把结果写入 JSON 文件")

    p = sub.add_parser("charnum", parents=[common], help="单个 Pontryagin 数")
    p.add_argument("--manifold", required=True, metavar="SPEC")
    p.add_argument("--partition", required=True, metavar="J")
    p.add_argument("--set", action="append", default=[], metavar="NAME=VALUE")

    p = sub.add_parser("svector", parents=[common], help="全部示性数")
    p.add_argument("--manifold", required=True, metavar="SPEC")
    p.add_argument("--basis", choices=("s", "p"), default="s")
    p.add_argument("--set", action="append", default=[], metavar="NAME=VALUE")

    p = sub.add_parser("certify", parents=[common], help="s_n(M) 与生成元判定")
    p.add_argument("--manifold", required=True, metavar="SPEC")
    p.add_argument("--set", action="append", default=[], metavar="NAME=VALUE")

    p = sub.add_parser("classify", parents=[common], help="判断组合是否为符号差的倍数")
    p.add_argument("combo", metavar="COMBO")
    p.add_argument("--i", type=_positive_int, default=None)

    p = sub.add_parser("verify", parents=[common], help="运行全部检查")
    p.add_argument("--max-i", type=_positive_int, default=DEFAULT_MAX_I)
    p.add_argument("--max-k", type=_positive_int, default=DEFAULT_MAX_K)
    p.add_argument("--report", metavar="FILE", help="把报告写入 JSON 文件")
    p.add_argument("--corrupt-relation", action="store_true", help=argparse.SUPPRESS)
    return parser


def _config_from_args(args: argparse.Namespace) -> CliConfig:
    options = {
        key: value
        for key, value in vars(args).items()
        if key not in ("command", "json", "c_assignment", "max_basis", "workers", "verbose", "report")
    }
    return CliConfig(
        command=args.command,
        output="json" if args.json else "text",
        c_assignment=args.c_assignment,
        max_basis=args.max_basis,
        workers=args.workers,
        verbosity=args.verbose,
        options=options,
        report=getattr(args, "report", None),
    )


def _parameter_values(items: Sequence[str]) -> Dict[str, Fraction]:
    values: Dict[str, Fraction] = {}
    for item in items:
        for name, value in parse_key_values(item):
            values[name] = parse_rational(value)
    return values


def _manifold(config: CliConfig) -> Tuple[str, Union[ManifoldModel, CharVector]]:
    """张量模型超过 --max-basis 时退回逐因子卷积"""
    text = config.options["manifold"]
    factors = parse_manifold_spec(text)
    try:
        manifold = from_spec(factors, config.max_basis)
    except BasisGuardError as e:
        LOG.info("%s; using the convolution path for %s", e, text)
        return text, convolved_char_vector(factor_model(spec) for spec in factors)
    return manifold.name, manifold


def _emit(config: CliConfig, payload: dict, text_lines: List[str]) -> None:
    if config.as_json:
        print(dumps(payload))
    else:
        for line in text_lines:
            print(line)


# ---------------- commands ----------------


def cmd_lgenus(config: CliConfig) -> int:
    i = config.options["i"]
    source = config.options["source"]
    assignment = GeneratorAssignment.parse(config.c_assignment)
    results: List[LGenusResult] = []
    if source in ("solver", "both"):
        results.append(solve_l(i, assignment, config.workers))
    if source in ("oracle", "both"):
        results.append(oracle_l(i))
    if source == "kernel":
        results.append(solve_l_via_kernel(i, assignment))

    if source == "both":
        match = results[0] == results[1]
        payload: dict = {"results": [r.to_dict() for r in results], "match": match}
        lines = [f"{r.source}: {r.pretty()}" for r in results] + ["MATCH" if match else "MISMATCH"]
    else:
        match = True
        payload = results[0].to_dict()
        lines = [results[0].pretty()]
    _emit(config, payload, lines)
    if config.report:
        ReportStore.save(config.report, payload)
    return EXIT_OK if match else EXIT_FAILURE


def cmd_charnum(config: CliConfig) -> int:
    name, source = _manifold(config)
    partition = Partition.parse(config.options["partition"])
    value = evaluate_combination({partition: 1}, source)
    values = _parameter_values(config.options["set"])
    if values:
        value = value.substitute(values)
    payload = {"manifold": name, "partition": partition.to_list(), "value": str(value)}
    _emit(config, payload, [str(value)])
    return EXIT_OK


def cmd_svector(config: CliConfig) -> int:
    _name, source = _manifold(config)
    basis = config.options["basis"]
    vector = source.to_basis(basis) if isinstance(source, CharVector) else char_vector(source, basis)
    values = _parameter_values(config.options["set"])
    if values:
        vector = vector.substitute(values)
    lines = [f"{basis}{key}  {value}" for key, value in vector.items()]
    _emit(config, vector.to_dict(), lines)
    return EXIT_OK


def cmd_certify(config: CliConfig) -> int:
    name, source = _manifold(config)
    if source.dim4 == 0:
        raise WeightMismatchError("a point has no s-number")
    n = source.dim4
    values = _parameter_values(config.options["set"])
    value = s_number(source, n)
    generator = generator_certificate(source, values)
    specialized = value.specialize(values)
    payload = {
        "manifold": name,
        "n": n,
        "s": str(value),
        "value": str(specialized),
        "generator": generator,
    }
    lines = [
        f"s_{n}({name}) = {value}",
        f"generator: {'yes' if generator else 'no'} (s_{n} = {specialized})",
    ]
    _emit(config, payload, lines)
    return EXIT_OK if generator else EXIT_FAILURE


def cmd_classify(config: CliConfig) -> int:
    combo = Combo.parse(config.options["combo"], config.options["i"])
    result = classify_combo(combo)
    _emit(config, result.to_dict(), [result.describe()])
    return EXIT_OK


def cmd_verify(config: CliConfig) -> int:
    kwargs = {}
    if config.options.get("corrupt_relation"):
        kwargs["bundle_factory"] = corrupted_projective_bundle
    verifier = Verifier(
        max_i=config.options["max_i"],
        max_k=config.options["max_k"],
        assignment=GeneratorAssignment.parse(config.c_assignment),
        workers=config.workers,
        max_basis=config.max_basis,
        **kwargs,
    )
    report = verifier.run()
    _emit(config, report.to_dict(), report.lines())
    if config.report:
        ReportStore.save(config.report, report.to_dict())
    return EXIT_OK if report.passed else EXIT_FAILURE


COMMANDS = {
    "lgenus": cmd_lgenus,
    "charnum": cmd_charnum,
    "svector": cmd_svector,
    "certify": cmd_certify,
    "classify": cmd_classify,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        config = _config_from_args(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _setup_logging(config.verbosity)
    LOG.debug("config: %s", config.to_dict())

    try:
        return COMMANDS[config.command](config)
    except (ParseError, WeightMismatchError, ZeroCombinationError, MissingParameterError) as e:
        code, error = EXIT_USAGE, e
    except LGenusError as e:
        code, error = EXIT_FAILURE, e
    except ValueError as e:
        code, error = EXIT_USAGE, e
    LOG.debug("%s failed", config.command, exc_info=error)
    print(f"error: {error}", file=sys.stderr)
    return code

import json

import pytest

from lgenus.cli import build_parser, main
from lgenus.persistence import ReportStore, dumps


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_lgenus_text(capsys):
    code, out, _err = run(capsys, "lgenus", "1")
    assert code == 0
    assert out.strip() == "L_1 = p[1]/3"


def test_lgenus_both_sources_match(capsys):
    code, out, _err = run(capsys, "lgenus", "2", "--source", "both")
    assert code == 0
    assert out.splitlines() == [
        "solver: L_2 = (7*p[2] - p[1]^2)/45",
        "oracle: L_2 = (7*p[2] - p[1]^2)/45",
        "MATCH",
    ]


def test_lgenus_kernel_and_assignment(capsys):
    code, out, _err = run(capsys, "lgenus", "3", "--source", "kernel", "--c-assignment", "2:-1,3:5")
    assert code == 0
    assert out.strip() == "L_3 = (62*p[3] - 13*p[2]*p[1] + 2*p[1]^3)/945"


def test_lgenus_json_is_canonical(capsys, tmp_path):
    report = tmp_path / "out" / "l3.json"
    code, out, _err = run(capsys, "lgenus", "3", "--json", "--report", str(report))
    assert code == 0
    data = json.loads(out)
    assert data["i"] == 3
    assert data["source"] == "solver"
    assert data["terms"][0] == {"partition": [3], "coefficient": "62/945"}
    assert dumps(data) == out.rstrip("\n")
    assert ReportStore.load(report) == data


@pytest.mark.parametrize(
    "spec, partition, expected",
    [
        ("xc:k=2,c=@c", "1,1,1", "-275*c"),
        ("cp:m=1*xc:k=1,c=@c", "[3]", "-9*c"),
        ("cp:m=1", "1", "3"),
        ("xc:k=1,c=2", "2", "-6"),
    ],
)
def test_charnum(capsys, spec, partition, expected):
    code, out, _err = run(capsys, "charnum", "--manifold", spec, "--partition", partition)
    assert code == 0
    assert out.strip() == expected


def test_charnum_with_values(capsys):
    code, out, _err = run(capsys, "charnum", "--manifold", "xc:k=1,c=@c", "--partition", "1,1", "--set", "c=-1/3")
    assert code == 0
    assert out.strip() == "7"


def test_charnum_over_the_basis_limit(capsys):
    code, out, err = run(
        capsys, "charnum", "--manifold", "cp:m=1*cp:m=1*cp:m=1", "--partition", "1,1,1", "--max-basis", "10"
    )
    assert code == 0, err
    assert out.strip() == "162"

    code, out, _err = run(
        capsys, "charnum", "--manifold", "cp:m=1*xc:k=1,c=@c", "--partition", "3", "--max-basis", "5"
    )
    assert code == 0
    assert out.strip() == "-9*c"


def test_svector_and_certify_over_the_basis_limit(capsys):
    code, out, _err = run(capsys, "svector", "--manifold", "cp:m=1*xc:k=1,c=@c", "--basis", "p", "--max-basis", "5")
    assert code == 0
    assert out.splitlines() == ["p[3]  -9*c", "p[2,1]  -72*c", "p[1,1,1]  -189*c"]

    code, out, _err = run(capsys, "certify", "--manifold", "cp:m=1*cp:m=1", "--max-basis", "2")
    assert code == 1
    assert out.splitlines()[0] == "s_2(cp:m=1*cp:m=1) = 0"


def test_svector(capsys):
    code, out, _err = run(capsys, "svector", "--manifold", "xc:k=1,c=@c", "--basis", "p")
    assert code == 0
    assert out.splitlines() == ["p[2]  -3*c", "p[1,1]  -21*c"]


def test_svector_json(capsys):
    code, out, _err = run(capsys, "svector", "--manifold", "cp:m=1", "--json")
    assert code == 0
    assert json.loads(out) == {"dim4": 1, "basis": "s", "entries": [{"partition": [1], "value": "3"}]}


def test_certify(capsys):
    code, out, _err = run(capsys, "certify", "--manifold", "xc:k=1,c=@c", "--set", "c=1")
    assert code == 0
    assert out.splitlines()[1] == "generator: yes (s_2 = -15)"

    code, out, _err = run(capsys, "certify", "--manifold", "cp:m=1*cp:m=1")
    assert code == 1
    assert "generator: no" in out

    code, _out, err = run(capsys, "certify", "--manifold", "xc:k=1,c=@c")
    assert code == 2
    assert "no value for parameter 'c'" in err


def test_classify(capsys):
    code, out, _err = run(capsys, "classify", "7*p[2]-p[1]^2", "--i", "2")
    assert code == 0
    assert out.strip() == "multiple of signature, ratio 45"

    code, out, _err = run(capsys, "classify", "p[2]", "--i", "2", "--json")
    assert code == 0
    assert json.loads(out) == {"i": 2, "kind": "witness", "partition": [2], "value": "-3*c"}


def test_verify_small(capsys, tmp_path):
    report = tmp_path / "verify.json"
    code, out, _err = run(capsys, "verify", "--max-i", "2", "--max-k", "2", "--report", str(report))
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1] == f"{len(lines) - 1}/{len(lines) - 1} checks passed"
    assert ReportStore.load(report)["passed"] is True


def test_verify_catches_corrupted_relation(capsys):
    code, out, _err = run(capsys, "verify", "--max-i", "1", "--max-k", "1", "--corrupt-relation")
    assert code == 1
    assert "FAIL  pontryagin lemmas" in out


@pytest.mark.parametrize(
    "argv, code",
    [
        ([], 2),
        (["lgenus", "0"], 2),
        (["lgenus", "two"], 2),
        (["charnum", "--manifold", "zz:m=1", "--partition", "1"], 2),
        (["charnum", "--manifold", "cp:m=1", "--partition", "2"], 2),
        (["classify", "p[1]", "--i", "2"], 2),
        (["certify", "--manifold", "pt"], 2),
        (["classify", "0*p[2]", "--i", "2"], 2),
        (["classify", "q[2]", "--i", "2"], 2),
        (["lgenus", "2", "--c-assignment", "2:0"], 2),
    ],
)
def test_error_exit_codes(capsys, argv, code):
    assert main(argv) == code
    captured = capsys.readouterr()
    assert captured.out == ""


def test_common_flags_on_every_subcommand():
    parser = build_parser()
    args = parser.parse_args(["classify", "p[1]", "--workers", "3", "-vv"])
    assert args.workers == 3
    assert args.verbose == 2

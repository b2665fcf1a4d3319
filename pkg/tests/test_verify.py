import pytest

from lgenus.verify import CheckResult, Verifier, VerifyReport, corrupted_projective_bundle


def test_check_result_line():
    assert CheckResult("solver = oracle", True, 0.1234).line() == "PASS  solver = oracle  (0.123s)"
    failed = CheckResult("lemmas", False, 0.0, "k=1 off by sign")
    assert failed.line() == "FAIL  lemmas  (0.000s)  k=1 off by sign"
    assert failed.to_dict() == {"name": "lemmas", "passed": False, "seconds": 0.0, "detail": "k=1 off by sign"}


def test_report_summary():
    report = VerifyReport([CheckResult("a", True, 0.0), CheckResult("b", False, 0.0, "x")])
    assert not report.passed
    assert report.lines()[-1] == "1/2 checks passed"
    assert report.to_dict()["passed"] is False
    assert VerifyReport().passed


def test_small_run_passes():
    report = Verifier(max_i=3, max_k=3).run()
    failed = [check.line() for check in report.checks if not check.passed]
    assert failed == []
    assert len(report.checks) == len(Verifier(max_i=3, max_k=3).checks())


def test_sign_error_in_relation_is_caught():
    report = Verifier(max_i=1, max_k=2, bundle_factory=corrupted_projective_bundle).run()
    assert not report.passed
    lemmas = report.checks[0]
    assert lemmas.name.startswith("pontryagin lemmas")
    assert not lemmas.passed
    assert "k=1" in lemmas.detail


def test_path_check_needs_tensor_models():
    report = Verifier(max_i=3, max_k=1, max_basis=1).run()
    paths = next(check for check in report.checks if check.name.startswith("convolution = tensor"))
    assert not paths.passed
    assert paths.detail.startswith("BasisGuardError")


def test_exceptions_become_failures():
    class Exploding(Verifier):
        def checks(self):
            def boom():
                raise RuntimeError("boom")

            return [("exploding", boom)]

    report = Exploding(max_i=1, max_k=1).run()
    assert report.checks[0].detail == "RuntimeError: boom"
    assert not report.passed


def test_bounds_validation():
    with pytest.raises(ValueError):
        Verifier(max_i=0)
    with pytest.raises(ValueError):
        Verifier(max_k=0)


@pytest.mark.slow
def test_default_run_passes():
    report = Verifier().run()
    assert report.passed, "\n".join(report.lines())

import pytest

from pinbrauer.core.errors import InvalidInputError, VerificationError
from pinbrauer.core.suites import SUITES, SuiteReport, run_suite


def test_walks_suite_passes():
    report = run_suite("walks", 2, 5)
    assert report.passed
    assert [c["case"] for c in report.cases][:2] == ["squares_k0", "iterated_k0"]
    data = report.to_dict()
    assert data["suite"] == "walks"
    assert (data["n"], data["N"], data["seed"]) == (2, 5, 0)
    assert data["passed"] is True
    assert data["cases"][2]["detail"] == {"sum": 2, "dim_cpk": 2}


@pytest.mark.parametrize("name", ["dimensions", "hadamard", "tensor_rules", "dual_pair"])
def test_cheap_suites_pass_at_rank_one(name):
    report = run_suite(name, 1, 3)
    assert report.cases
    assert report.passed, report.failures()


def test_unknown_suite():
    with pytest.raises(InvalidInputError):
        run_suite("nope", 2, 5)


def test_invalid_dimension_pair():
    with pytest.raises(InvalidInputError):
        run_suite("walks", 2, 7)


def test_failures_are_raised():
    report = SuiteReport("walks", 1, 3, 0)
    report.cases.append({"case": "broken", "passed": False, "detail": {"x": 1}})
    report.cases.append({"case": "fine", "passed": True, "detail": {}})
    assert not report.passed
    assert [c["case"] for c in report.failures()] == ["broken"]
    with pytest.raises(VerificationError) as info:
        report.raise_on_failure()
    assert info.value.to_record() == {"suite": "walks", "case": "broken", "detail": {"x": 1}}


def test_every_suite_is_registered():
    assert set(SUITES) == {
        "dimensions",
        "equivariance",
        "hadamard",
        "psi",
        "relations",
        "basis_change",
        "generic_algebra",
        "dual_pair",
        "tensor_rules",
        "walks",
    }


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(SUITES))
@pytest.mark.parametrize("n,N", [(1, 3), (1, 2)])
def test_every_suite_passes_at_rank_one(name, n, N):
    report = run_suite(name, n, N, seed=3)
    assert report.passed, report.failures()


def test_tensor_rules_cover_difference_characters():
    report = run_suite("tensor_rules", 2, 4)
    assert report.passed, report.failures()
    assert any("DIFF_CHAR" in c["case"] for c in report.cases)


@pytest.mark.slow
def test_dual_pair_suite_reaches_three_factors():
    report = run_suite("dual_pair", 3, 7)
    assert report.passed, report.failures()
    assert "t0_k3_s3" in [c["case"] for c in report.cases]


@pytest.mark.slow
def test_generic_algebra_samples_fifty_triples():
    report = run_suite("generic_algebra", 1, 3, seed=5)
    assert report.passed, report.failures()
    assert sum(c["case"].startswith("associative_") for c in report.cases) == 50

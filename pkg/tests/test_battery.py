import pytest

from superfourier.battery import BATTERIES, default_battery, quick_battery, run_battery, run_theory
from superfourier.config import DEFAULT_CONFIG
from superfourier.errors import BadParameter


@pytest.fixture(scope="module")
def quick_report():
    return run_battery("quick", {"random_functions": 200}, parallel=2)


@pytest.fixture(scope="module")
def default_report():
    return run_battery("default")


def test_quick_battery_passes(quick_report):
    failed = [(r.name, r.failures, r.error) for r in quick_report.failed]
    assert quick_report.passed, failed
    assert len(quick_report.results) == len(quick_battery())


def test_default_battery_passes(default_report):
    failed = [(r.name, r.failures, r.error) for r in default_report.failed]
    assert default_report.passed, failed
    assert len(default_report.results) == len(default_battery())


def test_default_battery_uncertainty(default_report):
    assert all(r.transform["uncertainty_violations"] == 0 for r in default_report.results)
    by_name = {r.name: r for r in default_report.results}
    assert by_name["dct(n=8)"].transform["uncertainty_lhs_violations"] > 0
    assert by_name["dct(n=8)"].transform["uncertainty_bound"] == 2


def test_closed_form_residuals_are_small(default_report):
    checked = [r for r in default_report.results if "closed_form" in r.table]
    assert checked
    for r in checked:
        assert r.table["closed_form"] < 1e-9 * max(1, r.count), r.name


def test_results_keep_battery_order(quick_report):
    assert [r.index for r in quick_report.results] == list(range(len(quick_battery())))
    assert quick_report.results[0].name == "max-collapse(n=2,d=2)"


def test_algebra_runs_only_for_symmetric_theories(quick_report):
    for r in quick_report.results:
        if r.symmetry == "j-symmetric":
            assert r.algebra is None
        else:
            assert r.algebra is not None and r.algebra["passed"]


def test_report_is_deterministic(quick_report):
    again = run_battery("quick", {"random_functions": 200}, parallel=1)
    assert again.as_dict() == quick_report.as_dict()


def test_summary_rows(quick_report):
    row = quick_report.results[0].summary()
    assert set(row) == {"theory", "N", "symmetry", "max_residual", "algebra", "passed", "failures"}
    assert row["max_residual"] < 1e-9


def test_run_theory_checks_family_extras():
    result = run_theory(0, "symmetric", {"n": 3, "d": 3}, dict(DEFAULT_CONFIG))
    assert result.passed
    assert result.extras["symmetric_constant"] == 5
    result = run_theory(0, "gauss", {"p": 13, "k": 3}, dict(DEFAULT_CONFIG, random_functions=50))
    assert result.extras["expected_lhs"] == 4


def test_run_theory_records_errors():
    result = run_theory(3, "max-collapse", {"n": 6, "d": 1}, dict(DEFAULT_CONFIG))
    assert not result.passed
    assert result.error.startswith("BadParameter")


def test_default_battery_contents():
    entries = default_battery()
    families = {family for family, _ in entries}
    assert families == {"max-collapse", "dft", "dct", "gauss", "kloosterman", "heilbronn",
                        "ramanujan", "symmetric", "jsym-triangular"}
    assert ("gauss", {"p": 19, "k": 9}) in entries
    assert ("ramanujan", {"n": 36}) in entries
    assert all(params["n"] ** params["d"] <= 10**5 for family, params in entries if family == "symmetric")


def test_unknown_battery():
    assert set(BATTERIES) == {"default", "quick"}
    with pytest.raises(BadParameter):
        run_battery("huge")

import math

import pytest

from qt3.bench import (
    BenchReport,
    BenchSpec,
    Cell,
    global_error,
    observed_order,
    parse_csv,
    render_report,
    run_benchmark,
)
from qt3.driver import IntegratorConfig, integrate
from qt3.problems import get_problem
from qt3.steppers import get_method


@pytest.fixture(scope="module")
def default_report():
    return run_benchmark(BenchSpec())


def _error(problem, method, h):
    p = get_problem(problem)
    traj = integrate(get_method(method), p.field, p.y0, IntegratorConfig(h, p.T, *p.default_window))
    return global_error(traj, p.exact)


def test_global_error_examples():
    assert _error("gompertz", "QT3", 0.1) == pytest.approx(9.7263e-09, rel=5e-5)
    assert _error("sine", "RK4", 0.01) == pytest.approx(2.2457e-12, rel=5e-4)


def test_global_error_rejects_failed_trajectory():
    p = get_problem("blowup_demo")
    traj = integrate(get_method("QT3"), p.field, 0.0, IntegratorConfig(0.1, 2.0, -1.0, 2.0))
    with pytest.raises(ValueError):
        global_error(traj, lambda t: 0.0)


def test_observed_order_examples():
    assert observed_order(0.8, 0.1) == pytest.approx(3.0, rel=1e-15)
    assert observed_order(6.3817e-04, 8.1554e-05) == pytest.approx(2.968, abs=1e-3)
    assert observed_order(1e-15, 1e-16) is None
    assert observed_order(1e-12, 1e-13) is None
    assert observed_order(1e-11, 1e-12) == pytest.approx(math.log2(10), rel=1e-12)
    assert observed_order(1.0, 0.04, ratio=5.0) == pytest.approx(2.0, rel=1e-14)


def test_restricted_flame_run():
    report = run_benchmark(BenchSpec(problems=("flame",), steps=(0.1, 0.05)))
    table = report.table("flame")
    assert table.cell(0.1, "K3").raw == pytest.approx(3.0134e-07, rel=5e-5)
    assert table.cell(0.05, "K3").raw == pytest.approx(3.6318e-08, rel=5e-5)
    assert not report.has_failures


def test_blowup_cell_records_status():
    report = run_benchmark(BenchSpec(problems=("blowup_demo",), methods=("QT3",), steps=(0.1,),
                                     windows={"blowup_demo": (-1.0, 2.0)}))
    cell = report.table("blowup_demo").cell(0.1, "QT3")
    assert cell.status == "StepSizeUndefined(0)" and cell.raw is None
    assert report.has_failures
    assert "StepSizeUndefined(0)" in render_report(report, "md")


def test_apriori_cell_contract_violation():
    report = run_benchmark(BenchSpec(problems=("blowup_demo",), methods=("QT3",), steps=(0.1,),
                                     guard="apriori", windows={"blowup_demo": (-1.0, 2.0)}))
    assert report.table("blowup_demo").cell(0.1, "QT3").status == "ContractViolation"
    assert "apriori_h0" in report.config
    assert "a priori h0" in render_report(report, "md")


def test_md_first_logistic_row(default_report):
    md = render_report(default_report, "md")
    assert "| 0.1 | 9.0574e-02 | 4.9747e-02 | 1.3532e-02 | 0 |" in md
    assert "### logistic" in md
    assert "tol0 = 1e-14; guard = runtime" in md


def test_csv_layout(default_report):
    csv = render_report(default_report, "csv")
    lines = csv.splitlines()
    assert lines[0] == "# tol0=1e-14 guard=runtime"
    assert lines.count("h,K3,BS3,RK4,QT3") == 6
    assert "0.1,9.0574e-02,4.9747e-02,1.3532e-02,0" in lines


def test_csv_roundtrip(default_report):
    parsed = parse_csv(render_report(default_report, "csv", digits=17))
    for table in default_report.tables:
        for (h, m), cell in table.cells.items():
            assert parsed[table.problem][h][m] == cell.clamped


def test_csv_roundtrip_default_digits(default_report):
    parsed = parse_csv(render_report(default_report, "csv"))
    for table in default_report.tables:
        for (h, m), cell in table.cells.items():
            assert parsed[table.problem][h][m] == float(f"{cell.clamped:.4e}")


def test_render_errors(default_report):
    with pytest.raises(ValueError):
        render_report(default_report, "xlsx")
    with pytest.raises(ValueError):
        render_report(BenchReport([], {}, {}, 0.0), "md")
    with pytest.raises(ValueError):
        run_benchmark(BenchSpec(methods=()))


def test_clamping():
    assert Cell(5e-15, "Success", 1e-14).clamped == 0.0
    assert Cell(2e-14, "Success", 1e-14).clamped == 2e-14
    assert Cell(None, "LeftWindow(3)", 1e-14).clamped is None


def test_order_consistency(default_report):
    nominal = {"K3": 3, "BS3": 3, "RK4": 4, "QT3": 3}
    for problem, per_method in default_report.orders.items():
        for method, pairs in per_method.items():
            orders = [o for _, _, o in pairs]
            if any(o is None for o in orders):
                continue
            mean = sum(orders) / len(orders)
            assert abs(mean - nominal[method]) <= 0.35, (problem, method, orders)


def test_order_pairs_are_disjoint(default_report):
    pairs = default_report.orders["gompertz"]["K3"]
    assert [(a, b) for a, b, _ in pairs] == [(0.1, 0.05), (0.02, 0.01)]
    # the logistic QT3 column is at the noise floor
    assert all(o is None for _, _, o in default_report.orders["logistic"]["QT3"])


def test_default_report_is_fast(default_report):
    assert default_report.seconds < 10
    assert len(default_report.tables) == 6
    assert math.isfinite(default_report.seconds)

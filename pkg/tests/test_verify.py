import io

import pytest

from dcscatter import verify


def test_row_modes():
    assert verify.Row("x", 2.0, 2.0 * (1 + 1e-7), 1e-6).passed
    assert not verify.Row("x", 2.0, 2.1, 1e-6).passed
    assert verify.Row("x", 0.0, 0.0, 0.0, "exact").passed
    assert not verify.Row("x", 0.0, 1e-300, 0.0, "exact").passed
    assert verify.Row("x", 1.0, 1.04, 0.05, "abs").passed
    line = verify.Row("name", 1.0, 1.0, 1e-6).line()
    assert line.startswith("PASS") and "name" in line


def test_invariants_all_pass():
    rows = verify.evaluate("invariants", {})
    bad = [r.line() for r in rows if not r.passed]
    assert not bad, bad


@pytest.mark.parametrize("name", ["point_mirror_1_3pi", "corrugated_threshold",
                                  "plate_1_180pi2"])
def test_perturbation_breaks_row(name):
    assert verify.evaluate("coefficients", {}, names=[name])[0].passed
    bumped = verify.evaluate("coefficients", {name: 1.01}, names=[name])[0]
    assert not bumped.passed
    assert bumped.mode != "exact"


def test_run_suite_reports_every_row():
    buf = io.StringIO()
    verify.run_suite("invariants", stream=buf)
    lines = [ln for ln in buf.getvalue().splitlines() if ln.startswith(("PASS", "FAIL"))]
    assert len(lines) == len(verify.INVARIANTS)


def test_unknown_row():
    with pytest.raises(KeyError):
        verify.evaluate("coefficients", {"nope": 2.0})

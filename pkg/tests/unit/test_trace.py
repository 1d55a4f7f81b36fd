"""Unit tests for trace CSV files and the monitor re-check."""

import logging
from pathlib import Path

import pytest

from src.errors import ParseError
from src.integrator import check_trace, read_trace_csv, write_trace_csv
from src.integrator.trace import format_trace_csv, parse_trace_csv
from src.models.simulation import SimulationTrace, TraceRow

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture
def trace() -> SimulationTrace:
    """Short trace with one stage-only overshoot at step 2."""
    return SimulationTrace(
        rows=(
            TraceRow(step=0, time=0.0, max_norm=0.5, energy=2.0),
            TraceRow(step=1, time=0.1, max_norm=0.4, energy=1.5, energy_delta=-0.5, stage_max_norm=0.45),
            TraceRow(step=2, time=0.2, max_norm=0.3, energy=1.25, energy_delta=-0.25, stage_max_norm=1.01),
        ),
        metadata={"scheme": "rk2-ssp", "tau": "0.1"},
    )


# ============================================================================
# Parsing
# ============================================================================


def test_read_passing_fixture():
    trace = read_trace_csv(FIXTURES / "passing_trace.csv")

    assert trace.metadata == {"scheme": "rk2-ssp", "epsilon": "0.1", "n": "16", "tau": "0.01"}
    assert [r.step for r in trace.rows] == [0, 1, 2, 3]
    assert trace.rows[0].stage_max_norm is None
    assert trace.rows[1].stage_max_norm == pytest.approx(0.895)
    assert trace.final_time == pytest.approx(0.03)


def test_stage_column_is_optional():
    trace = read_trace_csv(FIXTURES / "mbp_violation_trace.csv")

    assert len(trace.rows) == 2
    assert all(r.stage_max_norm is None for r in trace.rows)


def test_empty_trace_is_rejected():
    with pytest.raises(ParseError):
        read_trace_csv(FIXTURES / "empty_trace.csv")


def test_header_only_trace_is_rejected():
    with pytest.raises(ParseError, match="no rows"):
        parse_trace_csv("step,time,max_norm,energy,energy_delta\n")


def test_bad_row_reports_line_number():
    with pytest.raises(ParseError) as exc_info:
        read_trace_csv(FIXTURES / "bad_row_trace.csv")
    assert exc_info.value.line == 3


def test_unexpected_header():
    with pytest.raises(ParseError) as exc_info:
        parse_trace_csv("# scheme: x\nstep,t,norm\n0,0,1\n")
    assert exc_info.value.line == 2


def test_wrong_field_count():
    with pytest.raises(ParseError) as exc_info:
        parse_trace_csv("step,time,max_norm,energy,energy_delta\n0,0,0.5,1.0\n")
    assert exc_info.value.line == 2


def test_times_must_increase():
    text = "step,time,max_norm,energy,energy_delta\n0,0,0.5,1,0\n1,0,0.5,1,0\n"
    with pytest.raises(ParseError, match="inconsistent"):
        parse_trace_csv(text)


def test_missing_file():
    with pytest.raises(ParseError):
        read_trace_csv(FIXTURES / "no_such_trace.csv")


def test_write_then_read(tmp_path, trace):
    path = tmp_path / "trace.csv"
    write_trace_csv(trace, path)

    assert read_trace_csv(path) == trace
    assert path.read_text().startswith("# scheme: rk2-ssp\n# tau: 0.1\nstep,time,")


def test_missing_stage_norm_is_an_empty_field(trace):
    lines = format_trace_csv(trace).splitlines()

    assert lines[3] == "0,0,0.5,2,0,"


# ============================================================================
# Monitor re-check
# ============================================================================


def test_passing_trace():
    verdict = check_trace(read_trace_csv(FIXTURES / "passing_trace.csv"))

    assert verdict.passed
    assert verdict.rows == 4
    assert verdict.max_norm == pytest.approx(0.9)
    assert verdict.max_norm_step == 0
    assert verdict.max_stage_norm == pytest.approx(0.895)
    assert verdict.first_mbp_violation is None and verdict.first_energy_violation is None


def test_energy_violation():
    verdict = check_trace(read_trace_csv(FIXTURES / "energy_violation_trace.csv"))

    assert verdict.mbp_pass
    assert not verdict.energy_pass
    assert verdict.first_energy_violation == 2
    assert verdict.max_energy_delta == pytest.approx(0.1)
    assert verdict.max_energy_delta_step == 2


def test_energy_is_judged_on_the_energy_column(caplog):
    """A stored energy_delta that hides an energy rise does not pass the check."""
    text = (
        "step,time,max_norm,energy,energy_delta\n"
        "0,0,0.5,10.0,0\n"
        "1,0.1,0.5,12.0,-0.5\n"
        "2,0.2,0.5,11.0,-1.0\n"
    )
    with caplog.at_level(logging.WARNING):
        verdict = check_trace(parse_trace_csv(text))

    assert not verdict.energy_pass
    assert verdict.first_energy_violation == 1
    assert verdict.max_energy_delta == 2.0
    assert verdict.max_energy_delta_step == 1
    assert "energy_delta disagrees" in caplog.text
    assert "first at step 1" in caplog.text


def test_consistent_energy_deltas_are_not_reported(caplog):
    with caplog.at_level(logging.WARNING):
        check_trace(read_trace_csv(FIXTURES / "energy_violation_trace.csv"))

    assert "energy_delta disagrees" not in caplog.text


def test_mbp_violation():
    verdict = check_trace(read_trace_csv(FIXTURES / "mbp_violation_trace.csv"))

    assert not verdict.mbp_pass
    assert verdict.energy_pass
    assert verdict.first_mbp_violation == 1
    assert verdict.max_stage_norm is None


def test_stage_overshoot_fails_mbp(trace):
    verdict = check_trace(trace)

    assert not verdict.passed
    assert verdict.first_mbp_violation == 2
    assert verdict.max_norm == pytest.approx(0.5)
    assert verdict.max_stage_norm == pytest.approx(1.01)


def test_check_rejects_empty_trace():
    with pytest.raises(ParseError):
        check_trace(SimulationTrace(rows=()))

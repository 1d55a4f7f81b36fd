"""Trace CSV files and the monitor re-check run on persisted traces.

Layout:

    # scheme: rk3-ssp
    # epsilon: 0.1
    step,time,max_norm,energy,energy_delta,stage_max_norm
    0,0,0.99812...,1734.2...,0,
    1,0.0054...,...

Metadata lines come first, then the header, then one row per step with row 0
for the initial state. The trailing ``stage_max_norm`` column is optional.
"""

import csv
import io
import logging
from pathlib import Path

from pydantic import ValidationError

from src.config import config
from src.errors import ParseError
from src.models.simulation import SimulationTrace, TraceRow, TraceVerdict

logger = logging.getLogger(__name__)

COLUMNS = ("step", "time", "max_norm", "energy", "energy_delta")
STAGE_COLUMN = "stage_max_norm"


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.17g}"


def format_trace_csv(trace: SimulationTrace) -> str:
    buffer = io.StringIO()
    for key, value in trace.metadata.items():
        buffer.write(f"# {key}: {value}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow((*COLUMNS, STAGE_COLUMN))
    for row in trace.rows:
        writer.writerow(
            (
                row.step,
                _fmt(row.time),
                _fmt(row.max_norm),
                _fmt(row.energy),
                _fmt(row.energy_delta),
                _fmt(row.stage_max_norm),
            )
        )
    return buffer.getvalue()


def write_trace_csv(trace: SimulationTrace, path: Path | str) -> None:
    Path(path).write_text(format_trace_csv(trace), encoding="utf-8")
    logger.info(f"Wrote {len(trace.rows)} trace rows to {path}")


def parse_trace_csv(text: str) -> SimulationTrace:
    """Parse trace CSV text.

    Raises:
        ParseError: On a missing header, malformed rows or no rows at all
    """
    metadata: dict[str, str] = {}
    header: list[str] | None = None
    rows: list[TraceRow] = []

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if sep and header is None:
                metadata[key.strip()] = value.strip()
            continue

        fields = next(csv.reader([line]))
        if header is None:
            header = [f.strip() for f in fields]
            if tuple(header[: len(COLUMNS)]) != COLUMNS or header[len(COLUMNS) :] not in ([], [STAGE_COLUMN]):
                raise ParseError(f"unexpected trace header {','.join(header)}", line=lineno)
            continue

        if len(fields) != len(header):
            raise ParseError(f"expected {len(header)} fields, got {len(fields)}", line=lineno)
        try:
            stage = fields[5].strip() if len(fields) > 5 else ""
            rows.append(
                TraceRow(
                    step=int(fields[0]),
                    time=float(fields[1]),
                    max_norm=float(fields[2]),
                    energy=float(fields[3]),
                    energy_delta=float(fields[4]),
                    stage_max_norm=float(stage) if stage else None,
                )
            )
        except (ValueError, ValidationError) as e:
            raise ParseError(f"malformed trace row: {e}", line=lineno) from e

    if header is None:
        raise ParseError("trace has no header")
    if not rows:
        raise ParseError("trace has no rows")

    try:
        return SimulationTrace(rows=tuple(rows), metadata=metadata)
    except ValidationError as e:
        raise ParseError(f"inconsistent trace: {e}") from e


def read_trace_csv(path: Path | str) -> SimulationTrace:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read trace {path}: {e}") from e
    return parse_trace_csv(text)


def _energy_increments(trace: SimulationTrace) -> list[float]:
    """0 for row 0, then energy_k - energy_{k-1}; warns on stored deltas that disagree."""
    deltas = [0.0] + [row.energy - prev.energy for prev, row in zip(trace.rows, trace.rows[1:])]
    mismatched = [
        row.step
        for row, delta in zip(trace.rows, deltas)
        if not abs(row.energy_delta - delta) <= config.energy_slack
    ]
    if mismatched:
        logger.warning(
            f"energy_delta disagrees with the energy column at {len(mismatched)} rows "
            f"(first at step {mismatched[0]}); using recomputed increments"
        )
    return deltas


def check_trace(trace: SimulationTrace) -> TraceVerdict:
    """Re-validate the monitors of a trace.

    MBP passes when every max_norm (and stage_max_norm when recorded) stays
    below 1 + ``config.mbp_slack``; energy passes when every increment
    energy_k - energy_{k-1} is at most ``config.energy_slack``. The increments
    are recomputed from the energy column; a stored energy_delta that disagrees
    is logged and ignored.

    Raises:
        ParseError: If the trace has no rows
    """
    if not trace.rows:
        raise ParseError("trace has no rows")

    mbp_limit = 1.0 + config.mbp_slack
    energy_limit = config.energy_slack

    worst_norm = max(trace.rows, key=lambda r: r.max_norm)
    deltas = _energy_increments(trace)
    worst = max(range(len(deltas)), key=deltas.__getitem__)
    stage_norms = [r.stage_max_norm for r in trace.rows if r.stage_max_norm is not None]

    first_mbp = next(
        (
            r.step
            for r in trace.rows
            if not r.max_norm <= mbp_limit
            or (r.stage_max_norm is not None and not r.stage_max_norm <= mbp_limit)
        ),
        None,
    )
    first_energy = next(
        (r.step for r, delta in zip(trace.rows, deltas) if not delta <= energy_limit), None
    )

    verdict = TraceVerdict(
        rows=len(trace.rows),
        max_norm=worst_norm.max_norm,
        max_norm_step=worst_norm.step,
        max_energy_delta=deltas[worst],
        max_energy_delta_step=trace.rows[worst].step,
        max_stage_norm=max(stage_norms) if stage_norms else None,
        mbp_pass=first_mbp is None,
        energy_pass=first_energy is None,
        first_mbp_violation=first_mbp,
        first_energy_violation=first_energy,
    )
    logger.info(f"Checked trace of {verdict.rows} rows: mbp={verdict.mbp_pass}, energy={verdict.energy_pass}")
    return verdict

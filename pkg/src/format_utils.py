"""Rich rendering of run summaries, trace verdicts and convergence tables."""

from rich.console import Console
from rich.table import Table
from rich.text import Text

from src.models.simulation import SimulationTrace, StudyRow, TraceVerdict

console = Console()


def _verdict(ok: bool) -> Text:
    return Text("pass", style="bold green") if ok else Text("FAIL", style="bold red")


def show_run_summary(trace: SimulationTrace, verdict: TraceVerdict, out: Console | None = None) -> None:
    """One line: scheme, steps, final time, final energy, monitor verdicts."""
    last = trace.rows[-1]
    summary = Text.assemble(
        (f"{trace.metadata.get('scheme', '?')}", "bold"),
        f": {last.step} steps to t={last.time:.6g}, E={last.energy:.10g}, ",
        f"max|u|={verdict.max_norm:.16g}  mbp ",
        _verdict(verdict.mbp_pass),
        "  energy ",
        _verdict(verdict.energy_pass),
    )
    (out or console).print(summary)


def show_trace_verdict(verdict: TraceVerdict, out: Console | None = None) -> None:
    table = Table(title="Trace monitors")
    table.add_column("monitor")
    table.add_column("worst value", justify="right")
    table.add_column("step", justify="right")
    table.add_column("first violation", justify="right")
    table.add_column("verdict")

    table.add_row(
        "max norm",
        f"{verdict.max_norm:.17g}",
        str(verdict.max_norm_step),
        "-" if verdict.first_mbp_violation is None else str(verdict.first_mbp_violation),
        _verdict(verdict.mbp_pass),
    )
    table.add_row(
        "energy delta",
        f"{verdict.max_energy_delta:.17g}",
        str(verdict.max_energy_delta_step),
        "-" if verdict.first_energy_violation is None else str(verdict.first_energy_violation),
        _verdict(verdict.energy_pass),
    )
    if verdict.max_stage_norm is not None:
        table.caption = f"largest stage max norm {verdict.max_stage_norm:.17g}"
    (out or console).print(table)


def show_study(rows: list[StudyRow], title: str = "Convergence", out: Console | None = None) -> None:
    table = Table(title=title)
    table.add_column("tau", justify="right")
    table.add_column("L-inf error", justify="right")
    table.add_column("observed order", justify="right")
    for row in rows:
        order = "-" if row.observed_order is None else f"{row.observed_order:.3f}"
        table.add_row(f"{row.tau:.6g}", f"{row.error:.6e}", order)
    (out or console).print(table)

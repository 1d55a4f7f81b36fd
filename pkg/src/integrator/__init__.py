"""Time stepping, monitored simulation, traces and convergence studies."""

from src.integrator.simulate import final_state, simulate
from src.integrator.stepping import euler_step, rk_step, stepping_form
from src.integrator.study import convergence_study, run_convergence_study
from src.integrator.trace import check_trace, read_trace_csv, write_trace_csv

__all__ = [
    "check_trace",
    "convergence_study",
    "euler_step",
    "final_state",
    "read_trace_csv",
    "rk_step",
    "run_convergence_study",
    "simulate",
    "stepping_form",
    "write_trace_csv",
]

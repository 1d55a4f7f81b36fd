"""
Command-line entry point: certify schemes, run Allen-Cahn simulations, check traces.

    mbp-rk certify rk2-ssp --epsilon 0.1 --grid-n 128
    mbp-rk simulate rk3-ssp --t-final 2 --tau auto-energy --ic random:42 --out trace.csv
    mbp-rk check trace.csv
    mbp-rk study rk2-ssp --epsilon 0.25 --grid-n 64 --t-final 0.5 --taus 0.0078125,0.00390625

Exit codes: certify 0 (MBP and energy dissipative), 2 (MBP only), 3 (not MBP);
check 0/1; 64 usage or configuration error, 65 malformed input, 70 monitor breach.
"""

import argparse
import logging
import sys
from typing import NoReturn, Sequence

from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from src.certificate.certify import certify_scheme, step_bounds
from src.config import config
from src.errors import (
    BoundViolation,
    ConfigError,
    InconsistentTableau,
    NegativeD,
    NonApplicable,
    ParseError,
    SubdiagonalZero,
)
from src.format_utils import show_run_summary, show_study, show_trace_verdict
from src.integrator.simulate import simulate
from src.integrator.study import convergence_study
from src.integrator.trace import check_trace, read_trace_csv, write_trace_csv
from src.models.certificate import CertificateReport
from src.models.simulation import SimulationConfig
from src.spatial.grid import Grid
from src.tableau.loader import resolve_scheme

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_MBP_ONLY = 2
EXIT_NOT_MBP = 3
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_BOUND = 70

# Errors that make the input scheme unusable rather than the command line wrong.
DATA_ERRORS = (ParseError, InconsistentTableau, SubdiagonalZero, NegativeD, NonApplicable)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with EXIT_USAGE instead of 2."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _tau(value: str) -> float | str:
    if value in ("auto-mbp", "auto-energy"):
        return value
    try:
        tau = float(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected auto-mbp, auto-energy or a number, got '{value}'") from e
    if not tau > 0.0:
        raise argparse.ArgumentTypeError(f"tau must be positive, got {value}")
    return tau


def _tau_list(value: str) -> list[float]:
    try:
        taus = [float(x) for x in value.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{value}'") from e
    if len(taus) < 2 or any(not t > 0.0 for t in taus):
        raise argparse.ArgumentTypeError("need at least two positive step sizes")
    return taus


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mbp-rk", description="Certify and run explicit Runge-Kutta schemes for Allen-Cahn")
    commands = parser.add_subparsers(dest="command", required=True)

    certify = commands.add_parser("certify", help="MBP and energy certificate of a scheme")
    certify.add_argument("scheme", help="Preset name or tableau JSON file")
    certify.add_argument("--epsilon", type=float, help="Interface width for the step bounds")
    certify.add_argument("--grid-n", type=int, help="Grid size N for the step bounds (h = 2 pi / N)")
    certify.add_argument("--bound-mode", choices=["safe", "paper"], default="safe")

    run = commands.add_parser("simulate", help="Integrate Allen-Cahn and write a trace CSV")
    run.add_argument("scheme", help="Preset name or tableau JSON file")
    run.add_argument("--epsilon", type=float, default=0.1)
    run.add_argument("--grid-n", type=int, default=128)
    run.add_argument("--t-final", type=float, default=2.0)
    run.add_argument("--tau", type=_tau, default="auto-mbp", help="auto-mbp, auto-energy or a step size")
    run.add_argument("--ic", default="random:42", help="random:<seed>, cosine:<k> or file:<path>")
    run.add_argument("--bound-mode", choices=["safe", "paper"], default="safe")
    run.add_argument("--out", required=True, help="Trace CSV to write")

    check = commands.add_parser("check", help="Re-check the monitors of a trace CSV")
    check.add_argument("trace", help="Trace CSV written by simulate")

    study = commands.add_parser("study", help="Empirical convergence order")
    study.add_argument("scheme", help="Preset name or tableau JSON file")
    study.add_argument("--epsilon", type=float, default=0.25)
    study.add_argument("--grid-n", type=int, default=64)
    study.add_argument("--t-final", type=float, default=0.5)
    study.add_argument("--taus", type=_tau_list, required=True, help="Comma-separated step sizes")
    study.add_argument("--ic", default="cosine:1")

    return parser


def setup_logging(level: str) -> None:
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


# ============================================================================
# Commands
# ============================================================================


def cmd_certify(args: argparse.Namespace) -> int:
    if (args.epsilon is None) != (args.grid_n is None):
        raise ConfigError("--epsilon and --grid-n go together")
    scheme = resolve_scheme(args.scheme)
    cert = certify_scheme(scheme)

    bounds = None
    if args.epsilon is not None:
        if not args.epsilon > 0.0:
            raise ConfigError(f"--epsilon must be positive, got {args.epsilon}")
        bounds = step_bounds(cert, args.epsilon, Grid(args.grid_n).h, bound_mode=args.bound_mode)

    report = CertificateReport(scheme=scheme.name, certificate=cert, bounds=bounds)
    print(report.model_dump_json(indent=2))

    if not cert.mbp:
        return EXIT_NOT_MBP
    return EXIT_OK if cert.energy_dissipative else EXIT_MBP_ONLY


def cmd_simulate(args: argparse.Namespace) -> int:
    try:
        cfg = SimulationConfig(
            scheme=args.scheme,
            epsilon=args.epsilon,
            n=args.grid_n,
            t_final=args.t_final,
            tau=args.tau,
            ic=args.ic,
            bound_mode=args.bound_mode,
        )
    except ValidationError as e:
        raise ConfigError(f"invalid simulation settings: {e}") from e

    trace = simulate(cfg)
    write_trace_csv(trace, args.out)
    verdict = check_trace(trace)
    show_run_summary(trace, verdict)
    return EXIT_OK if verdict.passed else EXIT_FAIL


def cmd_check(args: argparse.Namespace) -> int:
    verdict = check_trace(read_trace_csv(args.trace))
    show_trace_verdict(verdict)
    return EXIT_OK if verdict.passed else EXIT_FAIL


def cmd_study(args: argparse.Namespace) -> int:
    try:
        rows = convergence_study(args.scheme, args.epsilon, args.grid_n, args.t_final, args.taus, ic=args.ic)
    except ValidationError as e:
        raise ConfigError(f"invalid study settings: {e}") from e
    show_study(rows, title=f"Convergence of {args.scheme}")
    return EXIT_OK


COMMANDS = {
    "certify": cmd_certify,
    "simulate": cmd_simulate,
    "check": cmd_check,
    "study": cmd_study,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, run one command and return its exit code."""
    args = build_parser().parse_args(argv)
    setup_logging(config.log_level)

    try:
        return COMMANDS[args.command](args)
    except ConfigError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except DATA_ERRORS as e:
        logger.error(str(e))
        return EXIT_DATA
    except BoundViolation as e:
        logger.error(str(e))
        return EXIT_BOUND


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()

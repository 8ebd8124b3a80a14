"""
Command-line interface - parameter sweeps written as CSV

    fadecap bounds --model "gauss_markov?r=0.9" --beta 2 --rho logspace:-3:-1:5
    fadecap asymptote --model gauss_markov --config sweep.conf
    fadecap validate --suite lambda --model "gauss_markov?r=0.9"

Exit codes: 0 success, 1 usage or configuration error, 2 validation failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

import pyarrow as pa

from fadecap import __version__
from fadecap.bounds import bound_set, cll_monte_carlo, upper_bound_U, upper_bound_window
from fadecap.bounds.upper import asymptote_f
from fadecap.channel import (
    coupled_onoff,
    iid_onoff,
    mi_cubic_coefficient,
    mi_monte_carlo,
    mi_quadratic,
)
from fadecap.config import SUITES, SweepConfig, configure_numerics
from fadecap.continuous import ct_capacity, ct_I, parse_ct_model_spec
from fadecap.exceptions import ConfigurationError, FadeCapError
from fadecap.models import FadingModel, list_models, parse_model_spec
from fadecap.onoff import ln_coefficient, onoff_scheme, optimal_duty
from fadecap.prediction import MODES, SOLVERS, asymptotic_error, finite_window_error
from fadecap.spectral import compute_lambda_inf
from fadecap.utils.output import UNITS, write_table
from fadecap.utils.sweep import ParallelSweeper, records_to_arrow
from fadecap.validation import run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2

# Explicit block inputs have (1 + phases)^n atoms
MAX_MI_BLOCK = 8

VALIDATE_SAMPLES = 1_000_000


class UsageError(Exception):
    """Raised instead of argparse's own exit so usage errors map to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Flat key = value config file")
    common.add_argument("--model", help="Model spec, e.g. gauss_markov?r=0.9 "
                        f"(kinds: {', '.join(list_models())})")
    common.add_argument("--beta", type=float, help="Peak-to-average ratio (>= 1)")
    common.add_argument("--rho", help="Comma list or logspace:START:STOP:NUM")
    common.add_argument("--n", help="Comma list of block/window lengths")
    common.add_argument("--seed", type=int, help="Seed for Monte Carlo estimates")
    common.add_argument("--samples", type=int, help="Monte Carlo sample count")
    common.add_argument("--quad-points", type=int, help="Frequency grid size")
    common.add_argument("--workers", type=int, help="Worker threads (env FADECAP_WORKERS)")
    common.add_argument("--units", choices=UNITS, help="Information unit of the CSV output")
    common.add_argument("-o", "--output", help="Output CSV file (stdout if omitted)")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for info logging, -vv for debug")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="fadecap",
        description="Capacity bounds for noncoherent correlated Rayleigh fading at low SNR",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", help="Command to run")
    common = _common_options()

    bounds = subparsers.add_parser("bounds", parents=[common],
                                   help="U, U_pred, C_u, L_n and f(beta) rho^2 per rho")
    bounds.add_argument("--cll-mc", action="store_true",
                        help="Add a Monte Carlo estimate of the QPSK lower bound")
    bounds.add_argument("--window", type=int,
                        help="Add the bound using only the last N outputs")

    subparsers.add_parser("asymptote", parents=[common],
                          help="U/rho^2 and L_n/rho^2 against f(beta)")

    mi = subparsers.add_parser("mi", parents=[common],
                               help="Quadratic mutual information of block on-off inputs")
    mi.add_argument("--duty", type=float, help="On probability (default: optimal duty)")
    mi.add_argument("--family", choices=("iid", "coupled"), default="iid",
                    help="Independent coordinates or one on/off draw per block")
    mi.add_argument("--phases", type=int, default=2, help="PSK phases of an on symbol")
    mi.add_argument("--oracle", action="store_true", help="Add a Monte Carlo estimate")

    predict = subparsers.add_parser("predict", parents=[common],
                                    help="Finite-window prediction error against its limit")
    predict.add_argument("--mode", choices=MODES, default="causal")
    predict.add_argument("--solver", choices=SOLVERS, default="cholesky")

    subparsers.add_parser("lowerbound", parents=[common],
                          help="Optimized block on-off scheme per n")

    ct = subparsers.add_parser("ct", parents=[common],
                               help="Continuous-time capacity; --rho lists peak powers")
    ct.add_argument("--ct-model", default="ornstein_uhlenbeck?gamma=1",
                    help="ornstein_uhlenbeck?gamma=G or bandlimited?W=W")
    ct.add_argument("--p-ave", type=float, help="Average power (default P_peak/beta)")

    validate = subparsers.add_parser("validate", parents=[common],
                                     help="Run acceptance checks; exit 2 on failure")
    validate.add_argument("--suite", choices=SUITES, default="all")
    return parser


def _setup_logging(verbosity: int):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
    )


def load_config(args: argparse.Namespace) -> SweepConfig:
    """SweepConfig from --config merged with command-line overrides, numerics applied."""
    config = SweepConfig.load(
        args.config,
        model=args.model,
        beta=args.beta,
        rho=args.rho,
        n=args.n,
        seed=args.seed,
        samples=args.samples,
        output=args.output,
        units=args.units,
    )
    numerics = dict(config.numerics)
    if args.quad_points is not None:
        numerics["quad_points"] = args.quad_points
    if args.workers is not None:
        numerics["workers"] = args.workers
    configure_numerics(**numerics)
    return config


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

BOUND_COLUMNS = ("U", "U_pred", "C_u", "L_n", "f_beta_rho2", "C_ll_mc", "C_ll_mc_stderr",
                 "U_window")


def cmd_bounds(config: SweepConfig, model: FadingModel, cll_mc: bool = False,
               window: Optional[int] = None) -> pa.Table:
    """One row per rho: rho, U, U_pred, C_u, L_n, f_beta_rho2, theta (+ optional columns)."""
    n = max(config.n_values)

    def row(rho: float) -> Dict[str, Any]:
        bounds = bound_set(model, rho, config.beta, n=n)
        if not bounds.U_pred_converged:
            logger.warning("U_pred at rho=%g reported from a non-converged inner solve", rho)
        record = bounds.to_dict()
        if cll_mc:
            estimate = cll_monte_carlo(model, rho, config.beta, config.samples, config.seed)
            record["C_ll_mc"] = estimate.value
            record["C_ll_mc_stderr"] = estimate.stderr
        if window:
            record["U_window"] = upper_bound_window(model, rho, config.beta, window)
        return record

    return ParallelSweeper().sweep(row, config.rho_grid)


def cmd_asymptote(config: SweepConfig, model: FadingModel) -> pa.Table:
    """One row per rho: rho, U_over_rho2, L_n_over_rho2, f_beta."""
    n = max(config.n_values)
    f = asymptote_f(model, config.beta)
    ln = ln_coefficient(model, n, config.beta)

    def row(rho: float) -> Dict[str, Any]:
        return {
            "rho": rho,
            "U_over_rho2": upper_bound_U(model, rho, config.beta) / (rho * rho),
            "L_n_over_rho2": ln,
            "f_beta": f,
        }

    return ParallelSweeper().sweep(row, config.rho_grid)


def cmd_mi(config: SweepConfig, model: FadingModel, duty: Optional[float] = None,
           family: str = "iid", phases: int = 2, oracle: bool = False) -> pa.Table:
    """One row per (rho, n): quadratic and cubic terms, optionally a Monte Carlo estimate."""
    if max(config.n_values) > MAX_MI_BLOCK:
        raise ConfigurationError(
            f"mi enumerates every input block; n must be at most {MAX_MI_BLOCK}", setting="n"
        )
    a = duty if duty is not None else optimal_duty(compute_lambda_inf(model), config.beta)
    builder = iid_onoff if family == "iid" else coupled_onoff
    records: List[Dict[str, Any]] = []
    for n in config.n_values:
        mu = builder(n, a, phases=phases)
        c2 = mi_quadratic(mu, model).coefficient
        c3 = mi_cubic_coefficient(mu, model)
        for rho in config.rho_grid:
            record = {"rho": rho, "n": n, "a": a, "mi_quadratic": c2 * rho * rho,
                      "mi_cubic": c2 * rho * rho + c3 * rho ** 3}
            if oracle:
                estimate = mi_monte_carlo(mu, model, rho, config.samples, config.seed)
                record["mi_mc"] = estimate.value
                record["mi_mc_stderr"] = estimate.stderr
            records.append(record)
    return records_to_arrow(records)


def cmd_predict(config: SweepConfig, model: FadingModel, mode: str = "causal",
                solver: str = "cholesky") -> pa.Table:
    """One row per (rho, n): rho, n, sigma2_window, sigma2_asymptotic."""
    points = [(rho, n) for rho in config.rho_grid for n in config.n_values]

    def row(point) -> Dict[str, Any]:
        rho, n = point
        return {
            "rho": rho,
            "n": n,
            "sigma2_window": finite_window_error(model, rho, n, mode, solver).sigma2,
            "sigma2_asymptotic": asymptotic_error(model, rho, mode),
        }

    return ParallelSweeper().sweep(row, points)


def cmd_lowerbound(config: SweepConfig, model: FadingModel) -> pa.Table:
    """One row per n: n, lambda_n, a, coeff."""
    return records_to_arrow(
        [onoff_scheme(model, n, config.beta).to_dict() for n in config.n_values]
    )


def cmd_ct(config: SweepConfig, ct_model: str, p_ave: Optional[float] = None) -> pa.Table:
    """One row per peak power: P_peak, P_ave, I, C."""
    model = parse_ct_model_spec(ct_model)

    def row(p_peak: float) -> Dict[str, Any]:
        average = p_ave if p_ave is not None else p_peak / config.beta
        return {
            "P_peak": p_peak,
            "P_ave": average,
            "I": ct_I(model, p_peak),
            "C": ct_capacity(model, average, p_peak),
        }

    return ParallelSweeper().sweep(row, config.rho_grid)


def cmd_validate(suite: str, model: Optional[FadingModel], seed: int, samples: int):
    report = run_suite(suite, model=model, seed=seed, samples=samples)
    logger.info("%s", report.format_text())
    return report


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _run(args: argparse.Namespace) -> int:
    config = load_config(args)

    if args.command == "validate":
        model = parse_model_spec(args.model) if args.model else None
        samples = args.samples if args.samples is not None else VALIDATE_SAMPLES
        report = cmd_validate(args.suite, model, config.seed, samples)
        write_table(report.to_table(), config.output_path)
        if not report.passed:
            for check in report.failures:
                logger.error("FAIL %s: measured %.12g, expected %.12g",
                             check.name, check.measured, check.expected)
            return EXIT_VALIDATION
        return EXIT_OK

    if args.command == "ct":
        table = cmd_ct(config, args.ct_model, args.p_ave)
        write_table(table, config.output_path, config.units, ("I", "C"))
        return EXIT_OK

    model = parse_model_spec(config.model_spec)
    logger.info("Model %s, beta=%g, %d rho values", model.name, config.beta,
                len(config.rho_grid))
    if args.command == "bounds":
        table = cmd_bounds(config, model, args.cll_mc, args.window)
        columns = BOUND_COLUMNS
    elif args.command == "asymptote":
        table = cmd_asymptote(config, model)
        columns = ("U_over_rho2", "L_n_over_rho2", "f_beta")
    elif args.command == "mi":
        table = cmd_mi(config, model, args.duty, args.family, args.phases, args.oracle)
        columns = ("mi_quadratic", "mi_cubic", "mi_mc", "mi_mc_stderr")
    elif args.command == "predict":
        table = cmd_predict(config, model, args.mode, args.solver)
        columns = ()
    else:
        table = cmd_lowerbound(config, model)
        columns = ("coeff",)
    write_table(table, config.output_path, config.units, columns)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    _setup_logging(args.verbose)
    try:
        return _run(args)
    except FadeCapError as e:
        logger.error("%s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

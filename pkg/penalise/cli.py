"""
Command-line front end for the penalise package.
"""
import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence

from penalise import __version__
from penalise.config import get_config
from penalise.exceptions import PenaliseError
from penalise.funcspace.step import StepFunction
from penalise.models.config import RunConfig


def _float_list(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="RunConfig-shaped JSON file")
    common.add_argument("--out", help="Output directory (default: penalise-out)")
    common.add_argument("--seed", type=int, help="Root seed (fallback: PENALISE_SEED)")
    common.add_argument("--n-paths", type=int, help="Monte Carlo paths per check or command")
    common.add_argument("--dt", type=float, help="Grid spacing of uniform grids")
    common.add_argument("--horizon", type=float, help="Sampling horizon of tilted paths")
    common.add_argument("--workers", type=int, help="Concurrent checks (default: CPU count)")
    return common


def build_argument_parser() -> argparse.ArgumentParser:
    """Parser with the simulate, integrate, verify and table subcommands."""
    parser = argparse.ArgumentParser(
        prog="penalise",
        description="Simulate and verify Wiener integrals under the penalisation measure.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    common = _common_options()

    simulate = sub.add_parser("simulate", parents=[common], help="Sample tilted paths")
    simulate.add_argument("--dump-paths", type=int, help="Number of full paths written as CSV")

    integrate = sub.add_parser("integrate", parents=[common], help="Decompose a step-function integral")
    source = integrate.add_mutually_exclusive_group(required=True)
    source.add_argument("--f", dest="f_json", help="Step function as JSON pairs [[t_k, c_k], ...]")
    source.add_argument("--f-file", help="File holding the step-function JSON")
    integrate.add_argument("--t-grid", type=_float_list, help="Times of the I_t trajectory, e.g. 0.5,1,2")

    verify = sub.add_parser("verify", parents=[common], help="Run the verification suite")
    verify.add_argument(
        "--check", action="append", dest="checks",
        help="Check id to run (repeatable or comma-separated; default: all 14)",
    )

    table = sub.add_parser("table", parents=[common], help="Refinement table of one check")
    table.add_argument("--check", required=True, dest="table_check", help="bm_isometry, arcsine_law or limit_ratio")
    table.add_argument("--levels", type=_float_list, help="Refinement levels, e.g. 0.015625,0.0078125")
    return parser


def _read_integrand(args: argparse.Namespace) -> List[List[float]]:
    if args.f_file:
        with open(args.f_file, "r") as f:
            text = f.read()
    else:
        text = args.f_json
    return StepFunction.from_json(text).to_pairs()


def build_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Nested RunConfig values set on the command line; unset flags stay None."""
    overrides: Dict[str, Any] = {
        "subcommand": args.subcommand,
        "out": args.out,
        "suite": {
            "seed": args.seed,
            "n_paths": args.n_paths,
            "dt": args.dt,
            "horizon": args.horizon,
            "workers": args.workers,
        },
    }
    if args.subcommand == "simulate":
        overrides["dump_paths"] = args.dump_paths
    elif args.subcommand == "integrate":
        overrides["integrand"] = _read_integrand(args)
        overrides["t_grid"] = args.t_grid
    elif args.subcommand == "verify" and args.checks:
        overrides["checks"] = [c.strip() for item in args.checks for c in item.split(",") if c.strip()]
    elif args.subcommand == "table":
        overrides["checks"] = [args.table_check]
        overrides["levels"] = args.levels
    return overrides


def run(config: RunConfig) -> int:
    """
    Dispatch a resolved configuration to its workflow.

    Args:
        config: Resolved run configuration

    Returns:
        Process exit code
    """
    from penalise.verify.checks import resolve_checks
    from penalise.workflows.simulation import integrate_flow, simulate_flow
    from penalise.workflows.suite import table_flow, verify_flow

    if config.subcommand == "simulate":
        simulate_flow(config)
        return 0
    if config.subcommand == "integrate":
        integrate_flow(config)
        return 0
    if config.subcommand == "table":
        table_flow(config)
        return 0
    resolve_checks(config.checks)
    return verify_flow(config).exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the penalise command.

    Args:
        argv: Arguments (default: sys.argv[1:])

    Returns:
        0 on success; for verify the suite exit code; 2 on invalid input
    """
    parser = build_argument_parser()
    args = parser.parse_args(argv)
    try:
        config = get_config(args.config, build_overrides(args))
        return run(config)
    except PenaliseError as e:
        print(f"penalise: error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"penalise: I/O error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

Usage examples::

    quantumness validate ensemble.json
    quantumness accfid ensemble.json --restarts 16 --out report.json
    quantumness sweep-two-state --x-start 0 --x-stop 1 --x-step 0.1
    quantumness sweep-symmetric --n-values 2,6,12,30,100
    quantumness clone-verify --x-values 0,0.25,0.5,0.5773502692,0.75,1
    quantumness explore-qd 2 --sizes 2,3,4

Reports go to stdout unless ``--out`` is given; logs go to stderr.
"""
# Standard
import argparse
import logging
import sys

# Installed
import numpy as np

# Local
from quantumness.cli.commands import (
    cmd_accfid,
    cmd_clone_verify,
    cmd_explore_qd,
    cmd_quantumness,
    cmd_sweep_symmetric,
    cmd_sweep_two_state,
    cmd_validate,
)
from quantumness.cli.report import ExitCode, write_atomic
from quantumness.errors import InvalidInputError, InvariantBreachError, QuantumnessError
from quantumness.solvers import SolverConfig
from quantumness.solvers.oracle import DEFAULT_RESOLUTION, DEFAULT_SAMPLES
from quantumness.utils import load_config

logger = logging.getLogger(__name__)

DEFAULT_X_START = 0.0
DEFAULT_X_STOP = 1.0
DEFAULT_X_STEP = 0.1


def _float_list(text):
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"Expected comma-separated numbers: {e}")


def _int_list(text):
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"Expected comma-separated integers: {e}")


def x_grid(args):
    """Overlaps to sweep, from ``--x-values`` or ``--x-start/--x-stop/--x-step``.

    Raises
    ------
    InvalidInputError
        If both forms are given, the range is empty, or a value leaves [0, 1].
    """
    ranged = any(
        value is not None for value in (args.x_start, args.x_stop, args.x_step)
    )
    if args.x_values is not None and ranged:
        raise InvalidInputError("Give either --x-values or --x-start/--x-stop/--x-step")
    if args.x_values is not None:
        values = list(args.x_values)
    else:
        start = DEFAULT_X_START if args.x_start is None else args.x_start
        stop = DEFAULT_X_STOP if args.x_stop is None else args.x_stop
        step = DEFAULT_X_STEP if args.x_step is None else args.x_step
        if not step > 0.0 or stop < start:
            raise InvalidInputError(
                f"Empty grid: start {start}, stop {stop}, step {step}"
            )
        count = int(np.floor((stop - start) / step + 1e-9))
        values = [round(start + k * step, 12) for k in range(count + 1)]
    if not values:
        raise InvalidInputError("The x grid is empty")
    outside = [x for x in values if not 0.0 <= x <= 1.0]
    if outside:
        raise InvalidInputError(f"Overlaps must lie in [0, 1], got {outside}")
    return values


def _solver_options(parser):
    group = parser.add_argument_group("solver")
    group.add_argument("--restarts", type=int, help="random starts of the seesaw")
    group.add_argument("--outcomes", type=int, help="measurement outcomes (d^2)")
    group.add_argument("--tol", type=float, help="convergence tolerance")
    group.add_argument("--max-iter", type=int, help="iterations per start")
    group.add_argument("--seed", type=int, help="seed of every random stream")
    group.add_argument(
        "--inner-restarts", type=int, help="random starts of each inner solve"
    )
    group.add_argument(
        "--outer-iterations", type=int, help="subgradient steps over the priors"
    )
    group.add_argument("--config", help="configuration file replacing the default")
    group.add_argument("--out", help="write the output here instead of stdout")


def _x_options(parser):
    parser.add_argument("--x-values", type=_float_list, help="comma-separated overlaps")
    parser.add_argument("--x-start", type=float)
    parser.add_argument("--x-stop", type=float)
    parser.add_argument("--x-step", type=float)


def build_parser():
    """Returns the argument parser of the ``quantumness`` executable."""
    parser = argparse.ArgumentParser(
        prog="quantumness",
        description="Accessible fidelity and quantumness of quantum-state ensembles.",
    )
    parser.add_argument(
        "--verbose", action="store_true", help="log per-iteration detail"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="check an ensemble file")
    validate.add_argument("path")
    validate.add_argument("--config", help="configuration file replacing the default")
    validate.add_argument("--out")

    accfid = commands.add_parser("accfid", help="accessible fidelity of an ensemble")
    accfid.add_argument("path")
    _solver_options(accfid)
    accfid.add_argument(
        "--oracle", action="store_true", help="compare with the qubit oracle"
    )
    accfid.add_argument("--resolution", type=float, help="oracle grid resolution")
    accfid.add_argument("--samples", type=int, help="oracle random measurements")

    quantum = commands.add_parser("quantumness", help="quantumness of a state set")
    quantum.add_argument("path")
    _solver_options(quantum)

    two_state = commands.add_parser(
        "sweep-two-state", help="CSV over the overlap of two equiprobable states"
    )
    _x_options(two_state)
    _solver_options(two_state)

    symmetric = commands.add_parser(
        "sweep-symmetric", help="CSV over symmetric qubit sets of n states"
    )
    symmetric.add_argument(
        "--n-values", type=_int_list, default=[2, 6, 12, 30, 100]
    )
    _solver_options(symmetric)

    clone = commands.add_parser(
        "clone-verify", help="numeric cloning maximum against the closed form"
    )
    _x_options(clone)
    clone.add_argument(
        "--grid-step", type=float, default=1e-4, help="grid of the argmin search"
    )
    _solver_options(clone)

    explore = commands.add_parser(
        "explore-qd", help="heuristic search for the quantumness of a space"
    )
    explore.add_argument("dim", type=int)
    explore.add_argument("--sizes", type=_int_list, default=[2, 3, 4])
    _solver_options(explore)
    return parser


def solver_config(args, config=None):
    """SolverConfig from the configuration file and the command-line flags."""
    if config is None:
        config = load_config(getattr(args, "config", None))
    return SolverConfig.from_config(
        config,
        restarts=args.restarts,
        outcomes=args.outcomes,
        convergence_tol=args.tol,
        max_iterations=args.max_iter,
        seed=args.seed,
        inner_restarts=args.inner_restarts,
        outer_iterations=args.outer_iterations,
    )


def _run_config(args):
    """The configuration of this run; tolerances always come from the package."""
    path = getattr(args, "config", None)
    config = load_config(path)
    if path is not None:
        packaged = load_config()["tolerances"]
        changed = sorted(
            name
            for name, value in config.get("tolerances", {}).items()
            if packaged.get(name) != value
        )
        if changed:
            logger.warning(
                f"Tolerances {changed} are fixed by the packaged configuration; "
                f"the values in {path} are ignored"
            )
    return config


def run(args):
    """Dispatch parsed arguments to their command."""
    config = _run_config(args)
    limits = config.get("limits", {})
    if args.command == "validate":
        return cmd_validate(args.path, limits)
    cfg = solver_config(args, config)
    if args.command == "accfid":
        oracle = config.get("oracle", {})
        resolution = oracle.get("resolution", DEFAULT_RESOLUTION)
        samples = oracle.get("samples", DEFAULT_SAMPLES)
        return cmd_accfid(
            args.path,
            cfg,
            oracle=args.oracle,
            resolution=resolution if args.resolution is None else args.resolution,
            samples=samples if args.samples is None else args.samples,
            limits=limits,
        )
    if args.command == "quantumness":
        return cmd_quantumness(args.path, cfg, limits)
    if args.command == "sweep-two-state":
        return cmd_sweep_two_state(x_grid(args), cfg)
    if args.command == "sweep-symmetric":
        return cmd_sweep_symmetric(args.n_values, cfg)
    if args.command == "clone-verify":
        return cmd_clone_verify(x_grid(args), cfg, grid_step=args.grid_step)
    return cmd_explore_qd(args.dim, args.sizes, cfg, limits)


def main(argv=None):
    """Run the executable and return its exit code.

    0 on success, 1 on an input error, 2 if an optimizer did not converge and
    3 if a checked invariant failed or the run broke unexpectedly. Reports are
    written whenever a command returns one, whatever its exit code.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        output = run(args)
    except InvariantBreachError as e:
        logger.error(f"Invariant breach: {e}")
        return int(ExitCode.INVARIANT_BREACH)
    except (QuantumnessError, ValueError, OSError) as e:
        logger.error(f"Input error: {e}")
        return int(ExitCode.INPUT_ERROR)
    except Exception:
        logger.exception("Unexpected failure")
        return int(ExitCode.INVARIANT_BREACH)

    if args.out:
        write_atomic(args.out, output.text)
    else:
        sys.stdout.write(output.text)
    if output.exit_code is ExitCode.NOT_CONVERGED:
        logger.warning("At least one optimization did not converge")
    elif output.exit_code is ExitCode.INVARIANT_BREACH:
        logger.error("A checked invariant failed; see the report")
    return int(output.exit_code)


if __name__ == "__main__":
    sys.exit(main())

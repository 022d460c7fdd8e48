"""The commands behind the ``quantumness`` executable.

Each command returns a :class:`CommandOutput`: the text to emit (a JSON
report or a CSV table) and the exit code. Input problems raise
``InvalidInputError``; the entry point maps exceptions to exit codes.
"""
# Standard
import json
import logging
import time
from dataclasses import dataclass

# Local
from quantumness.bounds import (
    bounds_report,
    certificate_sandwich,
    clone_fidelity,
    clone_fidelity_argmin,
    overlap_to_degrees,
    pgm_fidelity,
    trivial_bound,
)
from quantumness.cli.report import (
    SYMMETRIC_HEADER,
    TWO_STATE_HEADER,
    ExitCode,
    RunReport,
    csv_text,
)
from quantumness.ensemble_utils import (
    ensemble_from_document,
    load_ensemble_document,
    make_two_state_ensemble,
    symmetric_qubit_ensemble,
    validate_ensemble_document,
)
from quantumness.errors import InvalidInputError, InvariantBreachError
from quantumness.solvers import (
    SolverStatus,
    brute_force_qubit_fidelity,
    explore_space_quantumness,
    optimal_success_probability,
    optimize_accessible_fidelity,
    optimize_clone_unitary,
    quantumness,
)

logger = logging.getLogger(__name__)

ORACLE_TOL = 1e-4


@dataclass
class CommandOutput:
    """Text produced by a command and the exit code it asks for."""

    text: str
    exit_code: ExitCode = ExitCode.SUCCESS


def _status_code(statuses):
    if SolverStatus.combine(statuses) is SolverStatus.NOT_CONVERGED:
        return ExitCode.NOT_CONVERGED
    return ExitCode.SUCCESS


def _check_sandwich(sandwich, label):
    if not sandwich["ok"]:
        raise InvariantBreachError(
            f"{label} violates the bound sandwich: lower bound {sandwich['lower']!r}"
        )


def _read_ensemble(path, ignore_probs=False, limits=None):
    document = load_ensemble_document(path)
    max_states = (limits or {}).get("max_states")
    return ensemble_from_document(
        document, ignore_probs=ignore_probs, max_states=max_states
    )


def cmd_validate(path, limits=None):
    """Check an ensemble file against every invariant.

    ``limits`` is the ``limits`` section of the run configuration; the
    packaged limits apply when it is omitted.

    Returns
    -------
    CommandOutput
        A JSON document listing the violations with their residuals; exit
        code 0 when there are none and 1 otherwise.
    """
    document = load_ensemble_document(path)
    diagnostics = validate_ensemble_document(
        document, (limits or {}).get("max_states")
    )
    for diagnostic in diagnostics:
        logger.warning(diagnostic.message)
    output = {
        "command": "validate",
        "path": str(path),
        "valid": not diagnostics,
        "diagnostics": [diagnostic.to_dict() for diagnostic in diagnostics],
    }
    return CommandOutput(
        json.dumps(output, sort_keys=True, indent=2) + "\n",
        ExitCode.SUCCESS if not diagnostics else ExitCode.INPUT_ERROR,
    )


def cmd_accfid(
    path, cfg, oracle=False, resolution=1e-3, samples=100_000, limits=None
):
    """Accessible fidelity of the ensemble in ``path``.

    Parameters
    ----------
    path : str or Path
    cfg : SolverConfig
    oracle : bool, optional
        Also run the brute-force qubit oracle and compare.
    resolution, samples : optional
        Oracle settings.

    Returns
    -------
    CommandOutput
        JSON run report with the value, the optimal measurement and
        responses, the bounds and the bound sandwich.
    """
    started = time.perf_counter()
    ensemble = _read_ensemble(path, limits=limits)
    if oracle and ensemble.dim != 2:
        raise InvalidInputError(
            f"--oracle needs a qubit ensemble, got dimension {ensemble.dim}"
        )
    bounds = bounds_report(ensemble)
    success = optimal_success_probability(ensemble, cfg)
    # the best guessing measurement bounds the fidelity from below
    solve = optimize_accessible_fidelity(ensemble, cfg, initial_povms=[success.povm])
    sandwich = certificate_sandwich(bounds, solve.value, success.value)
    results = {
        "accessible_fidelity": solve.value,
        "solve": solve.to_dict(),
        "optimal_success_probability": success.value,
        "success_status": success.status.value,
        "sandwich": sandwich,
    }
    arguments = {"path": str(path), "oracle": oracle}
    if oracle:
        reference = brute_force_qubit_fidelity(
            ensemble, resolution=resolution, samples=samples, seed=cfg.seed
        )
        results["oracle"] = {
            "value": reference,
            "difference": solve.value - reference,
            "agrees": abs(solve.value - reference) <= ORACLE_TOL,
        }
        arguments.update({"resolution": resolution, "samples": samples})
    _check_sandwich(sandwich, "Accessible fidelity")
    statuses = [solve.status, success.status]
    report = RunReport(
        command="accfid",
        config=cfg.to_dict(),
        arguments=arguments,
        results=results,
        input_digest=ensemble.digest(),
        bounds=bounds.to_dict(),
        status=SolverStatus.combine(statuses).value,
        wall_time_seconds=time.perf_counter() - started,
    )
    return CommandOutput(report.to_json(), _status_code(statuses))


def cmd_quantumness(path, cfg, limits=None):
    """Quantumness of the states listed in ``path``; priors in the file are ignored."""
    started = time.perf_counter()
    ensemble = _read_ensemble(path, ignore_probs=True, limits=limits)
    result = quantumness(list(ensemble.states), cfg)
    worst = ensemble.with_priors(result.worst_priors)
    bounds = bounds_report(worst)
    sandwich = certificate_sandwich(bounds, result.value)
    _check_sandwich(sandwich, "Quantumness")
    report = RunReport(
        command="quantumness",
        config=cfg.to_dict(),
        arguments={"path": str(path)},
        results={"quantumness": result.to_dict(), "sandwich": sandwich},
        input_digest=ensemble.digest(),
        bounds=bounds.to_dict(),
        status=result.status.value,
        wall_time_seconds=time.perf_counter() - started,
    )
    return CommandOutput(report.to_json(), _status_code([result.status]))


def cmd_sweep_two_state(x_values, cfg):
    """CSV ``x,F_acc,F_pgm,lambda1,P_s_opt,F_clone`` for equiprobable pairs."""
    rows = []
    statuses = []
    for x in x_values:
        ensemble = make_two_state_ensemble(x)
        success = optimal_success_probability(ensemble, cfg)
        solve = optimize_accessible_fidelity(
            ensemble, cfg, initial_povms=[success.povm]
        )
        statuses.extend([solve.status, success.status])
        rows.append(
            [
                x,
                solve.value,
                pgm_fidelity(ensemble),
                trivial_bound(ensemble),
                success.value,
                clone_fidelity(x),
            ]
        )
        logger.info(f"x={x}: F_acc={solve.value:.12g}")
    return CommandOutput(csv_text(TWO_STATE_HEADER, rows), _status_code(statuses))


def cmd_sweep_symmetric(n_values, cfg):
    """CSV ``n,F_acc,lambda1,P_s_opt`` for equiprobable symmetric qubit sets."""
    rows = []
    statuses = []
    for n in n_values:
        if n < 1:
            raise InvalidInputError(f"n must be at least 1, got {n}")
        ensemble = symmetric_qubit_ensemble(n)
        success = optimal_success_probability(ensemble, cfg)
        solve = optimize_accessible_fidelity(
            ensemble, cfg, initial_povms=[success.povm]
        )
        statuses.extend([solve.status, success.status])
        rows.append([int(n), solve.value, trivial_bound(ensemble), success.value])
        logger.info(f"n={n}: F_acc={solve.value:.12g}")
    return CommandOutput(csv_text(SYMMETRIC_HEADER, rows), _status_code(statuses))


def cmd_clone_verify(x_values, cfg, grid_step=1e-4):
    """Numeric cloning maximum against the closed form at every ``x``.

    The exit code is ``INVARIANT_BREACH`` if any gap ``closed_form - numeric``
    leaves [-1e-9, 1e-3]; the report is written either way.
    """
    started = time.perf_counter()
    rows = [optimize_clone_unitary(x, cfg) for x in x_values]
    argmin = clone_fidelity_argmin(grid_step)
    report = RunReport(
        command="clone-verify",
        config=cfg.to_dict(),
        arguments={"x_values": list(x_values), "grid_step": grid_step},
        results={
            "rows": [
                {
                    "x": row.x,
                    "numeric": row.value,
                    "closed_form": row.closed_form,
                    "gap": row.gap,
                    "gap_ok": row.gap_ok,
                }
                for row in rows
            ],
            "argmin": argmin,
            "argmin_degrees": overlap_to_degrees(argmin),
            "minimum": clone_fidelity(argmin),
        },
        wall_time_seconds=time.perf_counter() - started,
    )
    text = report.to_json()
    failed = [row.x for row in rows if not row.gap_ok]
    if failed:
        logger.error(f"Cloning gap out of range at x = {failed}")
        return CommandOutput(text, ExitCode.INVARIANT_BREACH)
    return CommandOutput(text)


def cmd_explore_qd(dim, sizes, cfg, limits=None):
    """Best state set found in dimension ``dim``, labelled as an upper bound."""
    started = time.perf_counter()
    result = explore_space_quantumness(
        dim, sizes, cfg, max_dimension=(limits or {}).get("max_dimension")
    )
    report = RunReport(
        command="explore-qd",
        config=cfg.to_dict(),
        arguments={"dim": dim, "sizes": sorted(set(sizes))},
        results=result.to_dict(),
        wall_time_seconds=time.perf_counter() - started,
    )
    return CommandOutput(report.to_json())

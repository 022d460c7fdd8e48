"""Read and write the ensemble JSON schema.

An ensemble file looks like::

    {"dimension": 2,
     "states": [[[1, 0], [0, 0]], [[0.6, 0], [0.8, 0]]],
     "probs": [0.5, 0.5]}

``states`` holds one row per state and one ``[re, im]`` pair per
amplitude. ``probs`` is optional and defaults to uniform.
"""
# Standard
import json
import logging
import math
from pathlib import Path

# Installed
import numpy as np

# Local
from quantumness.ensemble_utils.diagnostics import Diagnostic, DiagnosticKind
from quantumness.ensemble_utils.ensemble import PRIOR_SUM_TOL, Ensemble
from quantumness.ensemble_utils.pure_state import NORM_TOL, PureState
from quantumness.errors import InvalidInputError
from quantumness.utils.config import limit

logger = logging.getLogger(__name__)


def to_pairs(values):
    """Converts a complex array to nested lists of ``[re, im]`` pairs."""
    values = np.asarray(values, dtype=complex)
    if values.ndim == 0:
        return [float(values.real), float(values.imag)]
    return [to_pairs(row) for row in values]


def from_pairs(pairs):
    """Converts nested ``[re, im]`` lists back to a complex array."""
    array = np.asarray(pairs, dtype=float)
    if array.ndim == 0 or array.shape[-1] != 2:
        raise InvalidInputError("Complex entries must be [re, im] pairs")
    return array[..., 0] + 1j * array[..., 1]


def load_ensemble_document(path):
    """Parse an ensemble file into a python dictionary.

    Parameters
    ----------
    path : str or Path

    Returns
    -------
    dict

    Raises
    ------
    InvalidInputError
        If the file cannot be read or is not valid JSON. The message carries
        the line and column of a parse failure.
    """
    path = Path(path)
    try:
        content = path.read_text()
    except OSError as e:
        raise InvalidInputError(f"Could not read {path}: {e}") from e
    try:
        document = json.loads(content)
    except json.JSONDecodeError as e:
        raise InvalidInputError(
            f"{path} is not valid JSON: {e.msg} (line {e.lineno}, column {e.colno})"
        ) from e
    if not isinstance(document, dict):
        raise InvalidInputError(f"{path} must hold a JSON object")
    return document


def _structure(document):
    """Checks the shape of the document and returns (dim, amplitudes, probs)."""
    if "dimension" not in document or "states" not in document:
        raise InvalidInputError("Ensemble document needs 'dimension' and 'states'")
    dim = document["dimension"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise InvalidInputError(f"'dimension' must be a positive integer, got {dim!r}")
    states = document["states"]
    if not isinstance(states, list):
        raise InvalidInputError("'states' must be a list of states")
    amplitudes = []
    for index, state in enumerate(states):
        try:
            vector = from_pairs(state)
        except (TypeError, ValueError) as e:
            raise InvalidInputError(
                f"State {index} is not a list of [re, im] pairs: {e}"
            ) from e
        if vector.ndim != 1:
            raise InvalidInputError(f"State {index} must be a flat list of pairs")
        amplitudes.append(vector)
    probs = document.get("probs")
    if probs is not None:
        try:
            probs = np.asarray(probs, dtype=float).reshape(-1)
        except (TypeError, ValueError) as e:
            raise InvalidInputError(f"'probs' must be a list of numbers: {e}") from e
    return dim, amplitudes, probs


def validate_ensemble_document(document, max_states=None):
    """List the invariant violations of an ensemble document.

    Parameters
    ----------
    document : dict
        Parsed ensemble JSON.
    max_states : int, optional
        Largest accepted number of states; the packaged ``max_states`` limit
        when omitted.

    Returns
    -------
    list of Diagnostic
        Empty when the document describes a valid ensemble.

    Raises
    ------
    InvalidInputError
        If the document does not have the schema's structure at all.
    """
    if max_states is None:
        max_states = limit("max_states")
    dim, amplitudes, probs = _structure(document)
    diagnostics = []
    if not amplitudes:
        diagnostics.append(Diagnostic(DiagnosticKind.EMPTY, "No states listed", 0.0))
    if len(amplitudes) > max_states:
        diagnostics.append(
            Diagnostic(
                DiagnosticKind.TOO_MANY_STATES,
                f"{len(amplitudes)} states exceed the limit of {max_states}",
                float(len(amplitudes) - max_states),
            )
        )
    for index, vector in enumerate(amplitudes):
        if vector.size != dim:
            diagnostics.append(
                Diagnostic(
                    DiagnosticKind.DIMENSION,
                    f"State {index} has {vector.size} amplitudes, expected {dim}",
                    float(abs(vector.size - dim)),
                    index,
                )
            )
            continue
        if not np.all(np.isfinite(vector)):
            diagnostics.append(
                Diagnostic(
                    DiagnosticKind.NON_FINITE,
                    f"State {index} has non-finite amplitudes",
                    math.inf,
                    index,
                )
            )
            continue
        residual = abs(float(np.vdot(vector, vector).real) - 1.0)
        if residual > NORM_TOL:
            diagnostics.append(
                Diagnostic(
                    DiagnosticKind.NOT_NORMALIZED,
                    f"State {index} has squared norm off from 1 by {residual:.3e}",
                    residual,
                    index,
                )
            )
    if probs is not None:
        if probs.size != len(amplitudes):
            diagnostics.append(
                Diagnostic(
                    DiagnosticKind.DIMENSION,
                    f"{probs.size} probabilities for {len(amplitudes)} states",
                    float(abs(probs.size - len(amplitudes))),
                )
            )
        for index, prob in enumerate(probs.tolist()):
            if not math.isfinite(prob) or prob < 0.0:
                diagnostics.append(
                    Diagnostic(
                        DiagnosticKind.NEGATIVE_PRIOR,
                        f"Probability {index} is {prob}",
                        float(prob),
                        index,
                    )
                )
        residual = abs(float(np.sum(probs)) - 1.0)
        if residual > PRIOR_SUM_TOL:
            diagnostics.append(
                Diagnostic(
                    DiagnosticKind.PRIOR_SUM,
                    f"Probabilities sum to {float(np.sum(probs)):.12g}",
                    residual,
                )
            )
    return diagnostics


def ensemble_from_document(document, ignore_probs=False, max_states=None):
    """Build an :class:`Ensemble` from a parsed document.

    Parameters
    ----------
    document : dict
        Parsed ensemble JSON.
    ignore_probs : bool, optional
        Use uniform priors even if ``probs`` is present.
    max_states : int, optional
        Passed to :func:`validate_ensemble_document`.

    Returns
    -------
    Ensemble

    Raises
    ------
    InvalidInputError
        If the document violates any invariant.
    """
    if ignore_probs and document.get("probs") is not None:
        logger.warning("Ignoring 'probs' in the ensemble document")
        document = {key: value for key, value in document.items() if key != "probs"}
    diagnostics = validate_ensemble_document(document, max_states)
    if diagnostics:
        summary = "; ".join(diagnostic.message for diagnostic in diagnostics)
        raise InvalidInputError(f"Invalid ensemble document: {summary}")
    _, amplitudes, probs = _structure(document)
    states = [PureState(vector) for vector in amplitudes]
    if probs is None:
        return Ensemble.uniform(states)
    return Ensemble(probs, states)


def ensemble_to_document(ensemble):
    """Returns the JSON-ready document for an ensemble."""
    ensemble = Ensemble.validate_ensemble(ensemble)
    return {
        "dimension": ensemble.dim,
        "states": to_pairs(ensemble.vectors),
        "probs": ensemble.priors.tolist(),
    }

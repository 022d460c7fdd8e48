"""Closed-form evaluation of a measure-and-prepare protocol.

For an ensemble {pi_i, |psi_i>} and a measurement {E_b}:

- the average fidelity of a protocol that prepares sigma_b on outcome b is
  ``sum_{b,i} pi_i tr(Pi_i E_b) <psi_i|sigma_b|psi_i>``;
- the best preparation for each outcome is the top eigenvector of
  ``M_b = sum_i pi_i tr(Pi_i E_b) Pi_i``, so the achievable fidelity is
  ``sum_b lambda_1(M_b)``;
- the Bayes posterior is ``p(i|b) = pi_i tr(Pi_i E_b) / tr(rho E_b)`` and the
  maximum-likelihood success probability is ``sum_b max_i pi_i tr(Pi_i E_b)``.

Outcomes with ``tr(rho E_b) <= 1e-15`` contribute nothing and are skipped.
Sums always run in outcome order so results are reproducible bit for bit.
"""
# Standard
import logging
from dataclasses import dataclass, field
from typing import List

# Installed
import numpy as np

# Local
from quantumness.ensemble_utils import Ensemble, Povm, PureState, ResponseMap, to_pairs
from quantumness.ensemble_utils.povm import validate_povm
from quantumness.errors import (
    DimensionMismatchError,
    InvalidInputError,
    InvalidPovmError,
    UndefinedPosteriorError,
)
from quantumness.linalg_utils import HermitianOperator, top_eigenpairs_array
from quantumness.utils.config import tolerance

logger = logging.getLogger(__name__)

ZERO_PROBABILITY = tolerance("zero_probability")
CLAMP_REPORT_TOL = 1e-9


@dataclass
class AchievabilityResult:
    """Achievable fidelity of a measurement with its optimal responses.

    Attributes
    ----------
    value : float
        ``sum_b lambda_1(M_b)``, clamped to [0, 1].
    responses : list of PureState
        Optimal prepared state |phi_b> for each outcome.
    outcome_weights : list of float
        Outcome probabilities p(b) = tr(rho E_b).
    clamp_residual : float
        How far the accumulated value fell outside [0, 1] before clamping.
    """

    value: float
    responses: List[PureState]
    outcome_weights: List[float]
    clamp_residual: float = 0.0
    eigenvalues: List[float] = field(default_factory=list)

    def to_dict(self):
        """Returns a JSON-ready dictionary."""
        return {
            "value": self.value,
            "responses": [to_pairs(state.amplitudes) for state in self.responses],
            "outcome_weights": list(self.outcome_weights),
            "clamp_residual": self.clamp_residual,
        }


def clamp_fidelity(value, label="fidelity"):
    """Clamp an accumulated value to [0, 1].

    Returns
    -------
    clamped : float
    residual : float
        Signed overflow outside [0, 1], zero when inside.
    """
    residual = 0.0
    if value > 1.0:
        residual = value - 1.0
    elif value < 0.0:
        residual = value
    if abs(residual) > CLAMP_REPORT_TOL:
        logger.warning(
            f"{label} {value!r} left [0, 1] by {residual:.3e} before clamping"
        )
    return min(max(value, 0.0), 1.0), residual


def _check_dims(ensemble, povm):
    ensemble = Ensemble.validate_ensemble(ensemble)
    povm = Povm.validate_povm_type(povm)
    if ensemble.dim != povm.dim:
        raise DimensionMismatchError(
            f"Ensemble dimension {ensemble.dim} differs from measurement dimension "
            f"{povm.dim}"
        )
    return ensemble, povm


def click_probabilities(vectors, elements):
    """``K x n`` array of tr(Pi_i E_b) = <psi_i|E_b|psi_i>."""
    return np.einsum("ia,kab,ib->ki", vectors.conj(), elements, vectors).real


def conditional_operators_array(vectors, priors, elements):
    """``K x d x d`` stack of M_b = sum_i pi_i tr(Pi_i E_b) Pi_i."""
    weights = click_probabilities(vectors, elements) * priors
    return np.einsum("ki,ia,ib->kab", weights, vectors, vectors.conj())


def achievable_terms(vectors, priors, elements):
    """Per-outcome pieces of the achievable fidelity.

    Returns
    -------
    eigenvalues : numpy.ndarray
        lambda_1(M_b), zero for skipped outcomes.
    responses : numpy.ndarray
        ``K x d`` top eigenvectors; skipped outcomes get the first basis
        vector.
    weights : numpy.ndarray
        p(b) = tr(rho E_b).
    """
    conditional = conditional_operators_array(vectors, priors, elements)
    weights = np.einsum("kaa->k", conditional).real
    count, dim = elements.shape[0], elements.shape[-1]
    eigenvalues = np.zeros(count)
    responses = np.zeros((count, dim), dtype=complex)
    responses[:, 0] = 1.0
    active = weights > ZERO_PROBABILITY
    if np.any(active):
        eigenvalues[active], responses[active] = top_eigenpairs_array(
            conditional[active]
        )
    return eigenvalues, responses, weights


def response_weights(vectors, priors, responses):
    """``K x n`` array pi_i |<phi_b|psi_i>|^2."""
    overlaps = np.abs(responses.conj() @ vectors.T) ** 2
    return overlaps * priors


def success_terms(vectors, priors, elements):
    """Per-outcome max_i pi_i tr(Pi_i E_b) and the guessed index."""
    joint = click_probabilities(vectors, elements) * priors
    guesses = np.argmax(joint, axis=1)
    best = joint[np.arange(joint.shape[0]), guesses]
    best = np.where(joint.sum(axis=1) <= ZERO_PROBABILITY, 0.0, best)
    return best, guesses


def average_fidelity(ensemble, povm, responses):
    """Average fidelity of the protocol (measurement, response map).

    Parameters
    ----------
    ensemble : Ensemble
    povm : Povm
    responses : ResponseMap
        One density operator per outcome.

    Returns
    -------
    float
        ``sum_{b,i} pi_i tr(Pi_i E_b) tr(Pi_i sigma_b)`` in [0, 1].
    """
    ensemble, povm = _check_dims(ensemble, povm)
    if not isinstance(responses, ResponseMap):
        raise TypeError(
            f"Input is type {type(responses)}, but must be type ResponseMap"
        )
    if len(responses) != len(povm):
        raise DimensionMismatchError(
            f"{len(responses)} responses for a measurement with {len(povm)} outcomes"
        )
    sigma = responses.stacked()
    if sigma.shape[-1] != ensemble.dim:
        raise DimensionMismatchError("Responses live in a different dimension")

    vectors, priors = ensemble.vectors, ensemble.priors
    clicks = click_probabilities(vectors, povm.stacked())
    reproduction = np.einsum("ia,kab,ib->ki", vectors.conj(), sigma, vectors).real
    total = 0.0
    for b in range(len(povm)):
        total += float(np.sum(priors * clicks[b] * reproduction[b]))
    value, _ = clamp_fidelity(total, "average fidelity")
    return value


def conditional_operator(ensemble, element):
    """The operator M = sum_i pi_i tr(Pi_i E) Pi_i for one measurement element.

    Parameters
    ----------
    ensemble : Ensemble
    element : HermitianOperator

    Returns
    -------
    HermitianOperator
        PSD whenever ``element`` is, with trace ``sum_i pi_i tr(Pi_i E)``.
    """
    ensemble = Ensemble.validate_ensemble(ensemble)
    element = HermitianOperator.validate_operator(element)
    if element.dim != ensemble.dim:
        raise DimensionMismatchError(
            f"Element dimension {element.dim} differs from ensemble dimension "
            f"{ensemble.dim}"
        )
    stack = element.matrix[np.newaxis]
    return HermitianOperator(
        conditional_operators_array(ensemble.vectors, ensemble.priors, stack)[0]
    )


def achievable_fidelity(ensemble, povm):
    """Best average fidelity for a fixed measurement.

    Parameters
    ----------
    ensemble : Ensemble
    povm : Povm

    Returns
    -------
    AchievabilityResult
        ``value = sum_b lambda_1(M_b)`` with the top eigenvectors of M_b as
        responses.

    Raises
    ------
    InvalidPovmError
        If the measurement fails :func:`validate_povm`.
    """
    ensemble, povm = _check_dims(ensemble, povm)
    diagnostics = validate_povm(povm)
    if diagnostics:
        raise InvalidPovmError(
            "; ".join(diagnostic.message for diagnostic in diagnostics), diagnostics
        )
    return achievability_from_elements(ensemble, povm.stacked())


def achievability_from_elements(ensemble, elements):
    """:func:`achievable_fidelity` on an already validated element stack."""
    eigenvalues, responses, weights = achievable_terms(
        ensemble.vectors, ensemble.priors, elements
    )
    total = 0.0
    for eigenvalue in eigenvalues:
        total += float(eigenvalue)
    value, residual = clamp_fidelity(total, "achievable fidelity")
    return AchievabilityResult(
        value=value,
        responses=[PureState.normalized(vector) for vector in responses],
        outcome_weights=weights.tolist(),
        clamp_residual=residual,
        eigenvalues=eigenvalues.tolist(),
    )


def posterior(ensemble, povm, outcome_index):
    """Bayes posterior p(i|b) = pi_i tr(Pi_i E_b) / tr(rho E_b).

    Raises
    ------
    UndefinedPosteriorError
        If ``tr(rho E_b) <= 1e-15``.
    """
    ensemble, povm = _check_dims(ensemble, povm)
    if not 0 <= outcome_index < len(povm):
        raise InvalidInputError(
            f"Outcome {outcome_index} out of range for {len(povm)} outcomes"
        )
    element = povm.elements[outcome_index].matrix[np.newaxis]
    joint = click_probabilities(ensemble.vectors, element)[0] * ensemble.priors
    joint = np.clip(joint, 0.0, None)
    probability = float(np.sum(joint))
    if probability <= ZERO_PROBABILITY:
        raise UndefinedPosteriorError(
            f"Outcome {outcome_index} has probability {probability:.3e}"
        )
    return joint / probability


def posterior_operator(ensemble, povm, outcome_index):
    """rho_b = sum_i p(i|b) Pi_i, so that F(E) = sum_b p(b) lambda_1(rho_b)."""
    weights = posterior(ensemble, povm, outcome_index)
    return HermitianOperator(
        np.einsum("i,ia,ib->ab", weights, ensemble.vectors, ensemble.vectors.conj())
    )


def success_probability(ensemble, povm):
    """Maximum-likelihood success probability sum_b max_i pi_i tr(Pi_i E_b)."""
    ensemble, povm = _check_dims(ensemble, povm)
    best, _ = success_terms(ensemble.vectors, ensemble.priors, povm.stacked())
    total = 0.0
    for term in best:
        total += float(term)
    value, _ = clamp_fidelity(total, "success probability")
    return value


def guess_indices(ensemble, povm):
    """The guessed input for each outcome (smallest index among ties)."""
    ensemble, povm = _check_dims(ensemble, povm)
    _, guesses = success_terms(ensemble.vectors, ensemble.priors, povm.stacked())
    return [int(guess) for guess in guesses]


def per_state_fidelity(ensemble, povm, responses):
    """Reconstruction fidelity of each input, sum_b tr(Pi_i E_b) |<phi_b|psi_i>|^2.

    With the optimal responses this is a subgradient of the achievable
    fidelity with respect to the priors.
    """
    ensemble, povm = _check_dims(ensemble, povm)
    vectors = np.array([PureState.validate_state(s).amplitudes for s in responses])
    return per_state_fidelity_array(ensemble.vectors, povm.stacked(), vectors)


def per_state_fidelity_array(vectors, elements, responses):
    """Array form of :func:`per_state_fidelity`."""
    clicks = click_probabilities(vectors, elements)
    overlaps = np.abs(responses.conj() @ vectors.T) ** 2
    return np.sum(clicks * overlaps, axis=0)


def effective_outcomes(ensemble, povm, tol=ZERO_PROBABILITY):
    """Number of outcomes with tr(rho E_b) > tol."""
    ensemble, povm = _check_dims(ensemble, povm)
    weights = click_probabilities(ensemble.vectors, povm.stacked()) @ ensemble.priors
    return int(np.sum(weights > tol))

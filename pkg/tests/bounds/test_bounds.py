import math

import numpy as np
import pytest

from quantumness.bounds import (
    MOST_QUANTUM_OVERLAP,
    bounds_report,
    certificate_sandwich,
    check_unitary,
    clone_fidelity,
    clone_fidelity_argmin,
    clone_try_fidelity,
    helstrom_success,
    overlap_grid,
    overlap_to_degrees,
    pgm_fidelity,
    pgm_fidelity_direct,
    srm_povm,
    trivial_bound,
)
from quantumness.ensemble_utils import (
    Povm,
    haar_unitary,
    make_generator,
    make_two_state_ensemble,
    random_ensemble,
    trivial_povm,
    validate_povm,
)
from quantumness.errors import InvalidInputError, NonUnitaryError
from quantumness.fidelity_kernel import achievable_fidelity, success_probability


def test_trivial_bound_two_states(two_state_ensemble):
    """
    test that lambda_1(rho) is (1 + x) / 2 and matches the trivial measurement.
    """
    ## Act ##
    bound = trivial_bound(two_state_ensemble)

    ## Assert ##
    assert bound == pytest.approx(0.8, abs=1e-12)
    assert bound == pytest.approx(
        achievable_fidelity(two_state_ensemble, trivial_povm(2)).value, abs=1e-10
    )


def test_trivial_bound_single_state(single_state_ensemble):
    """
    test that a single state has lambda_1 = 1.
    """
    assert trivial_bound(single_state_ensemble) == pytest.approx(1.0, abs=1e-12)


def test_srm_of_basis(basis_ensemble):
    """
    test that the square-root measurement of a basis is the basis itself.
    """
    povm = srm_povm(basis_ensemble)

    assert len(povm) == 3
    for k, element in enumerate(povm.elements):
        expected = np.zeros((3, 3))
        expected[k, k] = 1.0
        np.testing.assert_allclose(element.matrix, expected, atol=1e-10)


def test_srm_rank_deficient_is_completed():
    """
    test that identical states get an extra element covering the rest of
    the space.
    """
    ## Arrange ##
    ensemble = make_two_state_ensemble(1.0)

    ## Act ##
    povm = srm_povm(ensemble)

    ## Assert ##
    assert len(povm) == 3
    assert validate_povm(povm) == []
    np.testing.assert_allclose(povm.elements[0].matrix, np.diag([0.5, 0.0]), atol=1e-9)
    np.testing.assert_allclose(povm.elements[2].matrix, np.diag([0.0, 1.0]), atol=1e-9)


def test_pgm_two_states(two_state_ensemble):
    """
    test both routes to F_PGM on the x = 0.6 pair.
    """
    ## Act ##
    inserted = pgm_fidelity(two_state_ensemble)
    direct = pgm_fidelity_direct(two_state_ensemble)

    ## Assert ##
    assert inserted == pytest.approx(direct, abs=1e-9)
    assert inserted >= trivial_bound(two_state_ensemble) - 1e-10


def test_pgm_routes_agree_on_random_ensembles():
    """
    test that the two F_PGM routes agree on 200 seeded ensembles.
    """
    residuals = []
    for seed in range(200):
        rng = make_generator(seed, 1)
        dim = int(rng.integers(2, 5))
        n = int(rng.integers(1, 7))
        ensemble = random_ensemble(dim, n, seed, uniform_priors=bool(seed % 2))
        residuals.append(abs(pgm_fidelity(ensemble) - pgm_fidelity_direct(ensemble)))

    assert max(residuals) <= 1e-9


@pytest.mark.parametrize(("x", "expected"), [(0.0, 1.0), (1.0, 0.5), (0.6, 0.9)])
def test_helstrom_success(x, expected):
    """
    test the Helstrom probability at the endpoints and at x = 0.6.
    """
    assert helstrom_success(x) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("x", [-0.1, 1.1, math.nan])
def test_closed_forms_reject_bad_overlap(x):
    """
    test that overlaps outside [0, 1] raise.
    """
    with pytest.raises(InvalidInputError):
        helstrom_success(x)
    with pytest.raises(InvalidInputError):
        clone_fidelity(x)


@pytest.mark.parametrize("x", [0.3, 0.6, 0.9])
def test_helstrom_matches_projective_scan(x):
    """
    test that the best projective measurement on a fine grid reaches the
    Helstrom probability.
    """
    ## Arrange ##
    ensemble = make_two_state_ensemble(x)
    best = 0.0

    ## Act ##
    for angle in np.arange(0.0, math.pi, 1e-3):
        first = np.array([math.cos(angle), math.sin(angle)])
        second = np.array([-math.sin(angle), math.cos(angle)])
        povm = Povm.from_arrays([np.outer(first, first), np.outer(second, second)])
        best = max(best, success_probability(ensemble, povm))

    ## Assert ##
    assert best == pytest.approx(helstrom_success(x), abs=1e-6)


def test_clone_fidelity_values():
    """
    test the cloning fidelity at the endpoints and at 1/sqrt(3).
    """
    assert clone_fidelity(0.0) == pytest.approx(1.0, abs=1e-12)
    assert clone_fidelity(1.0) == pytest.approx(1.0, abs=1e-12)
    assert clone_fidelity(MOST_QUANTUM_OVERLAP) == pytest.approx(
        0.9811252243, abs=1e-9
    )


@pytest.mark.parametrize(("step", "tolerance"), [(1e-3, 1e-3), (1e-4, 1e-4)])
def test_clone_fidelity_argmin(step, tolerance):
    """
    test that the grid minimum sits at 1/sqrt(3).
    """
    argmin = clone_fidelity_argmin(step)

    assert abs(argmin - 0.5773502692) <= tolerance + 1e-6


def test_clone_fidelity_argmin_coarse(caplog):
    """
    test that a coarse grid still evaluates and warns.
    """
    assert clone_fidelity_argmin(0.5) == 0.5
    assert "too coarse" in caplog.text


def test_overlap_grid():
    """
    test that the grid starts at 0, ends at 1 and refuses a zero step.
    """
    grid = overlap_grid(0.3)

    np.testing.assert_allclose(grid, [0.0, 0.3, 0.6, 0.9, 1.0])
    with pytest.raises(InvalidInputError):
        overlap_grid(0.0)


def test_overlap_to_degrees():
    """
    test the angle of the most quantum pair.
    """
    assert overlap_to_degrees(MOST_QUANTUM_OVERLAP) == pytest.approx(54.7356, abs=1e-4)


def test_clone_try_identity():
    """
    test that doing nothing to the blank qubit scores (1 + x) / 2.
    """
    for x in (0.0, 0.4, 1.0):
        assert clone_try_fidelity(x, np.eye(4)) == pytest.approx((1.0 + x) / 2.0)


def test_clone_try_rejects_bad_unitaries():
    """
    test that non-unitary and wrongly sized matrices raise.
    """
    with pytest.raises(NonUnitaryError):
        clone_try_fidelity(0.5, 2.0 * np.eye(4))
    with pytest.raises(InvalidInputError):
        clone_try_fidelity(0.5, np.eye(3))
    with pytest.raises(InvalidInputError):
        check_unitary(np.ones((2, 3)))


def test_clone_dominance():
    """
    test that no random unitary beats the optimal cloning fidelity.
    """
    rng = make_generator(0, 42)
    worst_excess = -math.inf
    for x in np.linspace(0.0, 1.0, 21):
        bound = clone_fidelity(float(x))
        for _ in range(1000):
            value = clone_try_fidelity(float(x), haar_unitary(4, rng))
            worst_excess = max(worst_excess, value - bound)

    assert worst_excess <= 1e-9


def test_bounds_report(two_state_ensemble):
    """
    test that the report collects the bounds and every ordering holds.
    """
    ## Act ##
    report = bounds_report(two_state_ensemble)

    ## Assert ##
    assert report.dim == 2
    assert report.lambda1_rho == pytest.approx(0.8, abs=1e-12)
    assert report.pgm_route_residual <= 1e-9
    assert report.optimal_success_lower == pytest.approx(0.9, abs=1e-9)
    assert all(report.hierarchy_ok.values())
    assert set(report.to_dict()) >= {"lambda1_rho", "pgm_fidelity", "hierarchy_ok"}


def test_certificate_sandwich(two_state_ensemble):
    """
    test that values below the largest lower bound fail the sandwich.
    """
    ## Arrange ##
    report = bounds_report(two_state_ensemble)

    ## Act ##
    good = certificate_sandwich(report, report.pgm_fidelity, 0.9)
    bad = certificate_sandwich(report, 0.85, 0.9)

    ## Assert ##
    assert good["ok"]
    assert good["lower"] == pytest.approx(max(report.pgm_fidelity, 0.9))
    assert not bad["ok"]

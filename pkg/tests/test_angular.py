import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vortexlab import chip, fock, gaussian
from vortexlab.analysis import angular
from vortexlab.fock import PureState


@pytest.mark.parametrize("r", [0.0, 0.3, 0.6])
def test_circular_vortex_is_eigenstate(r):
    s = chip.make_cv_vortex(r, 1.0, 0)
    assert angular.lz_residual(s, 1.0) < 1e-9
    assert angular.lz_expectation(s) == pytest.approx(1.0, abs=1e-10)


def test_odd_selector_flips_eigenvalue():
    s = chip.make_cv_vortex(0.3, 1.0, 1)
    assert angular.lz_residual(s, -1.0) < 1e-9


@pytest.mark.parametrize("eta_prime", [0.0, 0.5, 2.0, 5.0])
def test_dv_elliptical_expectation(eta_prime):
    s = chip.make_dv_vortex(eta_prime)
    assert angular.lz_expectation(s) == pytest.approx(2 * eta_prime / (1 + eta_prime ** 2), abs=1e-14)


def test_product_of_squeezed_vacua_has_zero():
    sq = gaussian.squeezed_number_state(0, 0.3, 30)
    assert angular.lz_expectation(fock.tensor(sq, sq)) == pytest.approx(0.0, abs=1e-14)


def test_counting_dv_circular_is_deterministic():
    res = angular.lz_counting_measurement(chip.make_dv_vortex(1.0))
    assert res.probability(1) == pytest.approx(1.0, abs=1e-10)
    assert res.mean == pytest.approx(1.0, abs=1e-10)


def test_counting_vacuum():
    res = angular.lz_counting_measurement(fock.vacuum(2, 3))
    assert res.probability(0) == pytest.approx(1.0)
    assert res.mean == pytest.approx(0.0)


def test_counting_cv_circular_odd_support():
    res = angular.lz_counting_measurement(chip.make_cv_vortex(0.3, 1.0, 0, cutoff=24), floor=1e-15)
    assert res.mean == pytest.approx(1.0, abs=1e-10)
    assert np.all(res.differences % 2 == 1)
    assert res.probabilities.sum() == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_counting_mean_equals_expectation(seed):
    rng = np.random.default_rng(seed)
    s = PureState(rng.normal(size=(4, 5)) + 1j * rng.normal(size=(4, 5))).normalized()
    # lz_expectation drops weight pushed past the box, so compare on a padded copy.
    padded = s.with_cutoffs(9)
    res = angular.lz_counting_measurement(s)
    assert res.mean == pytest.approx(angular.lz_expectation(padded), abs=1e-10)


def test_needs_two_modes():
    with pytest.raises(ValueError):
        angular.lz_expectation(fock.vacuum(3, 1))
    with pytest.raises(ValueError):
        angular.lz_counting_measurement(fock.vacuum(1, 1))


def test_dv_circular_after_coupler_is_single_photon():
    out = gaussian.apply_coupler(chip.make_dv_vortex(1.0), (1, 2), math.pi / 2)
    assert abs(out.amplitude((1, 0))) == pytest.approx(1.0)

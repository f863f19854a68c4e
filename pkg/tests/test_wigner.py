import math

import numpy as np
import pytest

from vortexlab import chip, fock
from vortexlab.analysis import wigner
from vortexlab.analysis.field import Grid2D
from vortexlab.analysis.wigner import WignerSlice
from vortexlab.errors import UnsupportedAnalyticError

FOUR_OVER_PI2 = 0.405284734569351  # 4 / pi^2, 30-digit evaluation


def _probe():
    xs = np.linspace(-1.2, 1.2, 5)
    a1 = xs[None, :] * np.exp(0.7j) + 0.3j
    a2 = xs[:, None] * np.exp(-0.4j) - 0.2
    return np.broadcast_arrays(a1, a2)


def test_vacuum_and_single_photon_at_origin():
    assert wigner.wigner_numeric(fock.vacuum(2, 3), 0, 0) == pytest.approx(FOUR_OVER_PI2)
    one = fock.make_fock_state(2, 3, (1, 0))
    assert wigner.wigner_numeric(one, 0, 0) == pytest.approx(-FOUR_OVER_PI2)


def test_dv_circular_origin():
    assert wigner.wigner_vortex_analytic(0.0, 1.0, 0, 0) == pytest.approx(-FOUR_OVER_PI2, abs=1e-15)
    s = chip.make_cv_vortex(0.0, 1.0, 0, cutoff=4)
    assert wigner.wigner_numeric(s, 0, 0) == pytest.approx(-FOUR_OVER_PI2, abs=1e-14)


@pytest.mark.parametrize("r,eta_prime,n", [(0.0, 1.0, 0), (0.3, 1.0, 0), (0.3, 5.0, 0), (0.3, 1.0, 1), (0.5, 0.3, 0)])
def test_numeric_matches_closed_form(r, eta_prime, n):
    a1, a2 = _probe()
    state = chip.make_cv_vortex(r, eta_prime, n)
    num = wigner.wigner_numeric(state, a1, a2)
    ana = wigner.wigner_vortex_analytic(r, eta_prime, a1, a2, n)
    assert np.max(np.abs(num - ana)) < 1e-10


def test_outer_product_matches_paired_evaluation():
    state = chip.make_cv_vortex(0.3, 2.0)
    a1 = np.linspace(-1, 1, 4) * 1j
    a2 = np.linspace(-1.5, 1, 3) + 0.1j
    outer = wigner.wigner_numeric_outer(state, a1, a2)
    p1, p2 = np.meshgrid(a1, a2, indexing="xy")
    assert outer.shape == (3, 4)
    assert np.max(np.abs(outer - wigner.wigner_numeric(state, p1, p2))) < 1e-13


def test_slice_numeric_matches_analytic():
    slc = WignerSlice(grid=Grid2D(-2, 2, 21, -2, 2, 21))
    state = chip.make_cv_vortex(0.3, 1.0)
    num = wigner.wigner_slice_numeric(state, slc)
    ana = wigner.wigner_slice_analytic(0.3, 1.0, slc)
    assert np.max(np.abs(num - ana)) < 1e-10
    # Negative well around the origin.
    assert ana[10, 10] < 0


def test_decays_far_from_origin():
    assert abs(wigner.wigner_vortex_analytic(0.3, 1.0, 6.0, 5.0j)) < 1e-30


def test_normalization_four_dimensional():
    state = chip.make_cv_vortex(0.3, 1.0)
    axis = np.linspace(-4, 4, 41)
    re, im = np.meshgrid(axis, axis, indexing="ij")
    pts = (re + 1j * im).ravel()
    w = wigner.wigner_numeric_outer(state, pts, pts).reshape(41, 41, 41, 41)
    total = w
    for _ in range(4):
        total = np.trapezoid(total, axis, axis=0)
    assert total == pytest.approx(1.0, abs=1e-3)


def test_slice_wraps_phases():
    slc = WignerSlice(delta1=3 * math.pi / 2, delta2=-math.pi)
    assert slc.delta1 == pytest.approx(-math.pi / 2)
    assert slc.delta2 == pytest.approx(math.pi)


def test_analytic_rejects_complex_squeezing():
    with pytest.raises(UnsupportedAnalyticError):
        wigner.wigner_vortex_analytic(0.3, 1.0, 0, 0, theta_s=0.1)


def test_numeric_handles_complex_squeezing():
    # Rotating both modes by the squeeze phase maps theta_s back to a real squeeze.
    theta = 0.8
    state = chip.make_cv_vortex(0.3, 1.0, theta_s=theta)
    a1, a2 = _probe()
    num = wigner.wigner_numeric(state, a1, a2)
    rot = np.exp(-0.5j * theta)
    ana = wigner.wigner_vortex_analytic(0.3, 1.0, a1 * rot, a2 * rot)
    assert np.max(np.abs(num - ana)) < 1e-10


def test_predicate_at_origin_and_dv_form():
    for r in (0.0, 0.3, 1.0):
        for eta_prime in (0.2, 1.0, 5.0):
            assert wigner.negativity_predicate(r, eta_prime, 0.0, 0.0, 0.3, 1.1)
    rng = np.random.default_rng(1)
    a1, a2 = rng.uniform(0, 1.2, 500), rng.uniform(0, 1.2, 500)
    d1, d2 = rng.uniform(-math.pi, math.pi, 2)
    got = wigner.negativity_predicate(0.0, 1.0, a1, a2, d1, d2)
    dv = a1 ** 2 + a2 ** 2 - 2 * a1 * a2 * math.sin(d1 - d2) < 0.5
    assert np.array_equal(got, dv)


def test_predicate_slice_form():
    rng = np.random.default_rng(2)
    r, eta_prime = 0.3, 2.0
    a1, a2 = rng.uniform(-1.5, 1.5, 1000), rng.uniform(-1.5, 1.5, 1000)
    got = wigner.negativity_predicate(r, eta_prime, a1, a2, math.pi / 2, 0.0)
    lhs = (a1 * math.exp(r)) ** 2 + eta_prime ** 2 * (a2 * math.exp(-r)) ** 2 - 2 * eta_prime * a1 * a2
    assert np.array_equal(got, lhs < (1 + eta_prime ** 2) / 4)


@pytest.mark.parametrize("r,eta_prime,n", [(0.0, 1.0, 0), (0.3, 1.0, 0), (0.3, 5.0, 1), (0.6, 0.5, 0)])
def test_predicate_matches_sign(r, eta_prime, n):
    rng = np.random.default_rng(3)
    m = 10_000
    mag1, mag2 = rng.uniform(-1.5, 1.5, m), rng.uniform(-1.5, 1.5, m)
    d1, d2 = rng.uniform(-math.pi, math.pi, m), rng.uniform(-math.pi, math.pi, m)
    w = wigner.wigner_vortex_analytic(r, eta_prime, mag1 * np.exp(1j * d1), mag2 * np.exp(1j * d2), n)
    pred = wigner.negativity_predicate(r, eta_prime, mag1, mag2, d1, d2, n)
    clear = np.abs(w) > 1e-12
    assert np.array_equal(pred[clear], (w < 0)[clear])

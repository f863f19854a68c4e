import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vortexlab import fock
from vortexlab.errors import ImpossibleHeraldError
from vortexlab.fock import HeraldPattern, PureState


def _random_state(shape, seed):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    return PureState(amps).normalized()


def test_fock_state_has_single_amplitude():
    s = fock.make_fock_state(2, 3, (1, 2))
    assert s.cutoffs == (3, 3)
    assert s.amplitude((1, 2)) == 1
    assert s.norm2 == pytest.approx(1.0)


def test_fock_state_rejects_occupation_above_cutoff():
    with pytest.raises(ValueError):
        fock.make_fock_state(1, 2, (3,))


def test_per_mode_cutoffs():
    s = fock.vacuum(3, (4, 1, 2))
    assert s.amplitudes.shape == (5, 2, 3)
    assert s.cutoff == 4


def test_ladder_operators_on_number_states():
    s = fock.make_fock_state(1, 4, (2,))
    down = fock.apply_ladder(s, 1, "annihilate")
    up = fock.apply_ladder(s, 1, "create")
    assert down.amplitude((1,)) == pytest.approx(math.sqrt(2))
    assert up.amplitude((3,)) == pytest.approx(math.sqrt(3))


def test_number_expectation():
    amps = np.zeros((3, 3), dtype=complex)
    amps[1, 0] = amps[0, 2] = 1 / math.sqrt(2)
    s = PureState(amps)
    assert fock.number_expectation(s, 1) == pytest.approx(0.5)
    assert fock.number_expectation(s, 2) == pytest.approx(1.0)


def test_tensor_and_inner_product():
    a = _random_state((3,), 1)
    b = _random_state((4,), 2)
    ab = fock.tensor(a, b)
    assert ab.amplitudes.shape == (3, 4)
    assert fock.inner_product(ab, ab) == pytest.approx(1.0)
    assert fock.fidelity(ab, ab) == pytest.approx(1.0)


def test_project_pattern_probability_and_order():
    amps = np.zeros((2, 2, 2), dtype=complex)
    amps[1, 0, 1] = 0.6
    amps[0, 1, 0] = 0.8
    s = PureState(amps)
    out, p = fock.project_pattern(s, HeraldPattern({2: 0}))
    assert p == pytest.approx(0.36)
    assert out.modes == 2
    assert abs(out.amplitude((1, 1))) == pytest.approx(1.0)


def test_project_pattern_impossible():
    s = fock.vacuum(2, 2)
    with pytest.raises(ImpossibleHeraldError):
        fock.project_pattern(s, HeraldPattern({1: 1}))
    with pytest.raises(ImpossibleHeraldError):
        fock.project_pattern(s, HeraldPattern({1: 5}))


def test_herald_pattern_rejects_repeats():
    with pytest.raises(ValueError):
        HeraldPattern([(1, 0), (1, 1)])


def test_fix_gauge_makes_first_amplitude_positive():
    s = PureState(np.array([0, 1j, 1], dtype=complex) / math.sqrt(2))
    g = fock.fix_gauge(s)
    assert g.amplitude((1,)) == pytest.approx(1 / math.sqrt(2))
    assert g.amplitude((2,)) == pytest.approx(-1j / math.sqrt(2))


def test_reduced_density_of_bell_state():
    amps = np.zeros((2, 2), dtype=complex)
    amps[0, 1] = amps[1, 0] = 1 / math.sqrt(2)
    rho = fock.reduced_density(PureState(amps), [1])
    assert rho.is_hermitian()
    assert rho.trace == pytest.approx(1.0)
    assert rho.purity == pytest.approx(0.5)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_schmidt_reconstructs_state(seed):
    s = _random_state((3, 4), seed)
    dec = fock.schmidt_decompose(s, [1])
    assert np.sum(dec.coefficients ** 2) == pytest.approx(1.0)
    rebuilt = np.einsum("k,ki,kj->ij", dec.coefficients, dec.left_basis, dec.right_basis)
    assert np.allclose(rebuilt, s.amplitudes, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_schmidt_spectrum_matches_reduced_density(seed):
    s = _random_state((3, 3), seed)
    dec = fock.schmidt_decompose(s, [1])
    evals = np.sort(np.linalg.eigvalsh(fock.reduced_density(s, [1]).matrix))[::-1]
    assert np.allclose(dec.coefficients ** 2, evals, atol=1e-12)


def test_schmidt_rank_of_product_state():
    s = fock.tensor(_random_state((3,), 4), _random_state((3,), 5))
    assert fock.schmidt_decompose(s, [1]).rank == 1


def test_with_cutoffs_pads_and_truncates():
    s = _random_state((3, 3), 7)
    padded = s.with_cutoffs(4)
    assert padded.amplitudes.shape == (5, 5)
    assert np.allclose(padded.with_cutoffs(2).amplitudes, s.amplitudes)


def test_state_is_immutable():
    s = fock.vacuum(1, 2)
    with pytest.raises(ValueError):
        s.amplitudes[0] = 0

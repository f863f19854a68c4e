"""Abstract angular momentum ``L_z = -i(a1^dag a2 - a1 a2^dag)`` and its measurement."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from vortexlab import fock, gaussian
from vortexlab.fock import PureState


def _require_two_modes(state: PureState):
    if state.modes != 2:
        raise ValueError("angular-momentum diagnostics need a two-mode state")


def lz_apply(state: PureState) -> np.ndarray:
    """Raw amplitudes of ``L_z |psi>`` (weight pushed past the cutoff is dropped)."""
    _require_two_modes(state)
    up1 = fock.apply_ladder(fock.apply_ladder(state, 2, "annihilate"), 1, "create")
    up2 = fock.apply_ladder(fock.apply_ladder(state, 1, "annihilate"), 2, "create")
    return -1j * (up1.amplitudes - up2.amplitudes)


def lz_expectation(state: PureState) -> float:
    """``<psi|L_z|psi>`` for a normalized state.

    Raises:
        ArithmeticError: the expectation has an imaginary part above 1e-12.
    """
    val = np.vdot(state.amplitudes, lz_apply(state)) / state.norm2
    if abs(val.imag) > 1e-12:
        raise ArithmeticError(f"L_z expectation is not real: {val}")
    return float(val.real)


def lz_residual(state: PureState, eigenvalue: float = 1.0) -> float:
    """``|| (L_z - eigenvalue) |psi> ||`` for the normalized state."""
    psi = state.amplitudes / math.sqrt(state.norm2)
    scaled = PureState(psi)
    return float(np.linalg.norm(lz_apply(scaled) - eigenvalue * psi))


@dataclass(frozen=True)
class CountingResult:
    """Photon-number-difference statistics behind a balanced coupler.

    Attributes:
        differences: sorted values of ``n1' - n2'`` with non-negligible weight.
        probabilities: matching probabilities.
        mean: ``<n1' - n2'>``.
    """

    differences: np.ndarray
    probabilities: np.ndarray
    mean: float

    def probability(self, difference: int) -> float:
        hit = np.nonzero(self.differences == difference)[0]
        return float(self.probabilities[hit[0]]) if hit.size else 0.0


def lz_counting_measurement(state: PureState, floor: float = 0.0) -> CountingResult:
    """Send the two modes through a 3 dB coupler and count ``n1' - n2'``.

    The state is first embedded in a box large enough to hold every photon
    in either output, so the coupler acts exactly. The mean equals
    ``<L_z>`` of the input.
    """
    _require_two_modes(state)
    total = sum(state.cutoffs)
    wide = state.with_cutoffs(total).normalized()
    out = gaussian.apply_coupler(wide, (1, 2), math.pi / 2)
    probs = np.abs(out.amplitudes) ** 2
    n = np.arange(total + 1)
    diff = n[:, None] - n[None, :]
    values = np.arange(-total, total + 1)
    dist = np.bincount((diff + total).ravel(), weights=probs.ravel(), minlength=2 * total + 1)
    keep = dist > floor
    mean = float(np.dot(values, dist))
    return CountingResult(values[keep], dist[keep], mean)

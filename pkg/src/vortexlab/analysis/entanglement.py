"""Entanglement of two-mode pure states: numeric partial transpose and closed forms."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from vortexlab import fock, gaussian
from vortexlab.errors import ConsistencyError, UndefinedRatioError
from vortexlab.fock import PureState

SERIES_TOL = 1e-14
CONSISTENCY_TOL = 1e-8


@dataclass(frozen=True)
class EntanglementReport:
    """Log-negativity of a pure two-mode state from two independent routes.

    Attributes:
        log_negativity: ``log2(1 + 2 N)`` from the partial-transpose spectrum.
        negativity: ``N``, the modulus of the negative eigenvalues' sum.
        schmidt_coefficients: singular values of the amplitude matrix.
        schmidt_log_negativity: ``2 log2(sum c)``.
        ratio_to_tmsv: optional ratio to the two-mode squeezed vacuum value.
    """

    log_negativity: float
    negativity: float
    schmidt_coefficients: np.ndarray
    schmidt_log_negativity: float
    ratio_to_tmsv: float | None = None


def partial_transpose(state: PureState) -> np.ndarray:
    """``rho^PT`` of ``|psi><psi|`` with mode-2 indices transposed."""
    psi = state.amplitudes / math.sqrt(state.norm2)
    d1, d2 = psi.shape
    rho = np.einsum("ab,cd->abcd", psi, np.conj(psi))
    return rho.transpose(0, 3, 2, 1).reshape(d1 * d2, d1 * d2)


def logneg_numeric(state: PureState, check: bool = True) -> EntanglementReport:
    """Log-negativity by diagonalizing the partial transpose.

    Args:
        check: compare against the Schmidt route and raise on disagreement.

    Raises:
        ConsistencyError: the two routes differ by more than 1e-8.
    """
    if state.modes != 2:
        raise ValueError("logneg_numeric needs a two-mode state")
    evals = np.linalg.eigvalsh(partial_transpose(state))
    neg = float(-evals[evals < 0].sum())
    e_pt = math.log2(1 + 2 * neg)
    coeffs = fock.schmidt_decompose(state, [1]).coefficients
    e_s = 2 * math.log2(float(coeffs.sum()))
    if check and abs(e_pt - e_s) > CONSISTENCY_TOL:
        raise ConsistencyError(f"partial transpose gives {e_pt}, Schmidt sum gives {e_s}")
    return EntanglementReport(e_pt, neg, coeffs, e_s)


def elliptical_basis_matrix(Phi: float, n: int = 0) -> np.ndarray:
    """``[[cos P, -i s sin P], [sin P, i s cos P]]`` with ``s = (-1)^n``."""
    s = -1.0 if n % 2 else 1.0
    c, si = math.cos(Phi), math.sin(Phi)
    return np.array([[c, -1j * s * si], [si, 1j * s * c]])


def to_elliptical_basis(state: PureState, Phi: float, n: int = 0, cutoff: int | None = None) -> PureState:
    """Re-express a two-mode state in the modes ``b = U a`` of :func:`elliptical_basis_matrix`.

    The state is embedded in a box that holds every photon in either new
    mode, so the change of basis is exact; it is then optionally truncated
    to ``cutoff`` per mode and renormalized, with the lost weight added to
    ``leakage``.
    """
    total = sum(state.cutoffs)
    wide = state.with_cutoffs(total)
    # a_j^dag = sum_k U[k, j] b_k^dag
    out = gaussian.apply_passive(wide, (1, 2), elliptical_basis_matrix(Phi, n))
    if cutoff is None:
        return out
    cut = out.with_cutoffs(cutoff)
    lost = max(0.0, 1.0 - cut.norm2 / out.norm2)
    return PureState(cut.amplitudes, out.leakage + lost).normalized()


def elliptical_vortex(r: float, Phi: float, n: int = 0, cutoff: int | None = None,
                      work_cutoff: int | None = None) -> PureState:
    """Vortex ``cos P |1z 0z> + (-1)^n i sin P |0z 1z>`` in its elliptical basis.

    Built in the original modes at ``work_cutoff`` (default from the leakage
    rule), rotated exactly and truncated to ``cutoff``.
    """
    if work_cutoff is None:
        work_cutoff = gaussian.default_cutoff(r)
    one = gaussian.squeezed_number_state(1, r, work_cutoff)
    zero = gaussian.squeezed_number_state(0, r, work_cutoff)
    s = -1.0 if n % 2 else 1.0
    amps = math.cos(Phi) * np.multiply.outer(one.amplitudes, zero.amplitudes)
    amps = amps + s * 1j * math.sin(Phi) * np.multiply.outer(zero.amplitudes, one.amplitudes)
    state = PureState(amps, one.leakage + zero.leakage).normalized()
    return to_elliptical_basis(state, Phi, n, cutoff)


def _series_terms(x: float):
    """``sqrt(n+1) tanh^n(x)`` until a term drops below the series tolerance."""
    t = abs(math.tanh(x))
    n = 0
    term = 1.0
    while True:
        yield term
        n += 1
        term = math.sqrt(n + 1) * t**n
        if term < SERIES_TOL:
            return


def schmidt_sum_analytic(r: float, Phi: float) -> float:
    """``sum_n |c_n(r, Phi)|``."""
    x = r * math.sin(2 * Phi)
    return math.fsum(_series_terms(x)) / math.cosh(x) ** 2


def logneg_analytic(r: float, Phi: float) -> float:
    """``2 log2[cosh^-2(x) (1 + sum_{n>=1} sqrt(n+1) |tanh^n x|)]`` with ``x = r sin 2Phi``."""
    if r < 0:
        raise ValueError("r must be non-negative")
    return max(0.0, 2 * math.log2(schmidt_sum_analytic(r, Phi)))


def schmidt_coeffs_analytic(r: float, Phi: float, count: int) -> np.ndarray:
    """``c_n = sqrt(n+1) tanh^n(x) / cosh^2(x)`` for ``n < count``, ``x = r sin 2Phi``."""
    if count < 1:
        raise ValueError("count must be at least 1")
    x = r * math.sin(2 * Phi)
    n = np.arange(count)
    t = math.tanh(x)
    with np.errstate(invalid="ignore"):
        powers = np.where(n == 0, 1.0, t ** n)
    return np.sqrt(n + 1) * powers / math.cosh(x) ** 2


def tmsv_logneg(r: float) -> float:
    """Log-negativity of the two-mode squeezed vacuum, ``2 log2(e^r)``."""
    return 2 * r / math.log(2)


def entanglement_ratio(r: float, Phi: float) -> float:
    """Vortex log-negativity relative to the two-mode squeezed vacuum at equal ``r``.

    Raises:
        UndefinedRatioError: ``r = 0``, where the baseline vanishes.
    """
    if r <= 0:
        raise UndefinedRatioError("the two-mode squeezed vacuum has no entanglement at r = 0")
    return logneg_analytic(r, Phi) / tmsv_logneg(r)


def entanglement_gain(r: float, Phi: float) -> float:
    """The literal expression ``(sum_n c_n(r, Phi) e^{-r})^2``.

    Raises:
        UndefinedRatioError: ``r = 0``.
    """
    if r <= 0:
        raise UndefinedRatioError("the ratio is undefined at r = 0")
    return (schmidt_sum_analytic(r, Phi) * math.exp(-r)) ** 2

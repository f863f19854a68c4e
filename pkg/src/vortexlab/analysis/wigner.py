"""Wigner functions of two-mode states.

Phase-space points are coherent amplitudes ``alpha = (E + iP)/sqrt2``, so the
vacuum Wigner function is ``(2/pi)^2 exp(-2|alpha_1|^2 - 2|alpha_2|^2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from vortexlab import kernels
from vortexlab.analysis.field import Grid2D
from vortexlab.errors import UnsupportedAnalyticError
from vortexlab.fock import PureState

_NORM = (2.0 / math.pi) ** 2


def _wrap(delta: float) -> float:
    t = math.remainder(delta, 2 * math.pi)
    return math.pi if t == -math.pi else t


@dataclass(frozen=True)
class WignerSlice:
    """Two-dimensional cut through the four-dimensional phase space.

    ``alpha_1 = x e^{i delta1}`` and ``alpha_2 = y e^{i delta2}`` with ``x``
    and ``y`` the signed grid coordinates.
    """

    delta1: float = math.pi / 2
    delta2: float = 0.0
    grid: Grid2D = Grid2D()

    def __post_init__(self):
        object.__setattr__(self, "delta1", _wrap(self.delta1))
        object.__setattr__(self, "delta2", _wrap(self.delta2))

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        """Complex amplitudes along x (mode 1) and y (mode 2)."""
        return (self.grid.xs * np.exp(1j * self.delta1), self.grid.ys * np.exp(1j * self.delta2))

    def points(self) -> tuple[np.ndarray, np.ndarray]:
        """``(alpha1, alpha2)`` arrays of shape ``(y_steps, x_steps)``."""
        a1, a2 = self.axes()
        return np.meshgrid(a1, a2, indexing="xy")


def squeeze_argument(alpha, r: float, theta_s: float = 0.0):
    """``alpha cosh r - alpha^* e^{i theta_s} sinh r``."""
    alpha = np.asarray(alpha, dtype=complex)
    return alpha * math.cosh(r) - np.conj(alpha) * np.exp(1j * theta_s) * math.sinh(r)


def wigner_vortex_analytic(r: float, eta_prime: float, alpha1, alpha2, n: int = 0,
                           theta_s: float = 0.0) -> np.ndarray:
    """Closed-form Wigner function of the (squeezed) elliptical vortex.

    The unsqueezed vortex ``(|10> + (-1)^n i eta'|01>)/sqrt(1 + eta'^2)`` has
    ``4/(pi^2 (1 + eta'^2)) e^{-2(|a1|^2 + |a2|^2)}
    [(4|a1|^2 - 1) + eta'^2 (4|a2|^2 - 1) + 8 eta' (-1)^n Im(a1^* a2)]``;
    squeezing enters through ``a -> a cosh r - a^* sinh r``. The cross term
    equals ``-8 eta' |a1||a2| sin(delta1 - delta2)`` for ``n`` even.

    Raises:
        UnsupportedAnalyticError: complex squeezing.
    """
    if theta_s != 0:
        raise UnsupportedAnalyticError("the closed-form Wigner function needs real squeezing")
    t1 = squeeze_argument(alpha1, r)
    t2 = squeeze_argument(alpha2, r)
    q1, q2 = np.abs(t1) ** 2, np.abs(t2) ** 2
    sign = -1.0 if n % 2 else 1.0
    bracket = (4 * q1 - 1) + eta_prime**2 * (4 * q2 - 1) + 8 * eta_prime * sign * np.imag(np.conj(t1) * t2)
    return 4.0 / (math.pi**2 * (1 + eta_prime**2)) * np.exp(-2 * (q1 + q2)) * bracket


def wigner_numeric(state: PureState, alpha1, alpha2) -> np.ndarray:
    """Displaced-parity Wigner function at paired points.

    ``W = (2/pi)^2 <psi| D(a) P D(a)^dag |psi>`` with ``D(a) P D(a)^dag = D(2a) P``
    per mode. The displacement matrix elements are exact inside the box, so
    no weight is lost to truncation.
    """
    if state.modes != 2:
        raise ValueError("wigner_numeric needs a two-mode state")
    a1 = np.asarray(alpha1, dtype=complex)
    a2 = np.asarray(alpha2, dtype=complex)
    a1, a2 = np.broadcast_arrays(a1, a2)
    psi = state.amplitudes / math.sqrt(state.norm2)
    vals = kernels.displaced_parity(psi, 2 * a1.ravel(), 2 * a2.ravel())
    return _NORM * vals.reshape(a1.shape)


def wigner_numeric_outer(state: PureState, alpha1, alpha2) -> np.ndarray:
    """Displaced-parity Wigner function on the outer product of two point lists.

    Returns:
        array of shape ``(len(alpha2), len(alpha1))``.
    """
    psi = state.amplitudes / math.sqrt(state.norm2)
    d1, d2 = psi.shape
    a1 = np.asarray(alpha1, dtype=complex).ravel()
    a2 = np.asarray(alpha2, dtype=complex).ravel()
    signed = psi * np.outer((-1.0) ** np.arange(d1), (-1.0) ** np.arange(d2))
    m1 = kernels.displacement_matrices(2 * a1, d1)
    m2 = kernels.displacement_matrices(2 * a2, d2)
    # W[i2, i1] = sum conj(psi)[m, l] m1[i1][m, k] signed[k, j] m2[i2][l, j]
    left = np.einsum("pmk,ml->pkl", m1, np.conj(psi)).reshape(a1.size, -1)
    right = np.einsum("kj,qlj->qkl", signed, m2).reshape(a2.size, -1)
    return _NORM * (right @ left.T).real


def wigner_slice_numeric(state: PureState, slc: WignerSlice) -> np.ndarray:
    a1, a2 = slc.axes()
    return wigner_numeric_outer(state, a1, a2)


def wigner_slice_analytic(r: float, eta_prime: float, slc: WignerSlice, n: int = 0) -> np.ndarray:
    p1, p2 = slc.points()
    return wigner_vortex_analytic(r, eta_prime, p1, p2, n)


def negativity_predicate(r: float, eta_prime: float, alpha1, alpha2, delta1: float, delta2: float,
                         n: int = 0):
    """True where the vortex Wigner function is negative.

    ``alpha1`` and ``alpha2`` are (signed) magnitudes; the points are
    ``alpha_j e^{i delta_j}``. The condition is the sign of the bracket of
    :func:`wigner_vortex_analytic` at the squeezed arguments,
    ``|t1|^2 + eta'^2 |t2|^2 + 2 eta' (-1)^n Im(t1^* t2) < (1 + eta'^2)/4``.
    On the slice ``delta1 = pi/2, delta2 = 0`` it reads
    ``|a1 e^r|^2 + eta'^2 |a2 e^-r|^2 - 2 eta' |a1||a2| < (1 + eta'^2)/4``.
    """
    t1 = squeeze_argument(np.asarray(alpha1) * np.exp(1j * delta1), r)
    t2 = squeeze_argument(np.asarray(alpha2) * np.exp(1j * delta2), r)
    sign = -1.0 if n % 2 else 1.0
    lhs = np.abs(t1) ** 2 + eta_prime**2 * np.abs(t2) ** 2 + 2 * eta_prime * sign * np.imag(np.conj(t1) * t2)
    return lhs < (1 + eta_prime**2) / 4

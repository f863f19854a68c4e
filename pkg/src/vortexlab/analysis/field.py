"""Field-strength wavefunctions of two-mode states.

The field strength of a mode is the eigenvalue ``E`` of ``(a + a^dag)/sqrt2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from vortexlab import kernels
from vortexlab.errors import UnsupportedAnalyticError
from vortexlab.fock import PureState

PHASE_ZERO_TOL = 1e-10


@dataclass(frozen=True)
class Grid2D:
    """Rectangular grid; values are laid out row-major with ``y`` outer."""

    x_min: float = -4.0
    x_max: float = 4.0
    x_steps: int = 201
    y_min: float = -4.0
    y_max: float = 4.0
    y_steps: int = 201

    def __post_init__(self):
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise ValueError("grid needs max > min on both axes")
        if self.x_steps < 2 or self.y_steps < 2:
            raise ValueError("grid needs at least two steps per axis")

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.x_steps)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.y_steps)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.y_steps, self.x_steps)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """``(X, Y)`` arrays of shape ``(y_steps, x_steps)``."""
        return np.meshgrid(self.xs, self.ys, indexing="xy")

    @property
    def cell_area(self) -> float:
        return ((self.x_max - self.x_min) / (self.x_steps - 1)) * ((self.y_max - self.y_min) / (self.y_steps - 1))

    @classmethod
    def parse(cls, text: str) -> "Grid2D":
        """Parse ``xmin:xmax:steps[,ymin:ymax:steps]``; one axis spec is reused for both."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) not in (1, 2):
            raise ValueError(f"bad grid {text!r}")
        axes = []
        for p in parts:
            fields = p.split(":")
            if len(fields) != 3:
                raise ValueError(f"bad grid axis {p!r}, expected min:max:steps")
            axes.append((float(fields[0]), float(fields[1]), int(fields[2])))
        if len(axes) == 1:
            axes.append(axes[0])
        (x0, x1, nx), (y0, y1, ny) = axes
        return cls(x0, x1, nx, y0, y1, ny)


def field_wavefunction(state: PureState, grid: Grid2D) -> np.ndarray:
    """``Psi(E1, E2) = sum c_nm psi_n(E1) psi_m(E2)`` on the grid.

    Returns:
        complex array of shape ``(y_steps, x_steps)``; ``E1`` runs along x.
    """
    if state.modes != 2:
        raise ValueError("field_wavefunction needs a two-mode state")
    c = state.amplitudes
    h1 = kernels.hermite_functions(grid.xs, c.shape[0] - 1)
    h2 = kernels.hermite_functions(grid.ys, c.shape[1] - 1)
    return h2.T @ c.T @ h1


def vortex_wavefunction_analytic(r: float, eta_prime: float, n: int, grid: Grid2D,
                                 theta_s: float = 0.0) -> np.ndarray:
    """Closed-form vortex wavefunction for real squeezing.

    ``sqrt(2 / (pi (1 + eta'^2) e^{4r})) (E1 + (-1)^n i eta' E2) exp(-(E1^2 + E2^2) / (2 e^{2r}))``

    Raises:
        UnsupportedAnalyticError: ``theta_s`` is not zero.
    """
    if theta_s != 0:
        raise UnsupportedAnalyticError("the closed-form wavefunction needs real squeezing")
    e1, e2 = grid.mesh()
    norm = math.sqrt(2.0 / (math.pi * (1 + eta_prime**2) * math.exp(4 * r)))
    sign = -1.0 if n % 2 else 1.0
    return norm * (e1 + sign * 1j * eta_prime * e2) * np.exp(-(e1**2 + e2**2) / (2 * math.exp(2 * r)))


def density_and_phase(field: np.ndarray, zero_tol: float = PHASE_ZERO_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Probability ``|Psi|^2`` and phase ``arg Psi`` in (-pi, pi].

    The phase is NaN where ``|Psi|`` is below ``zero_tol`` times its maximum,
    since it is undefined at nodes.
    """
    field = np.asarray(field, dtype=complex)
    prob = np.abs(field) ** 2
    phase = np.angle(field)
    phase = np.where(phase == -np.pi, np.pi, phase)
    mag = np.abs(field)
    phase = np.where(mag <= zero_tol * mag.max(initial=0.0), np.nan, phase)
    return prob, phase


def integrate(values: np.ndarray, grid: Grid2D) -> float:
    """Trapezoid integral of grid values."""
    return float(np.trapezoid(np.trapezoid(values, grid.xs, axis=1), grid.ys))

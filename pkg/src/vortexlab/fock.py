"""Truncated multimode Fock-space states.

A :class:`PureState` stores a complex amplitude tensor whose axis ``j``
holds the photon number of mode ``j + 1`` (mode 1 is the outermost, row-major
index). Every operation returns a new state; the amplitude arrays are marked
read-only so states can be shared between threads freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from vortexlab.errors import CutoffError, ImpossibleHeraldError, ShapeMismatchError

HERALD_MIN_PROBABILITY = 1e-15


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class PureState:
    """Pure state of ``modes`` bosonic modes in a truncated Fock basis.

    Attributes:
        amplitudes: complex tensor of shape ``(N_1 + 1, ..., N_M + 1)``.
        leakage: norm squared discarded by truncation, summed over the
            non-norm-preserving steps that produced this state.
    """

    amplitudes: np.ndarray
    leakage: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _frozen(self.amplitudes))
        if self.amplitudes.ndim == 0:
            raise ValueError("a state needs at least one mode")
        if self.leakage < 0:
            raise ValueError("leakage must be non-negative")

    @property
    def modes(self) -> int:
        return self.amplitudes.ndim

    @property
    def cutoffs(self) -> tuple[int, ...]:
        return tuple(d - 1 for d in self.amplitudes.shape)

    @property
    def cutoff(self) -> int:
        """Largest per-mode cutoff (equal to every cutoff for uniform boxes)."""
        return max(self.cutoffs)

    @property
    def norm2(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def normalized(self) -> "PureState":
        n2 = self.norm2
        if n2 == 0:
            raise ValueError("cannot normalize the zero vector")
        return PureState(self.amplitudes / math.sqrt(n2), self.leakage)

    def amplitude(self, occupation: Sequence[int]) -> complex:
        return complex(self.amplitudes[tuple(occupation)])

    def with_cutoffs(self, cutoffs: int | Sequence[int]) -> "PureState":
        """Zero-pad or truncate every mode to new cutoffs (no renormalization)."""
        cutoffs = _cutoff_tuple(cutoffs, self.modes)
        out = np.zeros(tuple(c + 1 for c in cutoffs), dtype=complex)
        src = tuple(slice(0, min(a, b) + 1) for a, b in zip(self.cutoffs, cutoffs))
        out[src] = self.amplitudes[src]
        return PureState(out, self.leakage)

    def __repr__(self):
        return f"PureState(modes={self.modes}, cutoffs={self.cutoffs}, leakage={self.leakage:.2e})"


@dataclass(frozen=True)
class HeraldPattern:
    """Photon counts on a subset of modes (1-based mode indices)."""

    assignments: tuple[tuple[int, int], ...]

    def __init__(self, assignments):
        if isinstance(assignments, dict):
            assignments = assignments.items()
        pairs = tuple((int(m), int(c)) for m, c in assignments)
        modes = [m for m, _ in pairs]
        if len(set(modes)) != len(modes):
            raise ValueError("herald pattern repeats a mode")
        if any(c < 0 for _, c in pairs):
            raise ValueError("photon counts must be non-negative")
        object.__setattr__(self, "assignments", pairs)

    @property
    def modes(self) -> tuple[int, ...]:
        return tuple(m for m, _ in self.assignments)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Density operator on a product of truncated modes.

    ``matrix`` is indexed by the row-major flattening of ``dims``.
    """

    dims: tuple[int, ...]
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    @property
    def purity(self) -> float:
        return float(np.vdot(self.matrix, self.matrix).real)

    def is_hermitian(self, atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.matrix, self.matrix.conj().T, atol=atol))


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    coefficients: np.ndarray
    left_basis: np.ndarray
    right_basis: np.ndarray

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.coefficients > 1e-12))


def _cutoff_tuple(cutoff, modes):
    if isinstance(cutoff, (int, np.integer)):
        return (int(cutoff),) * modes
    cutoff = tuple(int(c) for c in cutoff)
    if len(cutoff) != modes:
        raise ValueError(f"expected {modes} cutoffs, got {len(cutoff)}")
    return cutoff


def _axis(state: PureState, mode: int) -> int:
    if not 1 <= mode <= state.modes:
        raise IndexError(f"mode {mode} outside 1..{state.modes}")
    return mode - 1


def make_fock_state(modes: int, cutoff: int | Sequence[int], occupation: Sequence[int]) -> PureState:
    """Basis state ``|n_1 ... n_M>`` with unit amplitude.

    Args:
        modes: number of modes.
        cutoff: maximum photon number, either shared or one per mode.
        occupation: photon number of each mode.

    Raises:
        CutoffError: an occupation exceeds its mode's cutoff.
    """
    if modes < 1:
        raise ValueError("modes must be positive")
    cutoffs = _cutoff_tuple(cutoff, modes)
    if any(c < 0 for c in cutoffs):
        raise ValueError("cutoffs must be non-negative")
    occupation = tuple(int(n) for n in occupation)
    if len(occupation) != modes:
        raise ValueError(f"occupation has {len(occupation)} entries for {modes} modes")
    for n, c in zip(occupation, cutoffs):
        if n < 0:
            raise ValueError("photon numbers must be non-negative")
        if n > c:
            raise CutoffError(f"occupation {n} exceeds cutoff {c}")
    amps = np.zeros(tuple(c + 1 for c in cutoffs), dtype=complex)
    amps[occupation] = 1.0
    return PureState(amps)


def vacuum(modes: int, cutoff: int | Sequence[int]) -> PureState:
    return make_fock_state(modes, cutoff, (0,) * modes)


def from_amplitudes(amplitudes, normalize: bool = True) -> PureState:
    state = PureState(np.asarray(amplitudes, dtype=complex))
    return state.normalized() if normalize else state


def apply_single_mode(state: PureState, mode: int, matrix: np.ndarray) -> np.ndarray:
    """Contract a ``(d, d)`` operator into one axis; returns the raw tensor."""
    ax = _axis(state, mode)
    out = np.tensordot(matrix, state.amplitudes, axes=([1], [ax]))
    return np.moveaxis(out, 0, ax)


def apply_ladder(state: PureState, mode: int, kind: str) -> PureState:
    """Apply ``a`` (``kind='annihilate'``) or ``a^dag`` (``'create'``) to one mode.

    The result is not renormalized. Creation from the top level leaves the
    box; that weight is added to ``leakage``.
    """
    ax = _axis(state, mode)
    psi = np.moveaxis(state.amplitudes, ax, 0)
    d = psi.shape[0]
    sq = np.sqrt(np.arange(d, dtype=float))
    shape = (d,) + (1,) * (psi.ndim - 1)
    out = np.zeros_like(psi)
    leak = 0.0
    if kind == "annihilate":
        out[:-1] = psi[1:] * sq[1:].reshape((d - 1,) + shape[1:])
    elif kind == "create":
        out[1:] = psi[:-1] * sq[1:].reshape((d - 1,) + shape[1:])
        leak = float(d * np.vdot(psi[-1], psi[-1]).real)
    else:
        raise ValueError("kind must be 'create' or 'annihilate'")
    return PureState(np.moveaxis(out, 0, ax), state.leakage + leak)


def number_expectation(state: PureState, mode: int) -> float:
    ax = _axis(state, mode)
    probs = np.abs(state.amplitudes) ** 2
    other = tuple(i for i in range(state.modes) if i != ax)
    marginal = probs.sum(axis=other)
    return float(np.dot(np.arange(marginal.size), marginal) / probs.sum())


def inner_product(a: PureState, b: PureState) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    if a.amplitudes.shape != b.amplitudes.shape:
        raise ShapeMismatchError(f"shapes {a.amplitudes.shape} and {b.amplitudes.shape} differ")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: PureState, b: PureState) -> float:
    """``|<a|b>|^2`` for normalized inputs."""
    return abs(inner_product(a, b)) ** 2 / (a.norm2 * b.norm2)


def tensor(*states: PureState) -> PureState:
    out = states[0].amplitudes
    leak = states[0].leakage
    for s in states[1:]:
        out = np.multiply.outer(out, s.amplitudes)
        leak += s.leakage
    return PureState(out, leak)


def project_pattern(state: PureState, pattern: HeraldPattern) -> tuple[PureState, float]:
    """Project onto photon counts on some modes and renormalize the rest.

    Args:
        state: normalized input state.
        pattern: the herald; its modes are removed from the output, the
            remaining modes keep their order.

    Returns:
        ``(conditional_state, probability)``.

    Raises:
        ImpossibleHeraldError: probability below 1e-15.
    """
    index = [slice(None)] * state.modes
    for mode, count in pattern.assignments:
        ax = _axis(state, mode)
        if count > state.cutoffs[ax]:
            raise ImpossibleHeraldError(0.0)
        index[ax] = count
    if len(pattern.assignments) == state.modes:
        raise ValueError("pattern covers every mode; nothing remains")
    sub = state.amplitudes[tuple(index)]
    prob = float(np.vdot(sub, sub).real) / state.norm2
    if prob < HERALD_MIN_PROBABILITY:
        raise ImpossibleHeraldError(prob)
    return PureState(sub / math.sqrt(prob * state.norm2), state.leakage), prob


def fix_gauge(state: PureState, rel_tol: float = 1e-12) -> PureState:
    """Rotate the global phase so the first significant amplitude is real positive."""
    flat = state.amplitudes.ravel()
    mags = np.abs(flat)
    idx = int(np.argmax(mags > rel_tol * mags.max()))
    phase = flat[idx] / mags[idx]
    return PureState(state.amplitudes / phase, state.leakage)


def reduced_density(state: PureState, keep: Sequence[int]) -> DensityMatrix:
    """Reduced density matrix on the 1-based modes in ``keep`` (in that order)."""
    keep = [_axis(state, m) for m in keep]
    if not keep or len(set(keep)) != len(keep):
        raise ValueError("keep must be a non-empty set of distinct modes")
    if len(keep) == state.modes:
        raise ValueError("keep must be a proper subset of the modes")
    rest = [i for i in range(state.modes) if i not in keep]
    psi = np.transpose(state.amplitudes, keep + rest)
    dims = psi.shape[: len(keep)]
    mat = psi.reshape(int(np.prod(dims)), -1)
    rho = mat @ mat.conj().T
    return DensityMatrix(tuple(dims), rho / np.trace(rho).real)


def schmidt_decompose(state: PureState, left: Sequence[int], right: Sequence[int] | None = None) -> SchmidtDecomposition:
    """Schmidt decomposition across the bipartition ``left | right``.

    Args:
        state: pure state (renormalized internally).
        left: 1-based modes of the first party.
        right: remaining modes; defaults to the complement of ``left``.
    """
    left_ax = [_axis(state, m) for m in left]
    if right is None:
        right_ax = [i for i in range(state.modes) if i not in left_ax]
    else:
        right_ax = [_axis(state, m) for m in right]
    if sorted(left_ax + right_ax) != list(range(state.modes)) or not left_ax or not right_ax:
        raise ValueError("bipartition must split all modes into two non-empty sets")
    psi = np.transpose(state.amplitudes, left_ax + right_ax)
    dl = int(np.prod(psi.shape[: len(left_ax)]))
    mat = psi.reshape(dl, -1) / math.sqrt(state.norm2)
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    return SchmidtDecomposition(s, u.T.copy(), vh.copy())

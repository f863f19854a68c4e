"""Cat-state view of squeezed number states and of the heralded vortices."""

from __future__ import annotations

import math

import numpy as np

from vortexlab import gaussian
from vortexlab.fock import PureState

GOLDEN_TOL = 1e-6
SEARCH_INTERVAL = (0.0, 3.0)
CAT_CUTOFF = 60


def cat_coefficients(eta: float, phi1: float, phi2: float) -> tuple[complex, complex]:
    """``C+- = 1 +- eta tan(phi2/2) e^{-i phi1}``.

    Raises:
        ValueError: ``phi2`` is an odd multiple of pi, where the tangent diverges.
    """
    if abs(math.cos(phi2 / 2)) < 1e-12:
        raise ValueError("cat coefficients diverge at phi2 = pi")
    w = eta * math.tan(phi2 / 2) * complex(math.cos(phi1), -math.sin(phi1))
    return 1 + w, 1 - w


def coherent_state(alpha: complex, cutoff: int) -> np.ndarray:
    """Truncated coherent-state amplitudes (not renormalized)."""
    k = np.arange(cutoff + 1)
    logmag = -0.5 * abs(alpha) ** 2 - 0.5 * np.array([math.lgamma(i + 1) for i in k])
    if alpha == 0:
        out = np.zeros(cutoff + 1, dtype=complex)
        out[0] = 1.0
        return out
    return np.exp(logmag + k * np.log(complex(alpha)))


def cat_state(alpha: float, parity: str, cutoff: int = CAT_CUTOFF) -> PureState:
    """Normalized ``|alpha> + |-alpha>`` (even) or ``|alpha> - |-alpha>`` (odd), real ``alpha``.

    Built from the Fock expansion ``alpha^k / sqrt(k!)`` on the matching parity,
    normalized by ``sqrt(cosh alpha^2)`` or ``sqrt(sinh alpha^2)``; the odd cat
    tends to ``|1>`` as ``alpha -> 0``.
    """
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    start = 0 if parity == "even" else 1
    k = np.arange(start, cutoff + 1, 2)
    amps = np.zeros(cutoff + 1, dtype=complex)
    if alpha == 0:
        amps[start] = 1.0
        return PureState(amps)
    lf = np.array([math.lgamma(i + 1) for i in k])
    amps[k] = np.sign(alpha) ** k * np.exp(k * math.log(abs(alpha)) - 0.5 * lf)
    return PureState(amps).normalized()


def kitten_overlap(alpha: float, parity: str, r: float, n: int | None = None,
                   cutoff: int | None = None) -> float:
    """``|<cat(alpha)|n_z>|^2``; ``n`` defaults to the parity-matched photon number."""
    if n is None:
        n = 0 if parity == "even" else 1
    if cutoff is None:
        cutoff = max(CAT_CUTOFF, gaussian.default_cutoff(r))
    cat = cat_state(alpha, parity, cutoff)
    sq = gaussian.squeezed_number_state(n, r, cutoff)
    return abs(np.vdot(cat.amplitudes, sq.amplitudes)) ** 2


def kitten_fidelity(r: float, parity: str, interval=SEARCH_INTERVAL, tol: float = GOLDEN_TOL,
                    bracket_points: int = 61) -> tuple[float, float]:
    """Best cat amplitude for a squeezed vacuum (even) or squeezed photon (odd).

    A coarse scan first confirms a single peak on ``interval`` (the golden
    section search assumes it), then the maximum is refined to ``tol``.

    Returns:
        ``(alpha_star, fidelity)``.

    Raises:
        ArithmeticError: the coarse scan shows more than one peak.
    """
    a, b = interval
    cutoff = max(CAT_CUTOFF, gaussian.default_cutoff(r))

    def f(x):
        return kitten_overlap(x, parity, r, cutoff=cutoff)

    grid = np.linspace(a, b, bracket_points)
    vals = np.array([f(x) for x in grid])
    rises = np.diff(vals) > 1e-15
    falls = np.diff(vals) < -1e-15
    first_fall = np.argmax(falls) if falls.any() else len(rises)
    if rises[first_fall:].any():
        raise ArithmeticError("overlap is not single-peaked on the search interval")
    i = int(np.argmax(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    inv_phi = (math.sqrt(5) - 1) / 2
    c = hi - inv_phi * (hi - lo)
    d = lo + inv_phi * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - inv_phi * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + inv_phi * (hi - lo)
            fd = f(d)
    best = 0.5 * (lo + hi)
    candidates = [(f(best), best), (vals[i], grid[i])]
    fid, alpha = max(candidates)
    return float(alpha), float(fid)


def cat_branch_weights(state: PureState, alpha: float, cutoff: int | None = None) -> tuple[complex, complex]:
    """Weights of a two-mode state on the entangled-cat vectors.

    ``v- = |a,a> - |-a,-a>`` and ``v+ = |a,-a> - |-a,a>`` (equal norms,
    orthogonal). For a heralded vortex both weights follow ``C-`` and ``C+``.

    Returns:
        ``(<v-|psi>, <v+|psi>) / <v|v>``.
    """
    d1, d2 = state.amplitudes.shape
    plus1, minus1 = coherent_state(alpha, d1 - 1), coherent_state(-alpha, d1 - 1)
    plus2, minus2 = coherent_state(alpha, d2 - 1), coherent_state(-alpha, d2 - 1)
    v_minus = np.multiply.outer(plus1, plus2) - np.multiply.outer(minus1, minus2)
    v_plus = np.multiply.outer(plus1, minus2) - np.multiply.outer(minus1, plus2)
    psi = state.amplitudes
    wm = np.vdot(v_minus, psi) / np.vdot(v_minus, v_minus).real
    wp = np.vdot(v_plus, psi) / np.vdot(v_plus, v_plus).real
    return complex(wm), complex(wp)

"""Dense linear-algebra helpers shared by the Fock-space operations.

The matrix exponential is implemented here (scaling and squaring around a
truncated Taylor series) because the operators we exponentiate are small,
dense and, for squeezers, deliberately built in a padded space so that the
weight pushed past the cutoff can be measured.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.linalg
from scipy.special import gammaln

EXPM_TOL = 1e-13


def expm(a: np.ndarray, tol: float = EXPM_TOL) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a Taylor core.

    The matrix is scaled by ``2**-s`` until its 1-norm is at most 1/2, the
    Taylor series is summed until the next term falls below ``tol`` relative
    to the partial sum, and the result is squared ``s`` times.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expm needs a square matrix")
    n = a.shape[0]
    norm = np.abs(a).sum(axis=0).max() if n else 0.0
    s = 0
    if norm > 0.5:
        s = int(math.ceil(math.log2(norm / 0.5)))
    b = a / (2.0**s)
    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, 80):
        term = term @ b / k
        result += term
        if np.abs(term).sum(axis=0).max() <= tol * 1e-3:
            break
    for _ in range(s):
        result = result @ result
    return result


def log_factorial(n):
    """``log(n!)`` via the log-gamma function; accepts arrays."""
    return gammaln(np.asarray(n, dtype=float) + 1.0)


def unitary_log(u: np.ndarray) -> np.ndarray:
    """Principal anti-Hermitian logarithm of a small unitary matrix.

    Uses the complex Schur form, which is diagonal for normal matrices, so
    degenerate eigenvalues keep an orthonormal eigenbasis.
    """
    u = np.asarray(u, dtype=complex)
    if not np.allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=1e-12):
        raise ValueError("matrix is not unitary")
    t, z = scipy.linalg.schur(u, output="complex")
    phases = np.angle(np.diag(t))
    return z @ np.diag(1j * phases) @ z.conj().T


def ladder(dim: int) -> np.ndarray:
    """Annihilation operator on ``dim`` Fock levels."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1)


def sectors(c1: int, c2: int):
    """Yield ``(n, k_values)`` photon-number sectors of a two-mode box.

    ``k_values`` are the mode-1 occupations with ``k <= c1`` and
    ``n - k <= c2``; sectors with ``n > min(c1, c2)`` are incomplete.
    """
    for n in range(c1 + c2 + 1):
        lo = max(0, n - c2)
        hi = min(n, c1)
        yield n, np.arange(lo, hi + 1)


def passive_sector_unitaries(x: np.ndarray, c1: int, c2: int):
    """Fock-space blocks of ``exp(sum_kj x[k, j] a_k^dag a_j)`` on a two-mode box.

    ``x`` is the anti-Hermitian single-particle generator. The generator
    conserves total photon number, so it is block diagonal in the sectors
    returned by :func:`sectors`. Each block is exponentiated through the
    eigendecomposition of its Hermitian part, which is exactly unitary.

    Returns:
        list of ``(k_values, n, block)`` with ``block`` acting on the
        amplitudes ``psi[k, n - k]`` for ``k`` in ``k_values``.
    """
    x = np.asarray(x, dtype=complex)
    out = []
    for n, ks in sectors(c1, c2):
        m = len(ks)
        g = np.zeros((m, m), dtype=complex)
        for i, k in enumerate(ks):
            g[i, i] = x[0, 0] * k + x[1, 1] * (n - k)
            if i + 1 < m:
                # a1^dag a2 : |k, n-k> -> sqrt(k+1) sqrt(n-k) |k+1, n-k-1>
                g[i + 1, i] = x[0, 1] * math.sqrt((k + 1) * (n - k))
                # a2^dag a1 : |k+1, n-k-1> -> sqrt(k+1) sqrt(n-k) |k, n-k>
                g[i, i + 1] = x[1, 0] * math.sqrt((k + 1) * (n - k))
        h = -1j * g
        h = 0.5 * (h + h.conj().T)
        w, v = np.linalg.eigh(h)
        block = (v * np.exp(1j * w)) @ v.conj().T
        out.append((ks, n, block))
    return out

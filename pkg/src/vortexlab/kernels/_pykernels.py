"""Numpy reference implementations of the hot loops.

These are the fallback when the compiled extension is unavailable and the
oracle the compiled versions are tested against.
"""

from __future__ import annotations

import math

import numpy as np

_PI_QUARTER = math.pi ** -0.25


def hermite_functions(x, nmax: int) -> np.ndarray:
    """Normalized oscillator eigenfunctions ``psi_0 .. psi_nmax`` at points ``x``.

    Uses the upward recurrence on the normalized functions,
    ``psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1}``.

    Returns:
        array of shape ``(nmax + 1, len(x))``.
    """
    x = np.ascontiguousarray(x, dtype=float).ravel()
    out = np.empty((nmax + 1, x.size))
    out[0] = _PI_QUARTER * np.exp(-0.5 * x * x)
    if nmax >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for n in range(1, nmax):
        out[n + 1] = math.sqrt(2.0 / (n + 1)) * x * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
    return out


def displacement_matrices(betas, dim: int) -> np.ndarray:
    """Exact ``<m|D(beta)|n>`` for ``m, n < dim`` and every ``beta``.

    Uses the closed form along each diagonal ``m - n = a``,
    ``e^{-|b|^2/2} sqrt(k!/(k+a)!) b^a L_k^{(a)}(|b|^2)`` (and ``(-b^*)^a`` above
    the diagonal), with the generalized Laguerre polynomials from their
    forward recurrence in ``k``. This stays accurate where the plain ladder
    recurrence for the columns loses digits to cancellation.

    Returns:
        array of shape ``(len(betas), dim, dim)``.
    """
    betas = np.ascontiguousarray(betas, dtype=complex).ravel()
    p = betas.size
    out = np.empty((p, dim, dim), dtype=complex)
    x = np.abs(betas) ** 2
    env = np.exp(-0.5 * x)
    up = np.ones(p, dtype=complex)
    down = np.ones(p, dtype=complex)
    for a in range(dim):
        if a:
            up = up * betas / math.sqrt(a)
            down = down * (-np.conj(betas)) / math.sqrt(a)
        lag_prev = np.zeros(p)
        lag = np.ones(p)
        pref = env.copy()
        for k in range(dim - a):
            if k == 1:
                lag_prev, lag = lag, 1.0 + a - x
            elif k > 1:
                lag_prev, lag = lag, ((2 * k - 1 + a - x) * lag - (k - 1 + a) * lag_prev) / k
            if k:
                pref = pref * math.sqrt(k / (k + a))
            v = pref * lag
            out[:, k + a, k] = v * up
            if a:
                out[:, k, k + a] = v * down
    return out


def displaced_parity(psi, beta1s, beta2s, chunk: int = 256) -> np.ndarray:
    """``Re <psi| D(b1) P (x) D(b2) P |psi>`` for paired displacements.

    ``P`` is the single-mode parity. Evaluated in chunks of points.
    """
    psi = np.ascontiguousarray(psi, dtype=complex)
    d1, d2 = psi.shape
    beta1s = np.ascontiguousarray(beta1s, dtype=complex).ravel()
    beta2s = np.ascontiguousarray(beta2s, dtype=complex).ravel()
    signed = psi * np.outer((-1.0) ** np.arange(d1), (-1.0) ** np.arange(d2))
    out = np.empty(beta1s.size)
    for s in range(0, beta1s.size, chunk):
        m1 = displacement_matrices(beta1s[s:s + chunk], d1)
        m2 = displacement_matrices(beta2s[s:s + chunk], d2)
        t = np.einsum("pij,jk,plk->pil", m1, signed, m2, optimize=True)
        out[s:s + chunk] = np.einsum("il,pil->p", np.conj(psi), t).real
    return out

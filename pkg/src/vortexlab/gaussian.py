"""Circuit unitaries on truncated Fock states.

Conventions (fixed; golden data depend on them):

* single-mode squeezer ``S(zeta) = exp((zeta a^dag^2 - zeta^* a^2) / 2)`` so that
  ``S^dag a S = a cosh r + a^dag e^{i theta} sinh r``;
* two-mode squeezer ``exp(zeta a_j^dag a_l^dag - zeta^* a_j a_l)``;
* directional coupler ``exp(-i theta/2 (a_j a_l^dag + a_j^dag a_l))`` with
  reflectivity ``sin(theta/2)`` and transmittivity ``cos(theta/2)``;
* passive two-mode elements are described by the single-particle matrix ``U``
  with ``a_j^dag -> sum_k U[k, j] a_k^dag``.

Squeezers are evaluated in a padded space and truncated back to the cutoff;
the weight that leaves the box is reported as leakage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from vortexlab import linalg
from vortexlab.errors import LeakageError
from vortexlab.fock import PureState, _axis, apply_single_mode

LEAKAGE_TOL = 1e-8
DEFAULT_TAIL = 1e-20


def _wrap_angle(theta: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    t = math.remainder(theta, 2 * math.pi)
    return math.pi if t == -math.pi else t


@dataclass(frozen=True)
class SqueezeParam:
    r: float
    theta_s: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.r) or self.r < 0:
            raise ValueError("squeeze magnitude must be finite and non-negative")
        object.__setattr__(self, "theta_s", _wrap_angle(self.theta_s))

    @property
    def zeta(self) -> complex:
        return self.r * complex(math.cos(self.theta_s), math.sin(self.theta_s))

    @classmethod
    def from_complex(cls, zeta: complex) -> "SqueezeParam":
        return cls(abs(zeta), math.atan2(zeta.imag, zeta.real) if zeta else 0.0)


@dataclass(frozen=True)
class CouplerParam:
    theta: float

    @property
    def t(self) -> float:
        return math.cos(self.theta / 2)

    @property
    def r(self) -> float:
        return math.sin(self.theta / 2)

    @classmethod
    def from_transmittance(cls, t: float) -> "CouplerParam":
        if not 0 <= t <= 1:
            raise ValueError("transmittance must lie in [0, 1]")
        return cls(2 * math.acos(t))

    @classmethod
    def from_reflectivity(cls, r: float) -> "CouplerParam":
        if not 0 <= r <= 1:
            raise ValueError("reflectivity must lie in [0, 1]")
        return cls(2 * math.asin(r))


def _as_zeta(zeta) -> complex:
    if isinstance(zeta, SqueezeParam):
        return zeta.zeta
    return complex(zeta)


def _squeezed_log_weights(r: float, n: int, levels: np.ndarray) -> np.ndarray:
    """log |<k|n_zeta>|^2 for k in ``levels`` (all of the right parity)."""
    m = (levels - n) // 2
    t = math.tanh(r)
    lw = (
        linalg.log_factorial(levels)
        - 2 * linalg.log_factorial(m)
        - 2 * m * math.log(2)
        - (2 * n + 1) * math.log(math.cosh(r))
    )
    if r > 0:
        lw = lw + 2 * m * math.log(t)
    else:
        lw = np.where(m == 0, lw, -np.inf)
    return lw


def squeezed_tail(r: float, n: int, cutoff: int) -> float:
    """Weight of ``|n_zeta>`` above ``cutoff`` from the closed form."""
    if r == 0:
        return 0.0 if cutoff >= n else 1.0
    start = cutoff + 1
    if (start - n) % 2:
        start += 1
    start = max(start, n)
    total = 0.0
    k = start
    while True:
        levels = np.arange(k, k + 400, 2)
        w = np.exp(_squeezed_log_weights(r, n, levels))
        total += float(w.sum())
        if w[-1] < 1e-300 or w[-1] < 1e-18 * max(total, 1e-300):
            break
        k += 800
    return total


def default_cutoff(r: float, tail: float = DEFAULT_TAIL) -> int:
    """Per-mode cutoff for squeezed content of magnitude up to ``r``.

    Starts from ``ceil(10 + 20 r)`` and grows until the closed-form tail of a
    squeezed single photon beyond the cutoff is below ``tail``.
    """
    n = int(math.ceil(10 + 20 * r))
    while squeezed_tail(r, 1, n) > tail:
        n += 1
    return n


def squeezed_number_state(n: int, zeta, cutoff: int, allow_leakage: bool = False,
                          tol: float = LEAKAGE_TOL) -> PureState:
    """Closed-form single-mode ``S(zeta)|n>`` for ``n`` in {0, 1}.

    Amplitudes are ``(e^{i theta} tanh r)^m sqrt((2m+n)!) / (2^m m! cosh^{n+1/2} r)``
    on level ``2m + n``. The truncated vector is renormalized; the discarded
    weight is the leakage.
    """
    if n not in (0, 1):
        raise ValueError("only n = 0 and n = 1 are supported")
    if cutoff < n:
        raise ValueError("cutoff below the photon number")
    z = _as_zeta(zeta)
    r = abs(z)
    phase = z / r if r > 0 else 1.0
    levels = np.arange(n, cutoff + 1, 2)
    m = (levels - n) // 2
    amps = np.zeros(cutoff + 1, dtype=complex)
    amps[levels] = np.exp(0.5 * _squeezed_log_weights(r, n, levels)) * phase**m
    kept = float(np.vdot(amps, amps).real)
    leak = max(0.0, 1.0 - kept)
    if leak > tol and not allow_leakage:
        raise LeakageError(leak, tol)
    return PureState(amps / math.sqrt(kept), leak)


def _pad(cutoff: int, r: float) -> int:
    """Padded box size so that weight reaching the box edge is below double precision.

    Squeezing moves amplitude two levels at a time with ratio about ``tanh r``,
    so ``(pad - cutoff) / 2`` steps must shrink it by ``e^{-40}``.
    """
    extra = cutoff + 22
    t = math.tanh(r)
    if t > 0:
        extra = max(extra, 2 * int(math.ceil(40.0 / -math.log(t))))
    return cutoff + extra


@lru_cache(maxsize=256)
def squeeze_block(zeta: complex, cutoff: int) -> np.ndarray:
    """Top-left ``(cutoff+1)^2`` block of ``S(zeta)`` computed in a padded space."""
    d = _pad(cutoff, abs(zeta)) + 1
    a = linalg.ladder(d)
    ad = a.T
    g = 0.5 * (zeta * ad @ ad - np.conj(zeta) * a @ a)
    full = linalg.expm(g)
    block = full[: cutoff + 1, : cutoff + 1].copy()
    block.setflags(write=False)
    return block


def _finish(state: PureState, raw: np.ndarray, allow_leakage: bool, tol: float) -> PureState:
    before = state.norm2
    after = float(np.vdot(raw, raw).real)
    leak = max(0.0, 1.0 - after / before)
    if leak > tol and not allow_leakage:
        raise LeakageError(leak, tol)
    return PureState(raw * math.sqrt(before / after), state.leakage + leak)


def apply_squeeze(state: PureState, mode: int, zeta, allow_leakage: bool = False,
                  tol: float = LEAKAGE_TOL) -> PureState:
    """Single-mode squeeze on ``mode``; records leakage and renormalizes.

    Raises:
        LeakageError: more than ``tol`` of the norm left the box.
    """
    z = _as_zeta(zeta)
    if z == 0:
        return state
    ax = _axis(state, mode)
    block = squeeze_block(z, state.cutoffs[ax])
    raw = apply_single_mode(state, mode, block)
    return _finish(state, raw, allow_leakage, tol)


def _tms_generator_chain(zeta: complex, d: int, pj: int, pl: int):
    """Chain of levels ``(q + d, q)`` inside the padded box and its generator."""
    q0 = max(0, -d)
    q1 = min(pj - d, pl)
    qs = np.arange(q0, q1 + 1)
    ps = qs + d
    m = len(qs)
    g = np.zeros((m, m), dtype=complex)
    for i in range(m - 1):
        amp = math.sqrt((ps[i] + 1) * (qs[i] + 1))
        g[i + 1, i] = zeta * amp
        g[i, i + 1] = -np.conj(zeta) * amp
    return ps, qs, g


@lru_cache(maxsize=64)
def _tms_blocks(zeta: complex, cj: int, cl: int):
    pj, pl = _pad(cj, abs(zeta)), _pad(cl, abs(zeta))
    blocks = []
    for d in range(-cl, cj + 1):
        ps, qs, g = _tms_generator_chain(zeta, d, pj, pl)
        keep = (ps <= cj) & (qs <= cl)
        k = int(keep.sum())
        full = linalg.expm(g)
        blocks.append((ps[:k], qs[:k], full[:k, :k].copy()))
    return blocks


def _move_pair(state: PureState, modes):
    j, l = modes
    aj, al = _axis(state, j), _axis(state, l)
    if aj == al:
        raise ValueError("two-mode operations need distinct modes")
    psi = np.moveaxis(state.amplitudes, (aj, al), (0, 1))
    return aj, al, psi


def _restore_pair(out, aj, al):
    return np.moveaxis(out, (0, 1), (aj, al))


def _tms_decomposition(psi: np.ndarray, zeta: complex, cj: int, cl: int) -> np.ndarray:
    """exp(tau a^dag b^dag) (cosh r)^-(n_a+n_b+1) exp(-tau^* a b) in a padded box."""
    r = abs(zeta)
    tau = (zeta / r) * math.tanh(r)
    pj, pl = _pad(cj, abs(zeta)), _pad(cl, abs(zeta))
    big = np.zeros((pj + 1, pl + 1) + psi.shape[2:], dtype=complex)
    big[: cj + 1, : cl + 1] = psi
    sqj = np.sqrt(np.arange(pj + 1, dtype=float))
    sql = np.sqrt(np.arange(pl + 1, dtype=float))
    tail = (1,) * (psi.ndim - 2)

    def lower(v):
        out = np.zeros_like(v)
        out[:-1, :-1] = v[1:, 1:] * (sqj[1:, None] * sql[None, 1:]).reshape(pj, pl, *tail)
        return out

    def raise_(v):
        out = np.zeros_like(v)
        out[1:, 1:] = v[:-1, :-1] * (sqj[1:, None] * sql[None, 1:]).reshape(pj, pl, *tail)
        return out

    acc = big.copy()
    term = big
    for k in range(1, min(pj, pl) + 2):
        term = lower(term) * (-np.conj(tau) / k)
        if not np.any(term):
            break
        acc = acc + term
    nj = np.arange(pj + 1)[:, None]
    nl = np.arange(pl + 1)[None, :]
    acc = acc * (math.cosh(r) ** -(nj + nl + 1.0)).reshape(pj + 1, pl + 1, *tail)
    out = acc.copy()
    term = acc
    for k in range(1, 4 * max(pj, pl)):
        term = raise_(term) * (tau / k)
        out = out + term
        if np.abs(term).max() < 1e-20:
            break
    return out[: cj + 1, : cl + 1]


def apply_two_mode_squeeze(state: PureState, modes, zeta, method: str = "expm",
                           allow_leakage: bool = False, tol: float = LEAKAGE_TOL) -> PureState:
    """``exp(zeta a_j^dag a_l^dag - zeta^* a_j a_l)`` on modes ``(j, l)``.

    Args:
        method: ``"expm"`` exponentiates each photon-difference block densely;
            ``"decomposition"`` applies the normal-ordered three-factor form.
    """
    z = _as_zeta(zeta)
    if z == 0:
        return state
    aj, al, psi = _move_pair(state, modes)
    cj, cl = psi.shape[0] - 1, psi.shape[1] - 1
    if method == "expm":
        out = np.zeros_like(psi)
        for ps, qs, block in _tms_blocks(z, cj, cl):
            out[ps, qs] = np.tensordot(block, psi[ps, qs], axes=([1], [0]))
    elif method == "decomposition":
        out = _tms_decomposition(psi, z, cj, cl)
    else:
        raise ValueError("method must be 'expm' or 'decomposition'")
    return _finish(state, _restore_pair(out, aj, al), allow_leakage, tol)


@lru_cache(maxsize=256)
def _passive_blocks(key: bytes, c1: int, c2: int):
    x = np.frombuffer(key, dtype=complex).reshape(2, 2)
    return linalg.passive_sector_unitaries(x, c1, c2)


def apply_generator(state: PureState, modes, x: np.ndarray) -> PureState:
    """Apply ``exp(sum_kj x[k, j] a_k^dag a_j)`` for an anti-Hermitian 2x2 ``x``."""
    aj, al, psi = _move_pair(state, modes)
    c1, c2 = psi.shape[0] - 1, psi.shape[1] - 1
    x = np.ascontiguousarray(x, dtype=complex)
    out = np.zeros_like(psi)
    for ks, n, block in _passive_blocks(x.tobytes(), c1, c2):
        idx = (ks, n - ks)
        out[idx] = np.tensordot(block, psi[idx], axes=([1], [0]))
    return PureState(_restore_pair(out, aj, al), state.leakage)


def apply_passive(state: PureState, modes, u: np.ndarray) -> PureState:
    """Two-mode linear-optics element given by its single-particle unitary ``u``."""
    return apply_generator(state, modes, linalg.unitary_log(np.asarray(u, dtype=complex)))


def coupler_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def apply_coupler(state: PureState, modes, theta: float) -> PureState:
    """Directional coupler ``exp(-i theta/2 (a_j a_l^dag + a_j^dag a_l))``."""
    x = -0.5j * theta * np.array([[0, 1], [1, 0]], dtype=complex)
    return apply_generator(state, modes, x)


def apply_phase(state: PureState, mode: int, phi: float) -> PureState:
    """Multiply each amplitude by ``exp(i phi n_mode)``."""
    ax = _axis(state, mode)
    d = state.amplitudes.shape[ax]
    ph = np.exp(1j * phi * np.arange(d))
    shape = [1] * state.modes
    shape[ax] = d
    return PureState(state.amplitudes * ph.reshape(shape), state.leakage)


def mzi_matrix(phi1: float, phi2: float) -> np.ndarray:
    """Single-particle matrix of the reconfigurable interferometer.

    ``a_j^dag -> e^{i phi1/2} (cos(phi2/2) a_j^dag + sin(phi2/2) a_l^dag)`` and
    ``a_l^dag -> e^{-i phi1/2} (-sin(phi2/2) a_j^dag + cos(phi2/2) a_l^dag)``.
    """
    c, s = math.cos(phi2 / 2), math.sin(phi2 / 2)
    e = complex(math.cos(phi1 / 2), math.sin(phi1 / 2))
    return np.array([[e * c, -s / e], [e * s, c / e]])


def apply_mzi(state: PureState, modes, phi1: float, phi2: float) -> PureState:
    x_phase = 0.5j * phi1 * np.diag([1.0, -1.0]).astype(complex)
    x_rot = 0.5 * phi2 * np.array([[0, -1], [1, 0]], dtype=complex)
    out = apply_generator(state, modes, x_phase)
    return apply_generator(out, modes, x_rot)


def y_junction_matrix() -> np.ndarray:
    return np.array([[1, -1], [1, 1]], dtype=complex) / math.sqrt(2)


def apply_y_junction(state: PureState, modes) -> PureState:
    """Lossless symmetric Y junction, ``(1/sqrt2)[[1, -1], [1, 1]]``."""
    x = 0.25 * math.pi * np.array([[0, -1], [1, 0]], dtype=complex)
    return apply_generator(state, modes, x)


def bogoliubov_check(state: PureState, mode: int, zeta) -> tuple[complex, complex]:
    """Both sides of ``<S^dag a S> = <a cosh r + a^dag e^{i theta} sinh r>``.

    The left side squeezes the state and takes ``<a>``; the right side
    evaluates the transformed operator on the unsqueezed state.
    """
    z = _as_zeta(zeta)
    r = abs(z)
    phase = z / r if r else 1.0
    ax = _axis(state, mode)
    d = state.amplitudes.shape[ax]
    a = linalg.ladder(d)
    squeezed = apply_squeeze(state, mode, z, allow_leakage=True)
    lhs = np.vdot(squeezed.amplitudes, apply_single_mode(squeezed, mode, a))
    op = a * math.cosh(r) + a.T * phase * math.sinh(r)
    rhs = np.vdot(state.amplitudes, apply_single_mode(state, mode, op))
    return complex(lhs), complex(rhs)

"""Circuit assembly, heralded vortex generation and device arithmetic.

Mode numbering follows the four-waveguide chip: modes 1 and 2 carry the
squeezed signals, modes 3 and 4 are the weakly tapped lossy channels that
feed the interferometer and the detectors.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from vortexlab import fock, gaussian
from vortexlab.angles import parse_angle
from vortexlab.errors import ImpossibleHeraldError
from vortexlab.fock import HeraldPattern, PureState

DEFAULT_T = 0.995
FIRST_ORDER_MIN_T = 0.9


@dataclass(frozen=True)
class VortexParams:
    """Every dial of the chip and of the target vortex family.

    Attributes:
        r: squeeze magnitude.
        theta_s: squeeze phase.
        eta: coupler asymmetry ``r2 t1 / (r1 t2)``.
        phi1, phi2: interferometer phases.
        n: parity selector in ``(-1)^n``.
    """

    r: float = 0.3
    theta_s: float = 0.0
    eta: float = 1.0
    phi1: float = math.pi / 2
    phi2: float = math.pi / 2
    n: int = 0

    def __post_init__(self):
        if not self.eta > 0:
            raise ValueError("eta must be positive")
        if self.r < 0 or not math.isfinite(self.r):
            raise ValueError("r must be finite and non-negative")

    @property
    def eta_prime(self) -> float:
        return self.eta * math.tan(self.phi2 / 2)

    @property
    def Phi(self) -> float:
        return math.atan(self.eta_prime)

    @property
    def zeta(self) -> complex:
        return gaussian.SqueezeParam(self.r, self.theta_s).zeta

    @classmethod
    def for_vortex(cls, r: float, eta_prime: float, n: int = 0, eta: float = 1.0,
                   theta_s: float = 0.0) -> "VortexParams":
        """Phases that herald the vortex with ellipticity ``eta_prime`` on a mode-3 click."""
        return cls(r, theta_s, eta, math.pi / 2 + n * math.pi, 2 * math.atan(eta_prime / eta), n)

    @classmethod
    def circular(cls, r: float, eta: float = 1.0, n: int = 0, theta_s: float = 0.0) -> "VortexParams":
        """``phi2 = 2 arctan(1/eta)`` compensates the coupler asymmetry."""
        return cls.for_vortex(r, 1.0, n, eta, theta_s)


# --- circuit description -------------------------------------------------


@dataclass(frozen=True)
class Squeeze:
    mode: int
    r: float
    theta: float = 0.0

    def apply(self, state, allow_leakage=False):
        return gaussian.apply_squeeze(state, self.mode, gaussian.SqueezeParam(self.r, self.theta),
                                      allow_leakage=allow_leakage)

    def to_text(self):
        return f"squeeze {self.mode} {self.r!r} {self.theta!r}"

    @property
    def modes(self):
        return (self.mode,)


@dataclass(frozen=True)
class Coupler:
    j: int
    l: int
    theta: float

    def apply(self, state, allow_leakage=False):
        return gaussian.apply_coupler(state, (self.j, self.l), self.theta)

    def to_text(self):
        return f"coupler {self.j} {self.l} {self.theta!r}"

    @property
    def modes(self):
        return (self.j, self.l)


@dataclass(frozen=True)
class Phase:
    mode: int
    phi: float

    def apply(self, state, allow_leakage=False):
        return gaussian.apply_phase(state, self.mode, self.phi)

    def to_text(self):
        return f"phase {self.mode} {self.phi!r}"

    @property
    def modes(self):
        return (self.mode,)


@dataclass(frozen=True)
class MZI:
    j: int
    l: int
    phi1: float
    phi2: float

    def apply(self, state, allow_leakage=False):
        return gaussian.apply_mzi(state, (self.j, self.l), self.phi1, self.phi2)

    def to_text(self):
        return f"mzi {self.j} {self.l} {self.phi1!r} {self.phi2!r}"

    @property
    def modes(self):
        return (self.j, self.l)


@dataclass(frozen=True)
class YJunction:
    j: int
    l: int

    def apply(self, state, allow_leakage=False):
        return gaussian.apply_y_junction(state, (self.j, self.l))

    def to_text(self):
        return f"yjunction {self.j} {self.l}"

    @property
    def modes(self):
        return (self.j, self.l)


_ELEMENTS = {
    "squeeze": (Squeeze, ("int", "float", "angle")),
    "coupler": (Coupler, ("int", "int", "angle")),
    "phase": (Phase, ("int", "angle")),
    "mzi": (MZI, ("int", "int", "angle", "angle")),
    "yjunction": (YJunction, ("int", "int")),
}


@dataclass(frozen=True)
class CircuitSpec:
    """Ordered circuit elements acting on ``modes`` waveguides."""

    modes: int
    elements: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        for el in self.elements:
            if len(set(el.modes)) != len(el.modes):
                raise ValueError(f"repeated mode in {el.to_text()!r}")
            for m in el.modes:
                if not 1 <= m <= self.modes:
                    raise ValueError(f"mode {m} out of range in {el.to_text()!r}")

    def to_text(self) -> str:
        lines = [f"modes {self.modes}"] + [el.to_text() for el in self.elements]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, modes: int | None = None) -> "CircuitSpec":
        """Parse the line format; ``#`` starts a comment.

        A ``modes M`` line fixes the mode count, otherwise the largest mode
        index referenced (or ``modes``) is used.
        """
        elements = []
        declared = modes
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, *args = line.split()
            head = head.lower()
            if head == "modes":
                if len(args) != 1:
                    raise ValueError(f"line {lineno}: 'modes' takes one integer")
                declared = int(args[0])
                continue
            if head not in _ELEMENTS:
                raise ValueError(f"line {lineno}: unknown element {head!r}")
            ctor, kinds = _ELEMENTS[head]
            if head == "squeeze" and len(args) == 2:
                args = args + ["0"]
            if len(args) != len(kinds):
                raise ValueError(f"line {lineno}: {head} expects {len(kinds)} arguments")
            try:
                values = [int(a) if k == "int" else (float(a) if k == "float" else parse_angle(a))
                          for a, k in zip(args, kinds)]
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
            elements.append(ctor(*values))
        if declared is None:
            declared = max((m for el in elements for m in el.modes), default=1)
        return cls(declared, tuple(elements))


def simulate(spec: CircuitSpec, state: PureState, allow_leakage: bool = False) -> PureState:
    """Apply the elements in order; leakage accumulates on the returned state."""
    if state.modes != spec.modes:
        raise ValueError(f"circuit has {spec.modes} modes, state has {state.modes}")
    for el in spec.elements:
        state = el.apply(state, allow_leakage)
    return state


def tap_angles(t1: float = DEFAULT_T, eta: float = 1.0, t2: float | None = None) -> tuple[float, float]:
    """Coupler angles of the two taps.

    With ``t2`` omitted, the second tap follows from ``tan(theta2/2) = eta tan(theta1/2)``.
    """
    theta1 = gaussian.CouplerParam.from_transmittance(t1).theta
    if t2 is None:
        theta2 = 2 * math.atan(eta * math.tan(theta1 / 2))
    else:
        theta2 = gaussian.CouplerParam.from_transmittance(t2).theta
    return theta1, theta2


def build_fig1_chip(params: VortexParams, t1: float = DEFAULT_T, t2: float | None = None) -> CircuitSpec:
    """Four-mode chip: two squeezers, two weak taps and the interferometer."""
    theta1, theta2 = tap_angles(t1, params.eta, t2)
    return CircuitSpec(4, (
        Squeeze(1, params.r, params.theta_s),
        Squeeze(2, params.r, params.theta_s),
        Coupler(1, 3, theta1),
        Coupler(2, 4, theta2),
        MZI(3, 4, params.phi1, params.phi2),
    ))


def exact_state(params: VortexParams, cutoff: int | None = None, t1: float = DEFAULT_T,
                t2: float | None = None) -> PureState:
    """Run the full chip on vacuum with every mode truncated at ``cutoff``."""
    if cutoff is None:
        cutoff = gaussian.default_cutoff(params.r, 1e-12)
    spec = build_fig1_chip(params, t1, t2)
    return simulate(spec, fock.vacuum(4, cutoff))


def first_order_state(params: VortexParams, cutoff: int | None = None, t1: float = DEFAULT_T,
                      t2: float | None = None) -> PureState:
    """Weak-tap expansion ``(1 - i r1/t1 a1 a3^dag)(1 - i r2/t2 a2 a4^dag)|0z 0z 0 0>``.

    The interferometer is then applied. Second-order terms are absent by
    construction; modes 3 and 4 are truncated at two photons, which holds
    the cross term exactly.
    """
    if cutoff is None:
        cutoff = gaussian.default_cutoff(params.r, 1e-12)
    theta1, theta2 = tap_angles(t1, params.eta, t2)
    c1, c2 = gaussian.CouplerParam(theta1), gaussian.CouplerParam(theta2)
    if min(c1.t, c2.t) < FIRST_ORDER_MIN_T:
        raise ValueError("first-order expansion needs transmittances of at least 0.9")
    sq = gaussian.squeezed_number_state(0, params.zeta, cutoff)
    anc = fock.vacuum(1, 2)
    base = fock.tensor(sq, sq, anc, anc)
    state = base
    for src, dst, k in ((1, 3, c1.r / c1.t), (2, 4, c2.r / c2.t)):
        moved = fock.apply_ladder(fock.apply_ladder(state, src, "annihilate"), dst, "create")
        state = PureState(state.amplitudes - 1j * k * moved.amplitudes, state.leakage)
    state = state.normalized()
    return gaussian.apply_mzi(state, (3, 4), params.phi1, params.phi2)


def herald_vortex(state: PureState, click: int = 3) -> tuple[PureState, float]:
    """Project the ancillas of a four-mode chip state onto a single click.

    Args:
        click: 3 for the pattern (1, 0) on modes 3 and 4, 4 for (0, 1).

    Returns:
        ``(two_mode_state, probability)`` with the gauge fixed so the first
        significant amplitude is real positive.
    """
    if click == 3:
        pattern = HeraldPattern({3: 1, 4: 0})
    elif click == 4:
        pattern = HeraldPattern({3: 0, 4: 1})
    else:
        raise ValueError("click must be 3 or 4")
    out, prob = fock.project_pattern(state, pattern)
    return fock.fix_gauge(out), prob


def herald_weight(params: VortexParams, click: int = 3) -> complex:
    """Coefficient of ``|0z 1z>`` relative to ``|1z 0z>`` after a click.

    ``-eta tan(phi2/2) e^{-i phi1}`` for a mode-3 click and
    ``+eta cot(phi2/2) e^{-i phi1}`` for a mode-4 click.
    """
    e = complex(math.cos(params.phi1), -math.sin(params.phi1))
    if click == 3:
        return -params.eta * math.tan(params.phi2 / 2) * e
    if click == 4:
        return params.eta / math.tan(params.phi2 / 2) * e
    raise ValueError("click must be 3 or 4")


def _two_branch(first: PureState, second: PureState, weight: complex) -> PureState:
    """Normalized ``|a b> + weight |b a>`` from single-mode kets ``a``, ``b``."""
    amps = np.multiply.outer(first.amplitudes, second.amplitudes)
    amps = amps + weight * np.multiply.outer(second.amplitudes, first.amplitudes)
    return PureState(amps, first.leakage + second.leakage).normalized()


def make_cv_vortex(r: float, eta_prime: float, n: int = 0, cutoff: int | None = None,
                   theta_s: float = 0.0, allow_leakage: bool = False) -> PureState:
    """``(|1z 0z> + (-1)^n i eta' |0z 1z>) / sqrt(1 + eta'^2)``."""
    if r < 0 or eta_prime < 0:
        raise ValueError("r and eta_prime must be non-negative")
    if cutoff is None:
        cutoff = gaussian.default_cutoff(r)
    zeta = gaussian.SqueezeParam(r, theta_s)
    one = gaussian.squeezed_number_state(1, zeta, cutoff, allow_leakage)
    zero = gaussian.squeezed_number_state(0, zeta, cutoff, allow_leakage)
    return _two_branch(one, zero, (-1) ** n * 1j * eta_prime)


def make_heralded_vortex(r: float, weight: complex, cutoff: int | None = None,
                         theta_s: float = 0.0) -> PureState:
    """Normalized ``|1z 0z> + weight |0z 1z>`` for an arbitrary complex weight."""
    if cutoff is None:
        cutoff = gaussian.default_cutoff(r)
    zeta = gaussian.SqueezeParam(r, theta_s)
    one = gaussian.squeezed_number_state(1, zeta, cutoff)
    zero = gaussian.squeezed_number_state(0, zeta, cutoff)
    return _two_branch(one, zero, weight)


def make_dv_vortex(eta_prime: float, phi1: float | None = None, n: int = 0, cutoff: int = 1) -> PureState:
    """Unsqueezed vortex ``(|10> + w|01>) / sqrt(1 + eta'^2)``.

    ``w = (-1)^n i eta'`` when ``phi1`` is omitted, otherwise the general
    mode-3 herald weight ``w = -eta' e^{-i phi1}``.
    """
    if eta_prime < 0:
        raise ValueError("eta_prime must be non-negative")
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    w = (-1) ** n * 1j * eta_prime if phi1 is None else -eta_prime * complex(math.cos(phi1), -math.sin(phi1))
    amps = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    amps[1, 0] = 1.0
    amps[0, 1] = w
    return PureState(amps).normalized()


def dv_regime_input(r: float, theta_s: float = 0.0, cutoff: int = 2) -> PureState:
    """Low-pump single-mode input ``|0> + e^{i theta_s} tanh(r)/sqrt2 |2>``, renormalized."""
    if r > 0.5:
        warnings.warn("the two-photon truncation is poor above r = 0.5", stacklevel=2)
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    amps = np.zeros(cutoff + 1, dtype=complex)
    amps[0] = 1.0
    amps[2] = complex(math.cos(theta_s), math.sin(theta_s)) * math.tanh(r) / math.sqrt(2)
    return PureState(amps).normalized()


# --- three-mode nesting ---------------------------------------------------


@dataclass(frozen=True)
class ThreeModeResult:
    """Outcome of the three-mode chip.

    Attributes:
        d1, d2: conditional three-mode states after a click on D1 or D2.
        probabilities: herald probabilities ``(p_d1, p_d2)``.
        amplitudes: complex weights of ``|1z0z0z>``, ``|0z1z0z>``, ``|0z0z1z>`` for D1.
        phases: arguments of those weights relative to the first one.
    """

    d1: PureState
    d2: PureState
    probabilities: tuple
    amplitudes: tuple
    phases: tuple


THREE_MODE_NETWORK = CircuitSpec(7, (
    Phase(7, math.pi),
    Coupler(4, 5, math.pi / 2),
    Coupler(6, 7, math.pi / 2),
    Coupler(5, 6, math.pi / 2),
))


def three_mode_first_order(r: float, taps: Sequence[tuple[float, float]], cutoff: int,
                           theta_s: float = 0.0) -> PureState:
    """Seven-mode weak-tap state with one photon routed into the ancillas.

    Mode 1 taps into 4, mode 3 into 7 and mode 2 splits equally into 5 and 6.
    Only the single-ancilla-photon component is kept; the passive network
    conserves photon number, so nothing else can reach a single click.
    """
    (r1, t1), (r2, t2), (r3, t3) = taps
    sq = gaussian.squeezed_number_state(0, gaussian.SqueezeParam(r, theta_s), cutoff)
    anc = fock.vacuum(1, 1)
    base = fock.tensor(sq, sq, sq, anc, anc, anc, anc)
    total = np.zeros_like(base.amplitudes)
    routes = ((1, 4, r1 / t1), (2, 5, r2 / (math.sqrt(2) * t2)), (2, 6, r2 / (math.sqrt(2) * t2)),
              (3, 7, r3 / t3))
    for src, dst, k in routes:
        moved = fock.apply_ladder(fock.apply_ladder(base, src, "annihilate"), dst, "create")
        total = total - 1j * k * moved.amplitudes
    return PureState(total, base.leakage).normalized()


def three_mode_chip(r: float, taps: Sequence[tuple[float, float]], cutoff: int | None = None,
                    theta_s: float = 0.0) -> ThreeModeResult:
    """Herald three-mode entanglement with the nested 3 dB coupler network.

    Couplers join modes (4, 5) and (6, 7), then (5, 6); D1 watches mode 5 and
    D2 mode 6. A pi phase on mode 7 sets the D1 phases to (0, pi/4, pi/2).
    Probabilities are conditional on exactly one ancilla photon.
    """
    for rr, tt in taps:
        if not (0 <= rr <= 1 and 0 <= tt <= 1 and abs(rr * rr + tt * tt - 1) < 1e-9):
            raise ValueError("each tap needs r^2 + t^2 = 1")
    if cutoff is None:
        cutoff = gaussian.default_cutoff(r, 1e-12)
    if r == 0:
        raise ImpossibleHeraldError(0.0)
    state = three_mode_first_order(r, taps, cutoff, theta_s)
    state = simulate(THREE_MODE_NETWORK, state)
    out1, p1 = fock.project_pattern(state, HeraldPattern({4: 0, 5: 1, 6: 0, 7: 0}))
    out2, p2 = fock.project_pattern(state, HeraldPattern({4: 0, 5: 0, 6: 1, 7: 0}))
    out1, out2 = fock.fix_gauge(out1), fock.fix_gauge(out2)
    zeta = gaussian.SqueezeParam(r, theta_s)
    one = gaussian.squeezed_number_state(1, zeta, cutoff)
    zero = gaussian.squeezed_number_state(0, zeta, cutoff)
    amps = []
    for pos in range(3):
        kets = [one if k == pos else zero for k in range(3)]
        branch = fock.tensor(*kets)
        amps.append(complex(np.vdot(branch.amplitudes, out1.amplitudes)))
    ref = np.angle(amps[0])
    phases = tuple(float(math.remainder(np.angle(a) - ref, 2 * math.pi)) for a in amps)
    return ThreeModeResult(out1, out2, (p1, p2), tuple(amps), phases)


# --- device arithmetic ----------------------------------------------------


def qpm_period(beta_p: float, beta_s: float, beta_i: float) -> float:
    """Quasi-phase-matching period ``2 pi / (beta_p - beta_s - beta_i)`` in metres."""
    mismatch = beta_p - beta_s - beta_i
    if not mismatch > 0:
        raise ValueError("propagation-constant mismatch must be positive")
    return 2 * math.pi / mismatch


def eo_phase(n: float, r_eo: float, voltage: float, electrode_length: float, wavelength: float,
             gap: float, push_pull: bool = False) -> float:
    """Electro-optic phase ``n^3 r V pi L / (lambda d)``.

    ``push_pull`` models the reversed-electrode interferometer, whose two arms
    are driven in opposition and accumulate twice the differential phase.
    """
    if min(n, electrode_length, wavelength, gap) <= 0:
        raise ValueError("geometry must be positive")
    phi = n**3 * r_eo * voltage * math.pi * electrode_length / (wavelength * gap)
    return 2 * phi if push_pull else phi


@dataclass(frozen=True)
class BudgetInput:
    """Inputs of the heralded-flux estimate.

    Attributes:
        pair_flux: source pairs per nm per mW per second.
        prop_loss_db_per_cm, length_cm: propagation loss and chip length.
        geometric_loss_db, coupling_loss_db: fixed losses.
        detector_efficiency: herald detector efficiency in [0, 1].
        tap_reflectance: ``r^2`` of each weak coupler.
        tap_count: number of lossy channels.
    """

    pair_flux: float = 1.4e7
    prop_loss_db_per_cm: float = 0.3
    length_cm: float = 5.0
    geometric_loss_db: float = 1.0
    coupling_loss_db: float = 1.0
    detector_efficiency: float = 0.10
    tap_reflectance: float = 0.01
    tap_count: int = 2

    def __post_init__(self):
        for name in ("pair_flux", "prop_loss_db_per_cm", "length_cm", "geometric_loss_db",
                     "coupling_loss_db", "detector_efficiency", "tap_reflectance", "tap_count"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and non-negative")
        if self.detector_efficiency > 1:
            raise ValueError("detector_efficiency must not exceed 1")


def heralded_flux(b: BudgetInput) -> float:
    """Usable heralded states per second per nm per mW."""
    loss_db = b.prop_loss_db_per_cm * b.length_cm + b.geometric_loss_db + b.coupling_loss_db
    return b.pair_flux * b.detector_efficiency * (b.tap_count * b.tap_reflectance) * 10 ** (-loss_db / 10)

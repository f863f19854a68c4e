"""Flat ``key=value`` run configuration for the command line."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

from vortexlab.angles import parse_angle
from vortexlab.chip import DEFAULT_T, VortexParams

DEFAULT_DIGITS = 12
PRECISION_ENV = "VORTEXLAB_PRECISION"

_ANGLE_KEYS = {"theta_s", "phi1", "phi2"}
_FLOAT_KEYS = {"r", "eta", "t1", "t2", "t3"}
_INT_KEYS = {"cutoff", "herald"}
_CHOICE_KEYS = {"order": ("exact", "first")}
KNOWN_KEYS = _ANGLE_KEYS | _FLOAT_KEYS | _INT_KEYS | set(_CHOICE_KEYS)


class ConfigError(ValueError):
    """Malformed or unknown configuration entry."""


def parse_key_values(text: str) -> dict[str, str]:
    """Split ``key=value`` lines; ``#`` starts a comment, blank lines are skipped."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (p.strip() for p in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


@dataclass(frozen=True)
class RunConfig:
    """Parameters of a chip run.

    ``t2`` and ``eta`` are alternatives: with ``t2`` set, ``eta`` follows from
    the two tap transmittances.
    """

    scenario: str = "chip"
    params: VortexParams = field(default_factory=VortexParams)
    t1: float = DEFAULT_T
    t2: float | None = None
    t3: float | None = None
    cutoff: int | None = None
    herald: int = 3
    order: str = "exact"
    precision: int = DEFAULT_DIGITS

    @classmethod
    def from_text(cls, text: str, scenario: str = "chip") -> "RunConfig":
        raw = parse_key_values(text)
        values = {}
        for key, value in raw.items():
            if key not in KNOWN_KEYS:
                raise ConfigError(f"unknown key {key!r}")
            try:
                if key in _ANGLE_KEYS:
                    values[key] = parse_angle(value)
                elif key in _FLOAT_KEYS:
                    values[key] = float(value)
                    if not math.isfinite(values[key]):
                        raise ValueError("not finite")
                elif key in _INT_KEYS:
                    values[key] = int(value)
                else:
                    if value not in _CHOICE_KEYS[key]:
                        raise ValueError(f"expected one of {_CHOICE_KEYS[key]}")
                    values[key] = value
            except ValueError as exc:
                raise ConfigError(f"bad value for {key!r}: {value!r} ({exc})") from None
        if "eta" in values and "t2" in values:
            raise ConfigError("give either eta or t2, not both")
        t1 = values.get("t1", DEFAULT_T)
        t2 = values.get("t2")
        for name, t in (("t1", t1), ("t2", t2), ("t3", values.get("t3"))):
            if t is not None and not 0 < t < 1:
                raise ConfigError(f"{name} must lie in (0, 1)")
        eta = values.get("eta", 1.0)
        if t2 is not None:
            r1, r2 = math.sqrt(1 - t1 * t1), math.sqrt(1 - t2 * t2)
            eta = r2 * t1 / (r1 * t2)
        if values.get("herald", 3) not in (3, 4):
            raise ConfigError("herald must be 3 or 4")
        if values.get("cutoff") is not None and values["cutoff"] < 1:
            raise ConfigError("cutoff must be positive")
        try:
            params = VortexParams(
                r=values.get("r", 0.3),
                theta_s=values.get("theta_s", 0.0),
                eta=eta,
                phi1=values.get("phi1", math.pi / 2),
                phi2=values.get("phi2", math.pi / 2),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return cls(
            scenario=scenario,
            params=params,
            t1=t1,
            t2=t2,
            t3=values.get("t3"),
            cutoff=values.get("cutoff"),
            herald=values.get("herald", 3),
            order=values.get("order", "exact"),
            precision=precision_from_env(),
        )


def precision_from_env(env=None) -> int:
    """Significant digits for CSV output, overridable via ``VORTEXLAB_PRECISION``."""
    env = os.environ if env is None else env
    raw = env.get(PRECISION_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_DIGITS
    try:
        digits = int(raw)
    except ValueError:
        raise ConfigError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None
    if not 1 <= digits <= 17:
        raise ConfigError(f"{PRECISION_ENV} must lie in 1..17")
    return digits

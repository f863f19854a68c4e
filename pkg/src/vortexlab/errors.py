"""Exception types raised by vortexlab."""


class VortexLabError(Exception):
    """Base class for all package errors."""


class CutoffError(VortexLabError, ValueError):
    """A photon number does not fit below the Fock cutoff."""


class LeakageError(VortexLabError):
    """A non-norm-preserving step lost more weight than the allowed tolerance."""

    def __init__(self, leakage, tolerance):
        self.leakage = leakage
        self.tolerance = tolerance
        super().__init__(
            f"truncation leakage {leakage:.3e} exceeds tolerance {tolerance:.1e}; "
            "raise the cutoff or pass allow_leakage=True"
        )


class ImpossibleHeraldError(VortexLabError):
    """The requested herald pattern has (numerically) zero probability."""

    def __init__(self, probability):
        self.probability = probability
        super().__init__(f"herald probability {probability:.3e} is below 1e-15")


class ShapeMismatchError(VortexLabError, ValueError):
    """Two states do not live in the same truncated space."""


class UndefinedRatioError(VortexLabError, ValueError):
    """The two-mode-squeezed-vacuum baseline vanishes (r = 0)."""


class ConsistencyError(VortexLabError, ArithmeticError):
    """Two routes to the same quantity disagree beyond tolerance."""


class UnsupportedAnalyticError(VortexLabError, ValueError):
    """A closed form was requested outside its domain (complex squeezing)."""

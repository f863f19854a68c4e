"""Truncated Fock-space simulation of heralded quantum vortex states."""

from vortexlab.errors import (
    ConsistencyError,
    CutoffError,
    ImpossibleHeraldError,
    LeakageError,
    ShapeMismatchError,
    UndefinedRatioError,
    UnsupportedAnalyticError,
    VortexLabError,
)
from vortexlab.fock import HeraldPattern, PureState

__version__ = "0.1.0"

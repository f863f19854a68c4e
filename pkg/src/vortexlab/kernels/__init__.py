"""Hot numerical loops with a compiled backend and a numpy fallback.

The compiled extension is used when it imports; setting the environment
variable ``VORTEXLAB_KERNELS=python`` forces the numpy fallback. ``BACKEND``
names the active choice.
"""

import os

from vortexlab.kernels import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("VORTEXLAB_KERNELS", "").lower() != "python":
    try:
        from vortexlab.kernels import _ckernels as _impl  # noqa: F811

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

hermite_functions = _impl.hermite_functions
displacement_matrices = _impl.displacement_matrices
displaced_parity = _impl.displaced_parity

__all__ = ["BACKEND", "hermite_functions", "displacement_matrices", "displaced_parity"]

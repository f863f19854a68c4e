"""Compare the compiled and numpy kernel backends.

Usage: ``python benchmarks/bench_kernels.py [--repeat N]``
"""

import argparse
import timeit

import numpy as np

from vortexlab.kernels import _pykernels

try:
    from vortexlab.kernels import _ckernels
except ImportError:
    _ckernels = None


def _cases():
    rng = np.random.default_rng(0)
    x = np.linspace(-8, 8, 4001)
    betas = rng.normal(size=400) + 1j * rng.normal(size=400)
    psi = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    psi /= np.linalg.norm(psi)
    b1 = rng.normal(size=2000) + 1j * rng.normal(size=2000)
    b2 = rng.normal(size=2000) + 1j * rng.normal(size=2000)
    return [
        ("hermite_functions x=4001 n=40", "hermite_functions", (x, 40)),
        ("displacement_matrices 400 x 30^2", "displacement_matrices", (betas, 30)),
        ("displaced_parity 2000 pts 12x12", "displaced_parity", (psi, b1, b2)),
    ]


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; only the numpy backend is available")
    print(f"{'kernel':40s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s} {'max diff':>10s}")
    for label, name, inputs in _cases():
        py = getattr(_pykernels, name)
        t_py = min(timeit.repeat(lambda: py(*inputs), number=1, repeat=args.repeat)) * 1e3
        if _ckernels is None:
            print(f"{label:40s} {t_py:10.2f} {'-':>10s} {'-':>8s} {'-':>10s}")
            continue
        cy = getattr(_ckernels, name)
        t_cy = min(timeit.repeat(lambda: cy(*inputs), number=1, repeat=args.repeat)) * 1e3
        diff = float(np.max(np.abs(np.asarray(py(*inputs)) - np.asarray(cy(*inputs)))))
        print(f"{label:40s} {t_py:10.2f} {t_cy:10.2f} {t_py / t_cy:8.2f} {diff:10.1e}")


if __name__ == "__main__":
    main()

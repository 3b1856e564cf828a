"""Compare the compiled and pure-Python eigen-kernels (numpy/LAPACK for scale).

    python benchmarks/bench_eig.py [--repeat 2000]

Also times one full 2001-point sweep of the six-level model per backend.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from epsweep import _pyeig

try:
    from epsweep import _ceig
except ImportError:
    _ceig = None


def time_kernel(fn, mats, repeat):
    start = time.perf_counter()
    for i in range(repeat):
        fn(mats[i % len(mats)])
    return (time.perf_counter() - start) / repeat


SWEEP_SNIPPET = """
import time
from epsweep import BACKEND
from epsweep.config import load_config
from epsweep.sweep import sweep
cfg = load_config("fig1_n6")
t = time.perf_counter()
sweep(cfg.model, cfg.grid)
print(BACKEND, time.perf_counter() - t)
"""


def time_sweep(backend):
    env = dict(os.environ, EPSWEEP_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", SWEEP_SNIPPET], env=env,
                         capture_output=True, text=True, check=True).stdout.split()
    return out[0], float(out[1])


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=2000)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    kernels = [("python", _pyeig.schur_eig)]
    if _ceig is not None:
        kernels.append(("cython", _ceig.schur_eig))
    kernels.append(("numpy.linalg.eig", np.linalg.eig))

    print(f"{'N':>3} " + " ".join(f"{name:>18}" for name, _ in kernels) + "   (us per call)")
    for n in (2, 3, 4, 6, 8, 12):
        mats = []
        for _ in range(64):
            a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            mats.append(a + a.T)
        times = [time_kernel(fn, mats, args.repeat if name != "python" else args.repeat // 4)
                 for name, fn in kernels]
        print(f"{n:>3} " + " ".join(f"{t * 1e6:>18.1f}" for t in times))

    print("\nfull sweep, six levels, 2001 points:")
    for backend in ("python", "cython"):
        name, secs = time_sweep(backend)
        print(f"  requested {backend:>6} -> ran {name:>6}: {secs:.3f} s")


if __name__ == "__main__":
    main()

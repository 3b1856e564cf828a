"""Dense eigendecomposition of small complex-symmetric matrices.

``eig_general`` runs a Hessenberg + single-shift QR kernel.  The kernel is
compiled (``_ceig``) when the extension was built, otherwise the pure-Python
twin in ``_pyeig`` is used.  Set ``EPSWEEP_BACKEND=python`` to force the
fallback.
"""
from __future__ import annotations

import cmath
import os
from dataclasses import dataclass

import numpy as np

from . import _pyeig

TOL_RESID = 1e-10
TOL_DEFECT = 1e-8

if os.environ.get("EPSWEEP_BACKEND", "").lower() == "python":
    _kernel = _pyeig.schur_eig
    BACKEND = "python"
else:
    try:
        from ._ceig import schur_eig as _kernel
        BACKEND = "cython"
    except ImportError:  # extension not built
        _kernel = _pyeig.schur_eig
        BACKEND = "python"


class ConvergenceError(RuntimeError):
    """QR iteration ran out of budget, or the residual check failed."""

    def __init__(self, message: str, worst_residual: float):
        super().__init__(f"{message} (worst residual {worst_residual:.3e})")
        self.worst_residual = worst_residual


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Eigenpairs at one parameter value; ``vectors[:, i]`` pairs with ``values[i]``."""

    values: np.ndarray
    vectors: np.ndarray
    c_norms_ok: np.ndarray

    def __len__(self) -> int:
        return len(self.values)

    def reorder(self, perm) -> "EigenSystem":
        perm = np.asarray(perm, dtype=int)
        return EigenSystem(self.values[perm], self.vectors[:, perm],
                           self.c_norms_ok[perm])


def _principal_sqrt(z: complex) -> complex:
    root = cmath.sqrt(z)
    # nonnegative real part; on the imaginary axis, nonnegative imaginary part
    if root.real < 0 or (root.real == 0 and root.imag < 0):
        root = -root
    return root


def eig2_closed_form(h) -> tuple[complex, complex, complex]:
    """Eigenvalues ``mean +/- Z`` of a symmetric 2x2 matrix, plus ``Z``.

    ``Z = sqrt((e1 - e2)**2 + 4 w**2) / 2`` on the branch with Re Z >= 0
    (Im Z >= 0 on ties), so ``first - second == 2 Z``.
    """
    h = np.asarray(h, dtype=np.complex128)
    e1, e2 = complex(h[0, 0]), complex(h[1, 1])
    w = complex(h[0, 1])
    z = 0.5 * _principal_sqrt((e1 - e2) ** 2 + 4.0 * w * w)
    mean = 0.5 * (e1 + e2)
    return mean + z, mean - z, z


def _residuals(h: np.ndarray, values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    return np.linalg.norm(h @ vectors - vectors * values, axis=0)


def eig_general(h, tol_resid: float = TOL_RESID, max_iter: int = 30) -> EigenSystem:
    """All eigenpairs of a square complex matrix.

    Eigenvalues come back sorted by real part, then imaginary part.  Vectors
    have unit Hermitian norm and are not yet c-normalized (``c_norms_ok`` is
    all False until :func:`c_normalize` runs).
    """
    h = np.asarray(h, dtype=np.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1] or h.shape[0] < 2:
        raise ValueError(f"need a square matrix with N >= 2, got shape {h.shape}")
    if not np.all(np.isfinite(h)):
        raise ValueError("matrix has non-finite entries")
    values, vectors, _, ok = _kernel(h, max_iter)
    hnorm = np.linalg.norm(h)
    res = _residuals(h, values, vectors)
    worst = float(res.max()) if hnorm == 0 else float(res.max() / hnorm)
    if not ok:
        raise ConvergenceError("QR iteration budget exhausted", worst)
    if hnorm > 0 and worst > tol_resid:
        raise ConvergenceError("eigenpair residual above tolerance", worst)
    order = np.lexsort((values.imag, values.real))
    return EigenSystem(values[order], vectors[:, order].copy(),
                       np.zeros(len(values), dtype=bool))


def c_normalize(system: EigenSystem, tol_defect: float = TOL_DEFECT) -> EigenSystem:
    """Scale each eigenvector so that ``phi^T phi == 1`` (no conjugation).

    Vectors that are (nearly) self-orthogonal, ``|phi^T phi| < tol_defect`` at
    unit Hermitian norm, cannot be c-normalized; they are kept at unit
    Hermitian norm and flagged with ``c_norms_ok = False``.
    """
    vecs = np.array(system.vectors, dtype=np.complex128)
    ok = np.zeros(vecs.shape[1], dtype=bool)
    for k in range(vecs.shape[1]):
        phi = vecs[:, k]
        nrm = np.linalg.norm(phi)
        if nrm == 0:
            raise ValueError(f"eigenvector {k} is the zero vector")
        phi = phi / nrm
        cprod = complex(phi @ phi)
        if abs(cprod) < tol_defect:
            vecs[:, k] = phi
            continue
        phi = phi / cmath.sqrt(cprod)
        big = phi[np.argmax(np.abs(phi))]
        arg = cmath.phase(big)
        if not -np.pi / 2 < arg <= np.pi / 2:
            phi = -phi
        vecs[:, k] = phi
        ok[k] = True
    return EigenSystem(system.values, vecs, ok)


def eigensystem(h, tol_resid: float = TOL_RESID,
                tol_defect: float = TOL_DEFECT) -> EigenSystem:
    """``eig_general`` followed by ``c_normalize``."""
    return c_normalize(eig_general(h, tol_resid), tol_defect)

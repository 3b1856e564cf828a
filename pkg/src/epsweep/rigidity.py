"""Phase rigidity of eigenvectors and its window average."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class EmptyWindowError(ValueError):
    """No trajectory sample falls inside the energy window."""


def phase_rigidity(phi) -> complex:
    """``(phi^T phi) / (phi^dagger phi)``: 1 for real vectors, 0 when self-orthogonal."""
    phi = np.asarray(phi, dtype=np.complex128)
    norm2 = float(np.vdot(phi, phi).real)
    if norm2 == 0.0:
        raise ValueError("phase rigidity of the zero vector is undefined")
    return complex(phi @ phi) / norm2


def rigidities(vectors: np.ndarray) -> np.ndarray:
    """Vectorized :func:`phase_rigidity` over the column vectors of ``vectors[..., :, i]``."""
    vectors = np.asarray(vectors, dtype=np.complex128)
    cprod = np.einsum("...ji,...ji->...i", vectors, vectors)
    norm2 = np.einsum("...ji,...ji->...i", vectors.conj(), vectors).real
    if np.any(norm2 == 0):
        raise ValueError("phase rigidity of the zero vector is undefined")
    return cprod / norm2


@dataclass(frozen=True, eq=False)
class RigidityReport:
    n_states: int
    window: tuple
    samples: int
    averaged_R: float
    per_state: np.ndarray

    @property
    def one_minus_R(self) -> float:
        return 1.0 - self.averaged_R

    def to_dict(self) -> dict:
        return {
            "N": self.n_states,
            "window": [float(self.window[0]), float(self.window[1])],
            "samples": self.samples,
            "R": self.averaged_R,
            "one_minus_R": self.one_minus_R,
        }


def average_rigidity(trajectories, window) -> RigidityReport:
    """Mean ``|r|`` over all (grid point, state) samples with Re E inside ``window``.

    Window bounds are inclusive.  Samples are summed grid-major, state-minor.
    """
    lo, hi = float(window[0]), float(window[1])
    if not lo < hi:
        raise ValueError(f"window must satisfy lo < hi, got ({lo}, {hi})")
    re = trajectories.values.real
    mask = (re >= lo) & (re <= hi)
    count = int(mask.sum())
    if count == 0:
        raise EmptyWindowError(f"no eigenvalue with real part in [{lo}, {hi}]")
    mags = np.abs(trajectories.rigidity)[mask]
    return RigidityReport(
        n_states=trajectories.n_states,
        window=(lo, hi),
        samples=count,
        averaged_R=float(np.sum(mags) / count),
        per_state=trajectories.rigidity,
    )

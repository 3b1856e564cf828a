"""Level models and the Hamiltonians built from them.

A :class:`LevelModel` holds N resonance levels with complex energies
``eps_i(a) = alpha_i + beta_i * a + i * half_gamma_i`` and a complex symmetric
coupling matrix.  ``build_genuine_hamiltonian`` evaluates it at one value of
the control parameter ``a``.  ``build_effective_hamiltonian`` is the separable
closed-system-plus-continuum form ``H_B + sum_c (shift_c(E) - i/2 width_c(E)) v_c v_c^T``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np


class ModelError(ValueError):
    """Invalid level model or configuration block."""


class ProfileDomainError(ValueError):
    """Energy outside the tabulated domain of a channel profile."""


@dataclass(frozen=True)
class LevelSpec:
    alpha: float
    beta: float
    half_gamma: float

    def __post_init__(self):
        for name in ("alpha", "beta", "half_gamma"):
            val = getattr(self, name)
            if not np.isfinite(val):
                raise ModelError(f"level {name} must be finite, got {val!r}")

    def energy(self, a: float) -> float:
        return self.alpha + self.beta * a

    def complex_energy(self, a: float) -> complex:
        return complex(self.alpha + self.beta * a, self.half_gamma)


@dataclass(frozen=True, eq=False)
class LevelModel:
    """N levels plus complex symmetric, zero-diagonal coupling."""

    levels: tuple
    coupling: np.ndarray = field(repr=False)

    def __post_init__(self):
        levels = tuple(self.levels)
        if len(levels) < 2:
            raise ModelError(f"need at least 2 levels, got {len(levels)}")
        coupling = np.array(self.coupling, dtype=np.complex128)
        n = len(levels)
        if coupling.shape != (n, n):
            raise ModelError(
                f"coupling has shape {coupling.shape}, expected ({n}, {n})")
        if not np.all(np.isfinite(coupling)):
            raise ModelError("coupling entries must be finite")
        if np.any(coupling != coupling.T):
            raise ModelError("coupling must be symmetric (omega_ij == omega_ji)")
        if np.any(np.diag(coupling) != 0):
            raise ModelError("coupling diagonal must be zero")
        coupling.setflags(write=False)
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "coupling", coupling)

    @property
    def n(self) -> int:
        return len(self.levels)

    @property
    def half_gammas(self) -> np.ndarray:
        return np.array([lv.half_gamma for lv in self.levels])

    @classmethod
    def uniform(cls, levels: Sequence[LevelSpec], omega: complex) -> "LevelModel":
        """All off-diagonal couplings equal to ``omega``."""
        return cls(tuple(levels), expand_omega(omega, len(levels)))

    def subsystem(self, i: int, j: int) -> "LevelModel":
        """The two-level model made of levels ``i`` and ``j`` and their mutual coupling."""
        if i == j:
            raise ModelError("subsystem needs two distinct levels")
        w = self.coupling[i, j]
        return LevelModel((self.levels[i], self.levels[j]),
                          np.array([[0, w], [w, 0]], dtype=np.complex128))


def expand_omega(omega, n: int) -> np.ndarray:
    """Scalar -> N x N matrix with zero diagonal; arrays pass through."""
    arr = np.asarray(omega, dtype=np.complex128)
    if arr.ndim == 0:
        out = np.full((n, n), complex(arr), dtype=np.complex128)
        np.fill_diagonal(out, 0)
        return out
    return arr.copy()


def build_genuine_hamiltonian(model: LevelModel, a: float) -> np.ndarray:
    """Complex symmetric N x N matrix of ``model`` at control parameter ``a``."""
    h = np.array(model.coupling, dtype=np.complex128)
    for i, lv in enumerate(model.levels):
        h[i, i] = lv.complex_energy(a)
    return h


Profile = Union[Callable[[float], float], tuple]


@dataclass(frozen=True, eq=False)
class ChannelSpec:
    """One decay channel of the effective Hamiltonian.

    ``shift_profile`` and ``width_profile`` are either callables of the energy
    or ``(energies, values)`` tables, linearly interpolated.  Tables reject
    energies outside their range.
    """

    coupling_vector: np.ndarray
    shift_profile: Profile = 0.0
    width_profile: Profile = 0.0

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.coupling_vector, dtype=np.complex128))
        object.__setattr__(self, "coupling_vector", v)
        if isinstance(self.width_profile, tuple):
            vals = np.asarray(self.width_profile[1], dtype=float)
            if np.any(vals < 0):
                raise ModelError("width profile must be nonnegative")

    def shift(self, energy: float) -> float:
        return _eval_profile(self.shift_profile, energy, "shift")

    def width(self, energy: float) -> float:
        w = _eval_profile(self.width_profile, energy, "width")
        if w < 0:
            raise ModelError(f"width profile negative at E={energy}: {w}")
        return w


def _eval_profile(profile, energy: float, name: str) -> float:
    if callable(profile):
        return float(profile(energy))
    if isinstance(profile, tuple):
        grid = np.asarray(profile[0], dtype=float)
        vals = np.asarray(profile[1], dtype=float)
        if not grid[0] <= energy <= grid[-1]:
            raise ProfileDomainError(
                f"{name} profile tabulated on [{grid[0]}, {grid[-1]}], "
                f"energy {energy} outside")
        return float(np.interp(energy, grid, vals))
    return float(profile)


def build_effective_hamiltonian(h_b, channels: Sequence[ChannelSpec],
                                energy: float) -> np.ndarray:
    h_b = np.asarray(h_b)
    if h_b.ndim != 2 or h_b.shape[0] != h_b.shape[1]:
        raise ModelError(f"H_B must be square, got shape {h_b.shape}")
    if not np.array_equal(h_b, h_b.T):
        raise ModelError("H_B must be symmetric")
    n = h_b.shape[0]
    if not channels:
        return h_b.astype(np.complex128)
    h = h_b.astype(np.complex128)
    for ch in channels:
        v = ch.coupling_vector
        if v.shape != (n,):
            raise ModelError(f"channel vector has length {v.shape[0]}, expected {n}")
        shift = ch.shift(energy)
        width = ch.width(energy)
        if shift == 0.0 and width == 0.0:
            continue
        h += complex(shift, -0.5 * width) * np.outer(v, v)
    return h

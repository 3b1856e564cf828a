"""Eigenvalue trajectories, exceptional points and phase rigidity of
non-Hermitian (complex-symmetric) level models."""

__version__ = "0.1.0"

from .eigensolver import (BACKEND, ConvergenceError, EigenSystem, c_normalize,
                          eig2_closed_form, eig_general, eigensystem)
from .epfinder import (EpCandidate, check_ep_relation, find_eps_2x2,
                       find_near_coalescence, z_function)
from .model import (ChannelSpec, LevelModel, LevelSpec, ModelError,
                    build_effective_hamiltonian, build_genuine_hamiltonian)
from .rigidity import RigidityReport, average_rigidity, phase_rigidity
from .sweep import ParameterGrid, TrajectorySet, pair_eigenvalues, sweep

__all__ = [
    "BACKEND", "ChannelSpec", "ConvergenceError", "EigenSystem", "EpCandidate",
    "LevelModel", "LevelSpec", "ModelError", "ParameterGrid", "RigidityReport",
    "TrajectorySet", "average_rigidity", "build_effective_hamiltonian",
    "build_genuine_hamiltonian", "c_normalize", "check_ep_relation",
    "eig2_closed_form", "eig_general", "eigensystem", "find_eps_2x2",
    "find_near_coalescence", "pair_eigenvalues", "phase_rigidity", "sweep",
    "z_function",
]

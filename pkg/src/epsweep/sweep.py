"""Parameter sweeps and continuity pairing of eigenvalue branches."""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import linear_sum_assignment

from .eigensolver import (TOL_DEFECT, TOL_RESID, ConvergenceError, EigenSystem,
                          eigensystem)
from .model import LevelModel, build_genuine_hamiltonian
from .rigidity import rigidities

MAX_EXACT_PAIRING = 8
# relative slack when deciding that two assignment costs tie
TIE_RTOL = 1e-12


class SweepError(RuntimeError):
    def __init__(self, a: float, cause: Exception):
        super().__init__(f"eigensolver failed at a={a!r}: {cause}")
        self.a = a


@dataclass(frozen=True)
class ParameterGrid:
    a_start: float
    a_end: float
    steps: int

    def __post_init__(self):
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValueError(f"steps must be an integer >= 2, got {self.steps!r}")
        if not (np.isfinite(self.a_start) and np.isfinite(self.a_end)):
            raise ValueError("grid bounds must be finite")
        if self.a_start == self.a_end:
            raise ValueError("grid bounds must differ")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.a_start, self.a_end, int(self.steps))

    def refined(self) -> "ParameterGrid":
        """Same interval with the step halved; every old point is kept."""
        return ParameterGrid(self.a_start, self.a_end, 2 * int(self.steps) - 1)


@dataclass(frozen=True, eq=False)
class TrajectorySet:
    """Continuity-paired trajectories.

    Arrays are indexed ``[grid point, state]``.  ``sorted_index[k, i]`` is the
    position of state ``i`` within the raw (real-part sorted) spectrum at grid
    point ``k``; ``vectors[k, :, i]`` is the c-normalized eigenvector.
    """

    grid: ParameterGrid
    values: np.ndarray
    vectors: np.ndarray
    rigidity: np.ndarray
    c_norm_ok: np.ndarray
    sorted_index: np.ndarray

    @property
    def a(self) -> np.ndarray:
        return self.grid.values

    @property
    def n_states(self) -> int:
        return self.values.shape[1]

    def step_permutations(self) -> np.ndarray:
        """Pairing decision at every step, in raw sorted-index space.

        Row ``k`` maps sorted position at ``a_k`` to sorted position at
        ``a_{k+1}``.
        """
        k_count, n = self.sorted_index.shape
        out = np.empty((k_count - 1, n), dtype=int)
        for k in range(k_count - 1):
            out[k, self.sorted_index[k]] = self.sorted_index[k + 1]
        return out


@lru_cache(maxsize=None)
def _permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp)


def pair_eigenvalues(prev: EigenSystem, nxt: EigenSystem) -> np.ndarray:
    """Permutation ``p`` so that ``nxt`` entry ``p[i]`` continues ``prev`` entry ``i``.

    Minimizes the summed squared eigenvalue displacement.  For N <= 8 every
    permutation is scored, and ties go to the largest summed c-product
    overlap ``|phi_prev^T phi_next|``.
    """
    n = len(prev)
    if len(nxt) != n:
        raise ValueError(f"cannot pair {n} states with {len(nxt)}")
    cost = np.abs(prev.values[:, None] - nxt.values[None, :]) ** 2
    if n > MAX_EXACT_PAIRING:
        _, cols = linear_sum_assignment(cost)
        return cols
    perms = _permutations(n)
    rows = np.arange(n)
    totals = cost[rows, perms].sum(axis=1)
    best = totals.min()
    slack = TIE_RTOL * max(best, cost.max(), 1e-300)
    tied = np.flatnonzero(totals <= best + slack)
    if len(tied) == 1:
        return perms[tied[0]].copy()
    overlap = np.abs(prev.vectors.T @ nxt.vectors)
    scores = overlap[rows, perms[tied]].sum(axis=1)
    return perms[tied[np.argmax(scores)]].copy()


def _solve(model, a, tol_resid, tol_defect):
    try:
        return eigensystem(build_genuine_hamiltonian(model, a), tol_resid, tol_defect)
    except (ConvergenceError, ValueError) as exc:
        raise SweepError(float(a), exc) from exc


def sweep(model: LevelModel, grid: ParameterGrid, tol_resid: float = TOL_RESID,
          tol_defect: float = TOL_DEFECT, workers: int | None = None) -> TrajectorySet:
    """Eigensystems over the grid, paired left to right into trajectories.

    With ``workers > 1`` the decompositions run on a thread pool; pairing
    always consumes grid points in index order.
    """
    avals = grid.values
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            systems = list(pool.map(lambda a: _solve(model, a, tol_resid, tol_defect), avals))
    else:
        systems = [_solve(model, a, tol_resid, tol_defect) for a in avals]

    k_count, n = len(avals), model.n
    values = np.empty((k_count, n), dtype=np.complex128)
    vectors = np.empty((k_count, n, n), dtype=np.complex128)
    ok = np.empty((k_count, n), dtype=bool)
    index = np.empty((k_count, n), dtype=int)

    current = systems[0]
    current_index = np.arange(n)
    for k, raw in enumerate(systems):
        if k > 0:
            perm = pair_eigenvalues(current, raw)
            current = raw.reorder(perm)
            current_index = perm
        values[k] = current.values
        vectors[k] = current.vectors
        ok[k] = current.c_norms_ok
        index[k] = current_index
    rig = rigidities(vectors)
    return TrajectorySet(grid, values, vectors, rig, ok, index)

"""Exceptional-point search.

Two routes: the exact roots of the two-level discriminant
``Z(a)**2 = ((eps_1 - eps_2)**2 + 4 w**2) / 4`` (closed form, affine levels),
and a gap/rigidity dip detector over sampled trajectories for N > 2.

An eigenvalue coalescence whose eigenvectors stay rigid (|r| >= 0.9) is a
diabolic point, not an EP.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass

import numpy as np

from .eigensolver import eig2_closed_form, eigensystem
from .model import LevelModel, build_genuine_hamiltonian
from .rigidity import rigidities

DIABOLIC_RIGIDITY = 0.9
RIGIDITY_TOL = 0.2
GAP_TOL_FRACTION = 1e-2
PROBE_OFFSET = 1e-8
REAL_ROOT_TOL = 1e-12


@dataclass(frozen=True)
class EpCandidate:
    a_star: float
    pair: tuple
    gap: float
    rigidity_min: float
    relation_residual: float
    kind: str = "ep"
    a_imag: float = 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pair"] = [int(p) for p in self.pair]
        return d


def check_ep_relation(phi1, phi2) -> float:
    """Distance between ``phi1`` and the best phase-rotated ``phi2``.

    Both vectors are scaled to unit Hermitian norm first.  Zero means
    ``phi1 = +/- i e^{i theta} phi2`` for some theta; orthogonal vectors give
    sqrt(2).  Symmetric in its arguments.
    """
    phi1 = np.asarray(phi1, dtype=np.complex128)
    phi2 = np.asarray(phi2, dtype=np.complex128)
    n1, n2 = np.linalg.norm(phi1), np.linalg.norm(phi2)
    if n1 == 0 or n2 == 0:
        raise ValueError("EP relation undefined for a zero vector")
    phi1 = phi1 / n1
    phi2 = phi2 / n2
    overlap = complex(np.vdot(phi2, phi1))
    if overlap == 0:
        return math.sqrt(2.0)
    phase = overlap / abs(overlap)
    return float(np.linalg.norm(phi1 - phase * phi2))


def z_function(model: LevelModel, a: float, pair=(0, 1)) -> complex:
    """Half the eigenvalue splitting of the two-level subsystem ``pair`` at ``a``."""
    sub = model.subsystem(*pair)
    return eig2_closed_form(build_genuine_hamiltonian(sub, a))[2]


def _two_level_matrix(model: LevelModel, a: complex) -> np.ndarray:
    # allows complex a for off-axis diagnostics
    l1, l2 = model.levels
    w = model.coupling[0, 1]
    return np.array([[l1.alpha + l1.beta * a + 1j * l1.half_gamma, w],
                     [w, l2.alpha + l2.beta * a + 1j * l2.half_gamma]],
                    dtype=np.complex128)


def _probe(model: LevelModel, a: complex, offset: float):
    """Rigidity and EP-relation diagnostics at ``a +/- offset``."""
    rig_min = math.inf
    resid = 0.0
    for da in (-offset, offset):
        es = eigensystem(_two_level_matrix(model, a + da))
        r = np.abs(rigidities(es.vectors))
        rig_min = min(rig_min, float(r.min()))
        resid = max(resid, check_ep_relation(es.vectors[:, 0], es.vectors[:, 1]))
    return rig_min, resid


def _classify(rig_min: float) -> str:
    return "diabolic" if rig_min >= DIABOLIC_RIGIDITY else "ep"


def find_eps_2x2(model: LevelModel, a_range, pair=(0, 1),
                 probe_offset: float = PROBE_OFFSET) -> list[EpCandidate]:
    """Closed-form coalescences of a two-level (sub)system inside ``a_range``.

    With affine levels ``Z**2`` factors as
    ``(d0 + d1 a + 2 i w)(d0 + d1 a - 2 i w) / 4``, so its two roots are
    explicit.  Real roots become ``ep``/``diabolic`` candidates; complex roots
    whose real part lies in range become ``off_axis`` candidates carrying
    ``a_imag``.  If the levels are parallel and ``Z`` vanishes identically,
    a single candidate at the range start is returned.
    """
    sub = model.subsystem(*pair)
    lo, hi = sorted(float(x) for x in a_range)
    l1, l2 = sub.levels
    w = complex(sub.coupling[0, 1])
    d0 = complex(l1.alpha - l2.alpha, l1.half_gamma - l2.half_gamma)
    d1 = l1.beta - l2.beta
    pair = tuple(int(p) for p in pair)

    if d1 == 0:
        if abs(d0 * d0 + 4 * w * w) > 0:
            return []
        roots = [complex(lo)]
    else:
        roots = [(-d0 - 2j * w) / d1, (-d0 + 2j * w) / d1]
        if roots[0] == roots[1]:
            roots = roots[:1]

    out = []
    for root in roots:
        is_real = abs(root.imag) <= REAL_ROOT_TOL * max(1.0, abs(root.real))
        if not lo <= root.real <= hi:
            continue
        if is_real:
            a_star = root.real
            _, _, z = eig2_closed_form(build_genuine_hamiltonian(sub, a_star))
            rig_min, resid = _probe(sub, a_star, probe_offset * max(1.0, abs(a_star)))
            out.append(EpCandidate(a_star, pair, float(2 * abs(z)), rig_min, resid,
                                   _classify(rig_min)))
        else:
            _, _, z = eig2_closed_form(_two_level_matrix(sub, root))
            rig_min, resid = _probe(sub, root, probe_offset * max(1.0, abs(root)))
            out.append(EpCandidate(root.real, pair, float(2 * abs(z)), rig_min, resid,
                                   "off_axis", root.imag))
    out.sort(key=lambda c: (c.a_star, c.a_imag))
    return out


def median_level_spacing(trajectories) -> float:
    """Median distance between real-part neighbours, over all grid points."""
    vals = trajectories.values
    order = np.argsort(vals.real, axis=1, kind="stable")
    srt = np.take_along_axis(vals, order, axis=1)
    return float(np.median(np.abs(np.diff(srt, axis=1))))


def _parabolic_vertex(a, g, k) -> float:
    h_left = a[k] - a[k - 1]
    h_right = a[k + 1] - a[k]
    denom = g[k - 1] - 2.0 * g[k] + g[k + 1]
    if denom <= 0:
        return float(a[k])
    shift = 0.5 * h_left * (g[k - 1] - g[k + 1]) / denom
    return float(a[k] + min(max(shift, -h_left), h_right))


def find_near_coalescence(trajectories, gap_tol: float | None = None,
                          rigidity_tol: float = RIGIDITY_TOL,
                          include_diabolic: bool = False) -> list[EpCandidate]:
    """Gap minima between sampled branches where the eigenvectors lose rigidity.

    A candidate is an interior local minimum of ``|E_i - E_j|`` below
    ``gap_tol`` with ``min(|r_i|, |r_j|) < rigidity_tol`` over the three
    samples around it.  ``gap_tol`` defaults to a fraction of the median level
    spacing.  Dips where both rigidities stay >= 0.9 are reported as
    ``diabolic`` only when ``include_diabolic`` is set.
    """
    a = trajectories.a
    vals = trajectories.values
    rig = np.abs(trajectories.rigidity)
    vecs = trajectories.vectors
    if gap_tol is None:
        gap_tol = GAP_TOL_FRACTION * median_level_spacing(trajectories)
    out = []
    for i, j in itertools.combinations(range(trajectories.n_states), 2):
        g = np.abs(vals[:, i] - vals[:, j])
        for k in range(1, len(a) - 1):
            if not (g[k] <= g[k - 1] and g[k] < g[k + 1] and g[k] < gap_tol):
                continue
            window = slice(k - 1, k + 2)
            rig_min = float(min(rig[window, i].min(), rig[window, j].min()))
            if rig_min < rigidity_tol:
                kind = "ep"
            elif include_diabolic and rig_min >= DIABOLIC_RIGIDITY:
                kind = "diabolic"
            else:
                continue
            resid = check_ep_relation(vecs[k, :, i], vecs[k, :, j])
            out.append(EpCandidate(_parabolic_vertex(a, g, k), (i, j), float(g[k]),
                                   rig_min, resid, kind))
    out.sort(key=lambda c: (c.pair, c.a_star))
    return out

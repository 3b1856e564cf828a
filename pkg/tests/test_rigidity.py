import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epsweep.rigidity import (EmptyWindowError, average_rigidity, phase_rigidity,
                              rigidities)
from epsweep.sweep import ParameterGrid, sweep


@pytest.mark.parametrize("phi, expected", [
    ([1, 0], 1),
    (np.array([1, 1j]) / np.sqrt(2), 0),
    (np.array([2, 1j]) / np.sqrt(5), 3 / 5),
])
def test_examples(phi, expected):
    assert phase_rigidity(phi) == pytest.approx(expected, abs=1e-15)


def test_zero_vector():
    with pytest.raises(ValueError):
        phase_rigidity([0, 0])


def test_real_symmetric_eigenvectors(rng):
    a = rng.normal(size=(6, 6))
    _, v = np.linalg.eigh(a + a.T)
    np.testing.assert_allclose(np.abs(rigidities(v)), 1, atol=1e-12)


def test_vectorized_matches_scalar(rng):
    v = rng.normal(size=(7, 4, 4)) + 1j * rng.normal(size=(7, 4, 4))
    r = rigidities(v)
    for k in range(7):
        for i in range(4):
            assert r[k, i] == pytest.approx(phase_rigidity(v[k, :, i]), abs=1e-15)


finite = st.floats(-5, 5, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(finite, finite), min_size=2, max_size=6),
       st.tuples(finite, finite).filter(lambda c: abs(complex(*c)) > 1e-3))
def test_scale_and_phase_invariance(parts, c):
    phi = np.array([complex(*p) for p in parts])
    if np.linalg.norm(phi) < 1e-6:
        return
    c = complex(*c)
    r1 = abs(phase_rigidity(phi))
    assert abs(phase_rigidity(c * phi)) == pytest.approx(r1, abs=1e-12)
    assert 0 <= r1 <= 1 + 1e-12


class TestAverage:
    def test_hermitian_limit(self, fig_model):
        traj = sweep(fig_model(4, hermitian=True), ParameterGrid(0, 2, 201))
        rep = average_rigidity(traj, (0, 2))
        assert rep.averaged_R == pytest.approx(1, abs=1e-12)
        assert rep.one_minus_R == 1 - rep.averaged_R

    def test_sample_count_and_mean(self, fig_model):
        traj = sweep(fig_model(3), ParameterGrid(0, 2, 101))
        rep = average_rigidity(traj, (0.5, 1.5))
        re = traj.values.real
        mask = (re >= 0.5) & (re <= 1.5)
        assert rep.samples == mask.sum()
        assert rep.averaged_R == pytest.approx(np.abs(traj.rigidity)[mask].mean(), rel=1e-15)
        d = rep.to_dict()
        assert d == {"N": 3, "window": [0.5, 1.5], "samples": rep.samples,
                     "R": rep.averaged_R, "one_minus_R": rep.one_minus_R}

    def test_ep_sample_lowers_r(self, pair_model):
        # grid contains a = 2/3 to the last bits
        traj = sweep(pair_model, ParameterGrid(0, 2, 3001))
        k = np.argmin(np.abs(traj.a - 2 / 3))
        assert np.abs(traj.rigidity[k]).max() < 1e-3
        rep = average_rigidity(traj, (0, 2))
        assert rep.averaged_R < 1

    def test_empty_window(self, fig_model):
        traj = sweep(fig_model(3), ParameterGrid(0, 1, 11))
        with pytest.raises(EmptyWindowError):
            average_rigidity(traj, (50, 60))
        with pytest.raises(ValueError):
            average_rigidity(traj, (1, 1))

    def test_adding_rigid_samples_cannot_lower(self, fig_model):
        # widening the window onto an extra Hermitian-like sample set: compare
        # mean of a set with the same set plus |r| = 1 entries
        traj = sweep(fig_model(4), ParameterGrid(0, 2, 51))
        mags = np.abs(traj.rigidity).ravel()
        base = mags.mean()
        grown = np.concatenate([mags, np.ones(17)]).mean()
        assert grown >= base

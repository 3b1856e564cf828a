import cmath
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epsweep import eigensolver
from epsweep import _pyeig
from epsweep.eigensolver import (ConvergenceError, EigenSystem, c_normalize,
                                 eig2_closed_form, eig_general, eigensystem)
from epsweep.model import build_genuine_hamiltonian

from conftest import random_complex_symmetric

KERNELS = [pytest.param(_pyeig.schur_eig, id="python")]
try:
    from epsweep import _ceig
    KERNELS.append(pytest.param(_ceig.schur_eig, id="cython"))
except ImportError:
    pass


def char_poly_residual(h, lam):
    # independent check: lam^2 - tr lam + det == 0
    tr = h[0, 0] + h[1, 1]
    det = h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0]
    return abs(lam * lam - tr * lam + det)


class TestClosedForm:
    def test_symmetric_two_level(self):
        l1, l2, z = eig2_closed_form([[0, 0.2], [0.2, 0]])
        assert (l1, l2) == (0.2, -0.2)
        assert z == 0.2

    def test_coalescence(self):
        # eps1 - eps2 = -0.4i exactly cancels 4 w^2 = 0.16
        e = 0.37
        l1, l2, z = eig2_closed_form([[e - 0.5j, 0.2], [0.2, e - 0.1j]])
        assert abs(z) < 1e-16
        assert l1 == pytest.approx(e - 0.3j, abs=1e-15)
        assert l2 == pytest.approx(e - 0.3j, abs=1e-15)

    def test_decoupled(self):
        l1, l2, z = eig2_closed_form(np.diag([1.0, -1.0]))
        assert (l1, l2, z) == (1, -1, 1)

    def test_branch(self, rng):
        for _ in range(200):
            h = random_complex_symmetric(rng, 2)
            l1, l2, z = eig2_closed_form(h)
            assert z.real > 0 or (z.real == 0 and z.imag >= 0)
            assert l1 - l2 == pytest.approx(2 * z, abs=1e-14)
            for lam in (l1, l2):
                assert char_poly_residual(h, lam) < 1e-12 * (1 + np.abs(h).max()) ** 2

    def test_pure_imaginary_z_branch(self):
        # (e1-e2)^2 + 4w^2 = -1 -> Z = i/2
        _, _, z = eig2_closed_form([[0, 0.5j], [0.5j, 0]])
        assert z == 0.5j


@pytest.mark.parametrize("kernel", KERNELS)
class TestKernel:
    @pytest.mark.parametrize("n", [2, 3, 4, 6, 9])
    def test_matches_lapack(self, kernel, rng, n):
        for _ in range(30):
            h = random_complex_symmetric(rng, n)
            vals, vecs, _, ok = kernel(h, 30)
            assert ok
            ref = np.linalg.eigvals(h)
            assert np.allclose(np.sort_complex(vals), np.sort_complex(ref), atol=1e-11)
            res = np.linalg.norm(h @ vecs - vecs * vals, axis=0)
            assert res.max() <= 1e-13 * np.linalg.norm(h)
            np.testing.assert_allclose(np.linalg.norm(vecs, axis=0), 1.0, atol=1e-14)

    def test_general_nonsymmetric(self, kernel, rng):
        h = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        vals, vecs, _, ok = kernel(h, 30)
        assert ok
        assert np.linalg.norm(h @ vecs - vecs * vals) < 1e-12

    def test_jordan_block(self, kernel):
        vals, vecs, _, ok = kernel(np.array([[0, 1], [0, 0]], dtype=complex), 30)
        assert ok
        np.testing.assert_array_equal(vals, [0, 0])
        np.testing.assert_allclose(np.abs(vecs[0]), [1, 1])

    def test_zero_matrix(self, kernel):
        vals, vecs, _, ok = kernel(np.zeros((3, 3), dtype=complex), 30)
        assert ok and np.all(vals == 0)
        np.testing.assert_array_equal(vecs, np.eye(3))

    def test_budget_exhaustion_reported(self, kernel):
        # cyclic permutation: unshifted-looking cases need iterations
        h = np.roll(np.eye(4), 1, axis=0).astype(complex)
        _, _, _, ok = kernel(h, 0)
        assert not ok


@pytest.mark.skipif(len(KERNELS) < 2, reason="compiled kernel not built")
def test_backends_agree(rng):
    for n in (2, 3, 5, 6):
        for _ in range(50):
            h = random_complex_symmetric(rng, n)
            a = _pyeig.schur_eig(h)
            b = _ceig.schur_eig(h)
            np.testing.assert_allclose(a[0], b[0], atol=1e-12)
            np.testing.assert_allclose(a[1], b[1], atol=1e-10)


def test_backend_env_override():
    env = dict(os.environ, EPSWEEP_BACKEND="python")
    out = subprocess.run([sys.executable, "-c", "import epsweep; print(epsweep.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


class TestEigGeneral:
    def test_diagonal(self):
        d = np.array([0.3 - 0.1j, -1 + 0j, 2 - 0.5j, 0.3 - 0.2j])
        es = eig_general(np.diag(d))
        np.testing.assert_array_equal(es.values, [-1, 0.3 - 0.2j, 0.3 - 0.1j, 2 - 0.5j])
        np.testing.assert_array_equal(np.abs(es.vectors), np.eye(4)[:, [1, 3, 0, 2]])

    def test_agrees_with_closed_form(self, rng):
        for _ in range(1000):
            h = random_complex_symmetric(rng, 2)
            l1, l2, _ = eig2_closed_form(h)
            got = eig_general(h).values
            ref = np.array([l1, l2])
            ref = ref[np.lexsort((ref.imag, ref.real))]
            assert np.abs(got - ref).max() <= 1e-10 * np.linalg.norm(h)

    def test_hermitian_limit(self, fig_model):
        for n in (3, 4, 5, 6):
            m = fig_model(n, hermitian=True)
            for a in np.linspace(0, 2, 11):
                es = eig_general(build_genuine_hamiltonian(m, a))
                assert np.abs(es.values.imag).max() <= 1e-12

    def test_ordering(self, rng):
        for _ in range(50):
            es = eig_general(random_complex_symmetric(rng, 5))
            keys = list(zip(es.values.real, es.values.imag))
            assert keys == sorted(keys)

    @pytest.mark.parametrize("bad", [np.zeros((1, 1)), np.zeros((2, 3)),
                                     np.array([[np.nan, 0], [0, 0]])])
    def test_bad_input(self, bad):
        with pytest.raises(ValueError):
            eig_general(bad)

    def test_convergence_error(self, monkeypatch):
        def stuck(h, max_iter):
            n = h.shape[0]
            return np.zeros(n, complex), np.eye(n, dtype=complex), max_iter, False
        monkeypatch.setattr(eigensolver, "_kernel", stuck)
        with pytest.raises(ConvergenceError) as info:
            eig_general(np.array([[0, 1], [1, 0]], dtype=complex))
        assert info.value.worst_residual > 0.1

    def test_left_equals_right(self, rng):
        for n in (3, 6):
            h = random_complex_symmetric(rng, n)
            es = eig_general(h)
            for i in range(n):
                phi = es.vectors[:, i]
                left = phi @ h - es.values[i] * phi
                assert np.linalg.norm(left) <= 1e-10 * np.linalg.norm(h)

    def test_bendixson_band(self, fig_model):
        for n in (3, 4, 5, 6):
            m = fig_model(n)
            g = m.half_gammas
            for a in np.linspace(0, 2, 41):
                im = eig_general(build_genuine_hamiltonian(m, a)).values.imag
                assert im.min() >= g.min() - 1e-10
                assert im.max() <= g.max() + 1e-10


complex_entries = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 6).flatmap(
    lambda n: st.lists(complex_entries, min_size=n * n, max_size=n * n)))
def test_trace_conservation(entries):
    n = int(round(len(entries) ** 0.5))
    h = np.array(entries, dtype=complex).reshape(n, n)
    h = h + h.T
    es = eig_general(h)
    assert abs(es.values.sum() - np.trace(h)) <= 1e-12 * max(np.linalg.norm(h), 1e-300)


class TestCNormalize:
    def test_real_symmetric_unchanged(self, rng):
        a = rng.normal(size=(4, 4))
        a = a + a.T
        w, v = np.linalg.eigh(a)
        v = v * np.sign(v[np.argmax(np.abs(v), axis=0), range(4)])
        es = c_normalize(EigenSystem(w.astype(complex), v.astype(complex),
                                     np.zeros(4, bool)))
        np.testing.assert_allclose(es.vectors, v, atol=1e-14)
        assert es.c_norms_ok.all()

    def test_self_orthogonal_flagged(self):
        phi = np.array([[1], [1j]]) / np.sqrt(2)
        es = c_normalize(EigenSystem(np.array([0j]), phi, np.zeros(1, bool)))
        assert not es.c_norms_ok[0]
        np.testing.assert_allclose(es.vectors, phi, rtol=1e-15)

    def test_biorthogonality(self, rng):
        for _ in range(20):
            h = random_complex_symmetric(rng, 4)
            es = eigensystem(h)
            assert es.c_norms_ok.all()
            gram = es.vectors.T @ es.vectors
            np.testing.assert_allclose(np.diag(gram), 1, atol=1e-12)
            off = np.abs(gram - np.diag(np.diag(gram))).max()
            assert off <= 1e-8

    def test_sign_convention(self, rng):
        es = eigensystem(random_complex_symmetric(rng, 5))
        for k in range(5):
            phi = es.vectors[:, k]
            big = phi[np.argmax(np.abs(phi))]
            assert -np.pi / 2 < cmath.phase(big) <= np.pi / 2

    def test_zero_vector(self):
        with pytest.raises(ValueError):
            c_normalize(EigenSystem(np.zeros(2, complex), np.zeros((2, 2), complex),
                                    np.zeros(2, bool)))

"""Pure-Python complex Schur eigen-kernel.

Line-for-line twin of ``_ceig.pyx``; used when the compiled extension is not
available (or ``EPSWEEP_BACKEND=python``).  Works on lists of Python complex
numbers, which beats per-element numpy indexing for the N <= 10 matrices this
package deals with.
"""
from __future__ import annotations

import math

import numpy as np

EPS = 2.220446049250313e-16
SAFMIN = 2.2250738585072014e-308


def _cabs1(z: complex) -> float:
    return abs(z.real) + abs(z.imag)


def _csqrt(z: complex) -> complex:
    # principal branch, explicit so both backends agree bit-for-bit in spirit
    x, y = z.real, z.imag
    r = math.hypot(x, y)
    if r == 0.0:
        return 0j
    if x >= 0.0:
        t = math.sqrt(0.5 * (r + x))
        return complex(t, y / (2.0 * t))
    t = math.sqrt(0.5 * (r - x))
    return complex(abs(y) / (2.0 * t), math.copysign(t, y))


def _hessenberg(h, q, n):
    """Householder reduction to upper Hessenberg form, accumulating into q."""
    for k in range(n - 2):
        xnorm = 0.0
        for i in range(k + 1, n):
            xnorm = math.hypot(xnorm, abs(h[i][k]))
        if xnorm == 0.0:
            continue
        x0 = h[k + 1][k]
        ax0 = abs(x0)
        phase = x0 / ax0 if ax0 > 0.0 else 1.0 + 0j
        alpha = -phase * xnorm
        v = [0j] * n
        v[k + 1] = x0 - alpha
        for i in range(k + 2, n):
            v[i] = h[i][k]
        vnorm = 0.0
        for i in range(k + 1, n):
            vnorm = math.hypot(vnorm, abs(v[i]))
        if vnorm == 0.0:
            continue
        for i in range(k + 1, n):
            v[i] /= vnorm
        # h <- (I - 2 v v*) h
        for j in range(n):
            s = 0j
            for i in range(k + 1, n):
                s += v[i].conjugate() * h[i][j]
            s *= 2.0
            for i in range(k + 1, n):
                h[i][j] -= v[i] * s
        # h <- h (I - 2 v v*),  q <- q (I - 2 v v*)
        for m in (h, q):
            for i in range(n):
                row = m[i]
                s = 0j
                for j in range(k + 1, n):
                    s += row[j] * v[j]
                s *= 2.0
                for j in range(k + 1, n):
                    row[j] -= s * v[j].conjugate()
        h[k + 1][k] = alpha
        for i in range(k + 2, n):
            h[i][k] = 0j


def _qr_sweep(h, z, n, lo, hi, mu):
    """One explicit single-shift QR step on the active block lo..hi."""
    for k in range(lo, hi + 1):
        h[k][k] -= mu
    rots = []
    for k in range(lo, hi):
        x = h[k][k]
        y = h[k + 1][k]
        r = math.hypot(abs(x), abs(y))
        if r == 0.0:
            c, s = 1.0 + 0j, 0j
        else:
            c, s = x / r, y / r
        rots.append((c, s))
        cc, sc = c.conjugate(), s.conjugate()
        rk, rk1 = h[k], h[k + 1]
        for j in range(k, n):
            a, b = rk[j], rk1[j]
            rk[j] = cc * a + sc * b
            rk1[j] = -s * a + c * b
        h[k + 1][k] = 0j
    for k in range(lo, hi):
        c, s = rots[k - lo]
        cc, sc = c.conjugate(), s.conjugate()
        top = min(k + 2, hi)
        for i in range(top + 1):
            row = h[i]
            a, b = row[k], row[k + 1]
            row[k] = a * c + b * s
            row[k + 1] = -a * sc + b * cc
        for i in range(n):
            row = z[i]
            a, b = row[k], row[k + 1]
            row[k] = a * c + b * s
            row[k + 1] = -a * sc + b * cc
    for k in range(lo, hi + 1):
        h[k][k] += mu


def _wilkinson(h, hi):
    a = h[hi - 1][hi - 1]
    b = h[hi - 1][hi]
    c = h[hi][hi - 1]
    d = h[hi][hi]
    half = 0.5 * (a - d)
    root = _csqrt(half * half + b * c)
    l1 = 0.5 * (a + d) + root
    l2 = 0.5 * (a + d) - root
    return l1 if _cabs1(l1 - d) <= _cabs1(l2 - d) else l2


def _schur(h, z, n, max_iter):
    """Reduce Hessenberg h to upper triangular form in place."""
    hnorm = 0.0
    for row in h:
        for v in row:
            hnorm = max(hnorm, _cabs1(v))
    hi = n - 1
    its = 0
    total = 0
    while hi > 0:
        lo = hi
        while lo > 0:
            sub = _cabs1(h[lo][lo - 1])
            tst = _cabs1(h[lo - 1][lo - 1]) + _cabs1(h[lo][lo])
            if tst == 0.0:
                tst = hnorm
            if sub <= EPS * tst or sub <= SAFMIN:
                h[lo][lo - 1] = 0j
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            its = 0
            continue
        if its >= max_iter:
            return total, False
        its += 1
        total += 1
        if its % 10 == 0:
            # exceptional shift to break cycles
            mu = h[hi][hi] + 0.75 * _cabs1(h[hi][hi - 1])
        else:
            mu = _wilkinson(h, hi)
        _qr_sweep(h, z, n, lo, hi, mu)
    return total, True


def _triangular_vectors(t, z, n):
    """Right eigenvectors of triangular t, mapped back through z, unit 2-norm."""
    tnorm = 0.0
    for row in t:
        for v in row:
            tnorm = max(tnorm, _cabs1(v))
    small = max(EPS * tnorm, SAFMIN)
    vecs = [[0j] * n for _ in range(n)]  # column k stored in vecs[k]
    for k in range(n):
        lam = t[k][k]
        x = [0j] * n
        x[k] = 1.0 + 0j
        for i in range(k - 1, -1, -1):
            s = 0j
            ti = t[i]
            for j in range(i + 1, k + 1):
                s += ti[j] * x[j]
            d = ti[i] - lam
            if _cabs1(d) < small:
                d = small + 0j
            x[i] = -s / d
            xmax = _cabs1(x[i])
            if xmax > 1e100:
                for j in range(i, k + 1):
                    x[j] /= xmax
        v = [0j] * n
        for i in range(n):
            s = 0j
            zi = z[i]
            for j in range(k + 1):
                s += zi[j] * x[j]
            v[i] = s
        nrm = 0.0
        for c in v:
            nrm = math.hypot(nrm, abs(c))
        vecs[k] = [c / nrm for c in v]
    return vecs


def schur_eig(a, max_iter=30):
    """Eigenvalues and unit right eigenvectors (columns) of a complex matrix.

    Returns ``(values, vectors, iterations, converged)``.
    """
    arr = np.asarray(a, dtype=np.complex128)
    n = arr.shape[0]
    h = [[complex(v) for v in row] for row in arr]
    z = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]
    _hessenberg(h, z, n)
    total, ok = _schur(h, z, n, max_iter)
    values = np.array([h[i][i] for i in range(n)], dtype=np.complex128)
    vecs = _triangular_vectors(h, z, n)
    vectors = np.array(vecs, dtype=np.complex128).T.copy()
    return values, vectors, total, ok

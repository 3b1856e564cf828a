# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled complex Schur eigen-kernel (Hessenberg reduction + shifted QR).

Same algorithm, same operation order as ``_pyeig``; see that module for the
reference implementation.
"""
import numpy as np

from libc.math cimport sqrt, hypot, fabs, copysign

cdef double EPS = 2.220446049250313e-16
cdef double SAFMIN = 2.2250738585072014e-308


cdef inline double cabs1(double complex z) noexcept nogil:
    return fabs(z.real) + fabs(z.imag)


cdef inline double cabs(double complex z) noexcept nogil:
    return hypot(z.real, z.imag)


cdef inline double complex conj(double complex z) noexcept nogil:
    return z.real - 1j * z.imag


cdef inline double complex csqrt(double complex z) noexcept nogil:
    cdef double x = z.real, y = z.imag, r, t
    r = hypot(x, y)
    if r == 0.0:
        return 0
    if x >= 0.0:
        t = sqrt(0.5 * (r + x))
        return t + 1j * (y / (2.0 * t))
    t = sqrt(0.5 * (r - x))
    return fabs(y) / (2.0 * t) + 1j * copysign(t, y)


cdef void hessenberg(double complex[:, ::1] h, double complex[:, ::1] q,
                     double complex[::1] v, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j, k
    cdef double xnorm, vnorm, ax0
    cdef double complex x0, phase, alpha, s
    for k in range(n - 2):
        xnorm = 0.0
        for i in range(k + 1, n):
            xnorm = hypot(xnorm, cabs(h[i, k]))
        if xnorm == 0.0:
            continue
        x0 = h[k + 1, k]
        ax0 = cabs(x0)
        if ax0 > 0.0:
            phase = x0 / ax0
        else:
            phase = 1.0
        alpha = -phase * xnorm
        for i in range(n):
            v[i] = 0
        v[k + 1] = x0 - alpha
        for i in range(k + 2, n):
            v[i] = h[i, k]
        vnorm = 0.0
        for i in range(k + 1, n):
            vnorm = hypot(vnorm, cabs(v[i]))
        if vnorm == 0.0:
            continue
        for i in range(k + 1, n):
            v[i] = v[i] / vnorm
        for j in range(n):
            s = 0
            for i in range(k + 1, n):
                s = s + conj(v[i]) * h[i, j]
            s = s * 2.0
            for i in range(k + 1, n):
                h[i, j] = h[i, j] - v[i] * s
        for i in range(n):
            s = 0
            for j in range(k + 1, n):
                s = s + h[i, j] * v[j]
            s = s * 2.0
            for j in range(k + 1, n):
                h[i, j] = h[i, j] - s * conj(v[j])
        for i in range(n):
            s = 0
            for j in range(k + 1, n):
                s = s + q[i, j] * v[j]
            s = s * 2.0
            for j in range(k + 1, n):
                q[i, j] = q[i, j] - s * conj(v[j])
        h[k + 1, k] = alpha
        for i in range(k + 2, n):
            h[i, k] = 0


cdef void qr_sweep(double complex[:, ::1] h, double complex[:, ::1] z,
                   double complex[::1] cs, double complex[::1] ss,
                   Py_ssize_t n, Py_ssize_t lo, Py_ssize_t hi,
                   double complex mu) noexcept nogil:
    cdef Py_ssize_t i, j, k, top
    cdef double r
    cdef double complex x, y, c, s, cc, sc, a, b
    for k in range(lo, hi + 1):
        h[k, k] = h[k, k] - mu
    for k in range(lo, hi):
        x = h[k, k]
        y = h[k + 1, k]
        r = hypot(cabs(x), cabs(y))
        if r == 0.0:
            c = 1.0
            s = 0
        else:
            c = x / r
            s = y / r
        cs[k] = c
        ss[k] = s
        cc = conj(c)
        sc = conj(s)
        for j in range(k, n):
            a = h[k, j]
            b = h[k + 1, j]
            h[k, j] = cc * a + sc * b
            h[k + 1, j] = -s * a + c * b
        h[k + 1, k] = 0
    for k in range(lo, hi):
        c = cs[k]
        s = ss[k]
        cc = conj(c)
        sc = conj(s)
        top = k + 2
        if top > hi:
            top = hi
        for i in range(top + 1):
            a = h[i, k]
            b = h[i, k + 1]
            h[i, k] = a * c + b * s
            h[i, k + 1] = -a * sc + b * cc
        for i in range(n):
            a = z[i, k]
            b = z[i, k + 1]
            z[i, k] = a * c + b * s
            z[i, k + 1] = -a * sc + b * cc
    for k in range(lo, hi + 1):
        h[k, k] = h[k, k] + mu


cdef double complex wilkinson(double complex[:, ::1] h, Py_ssize_t hi) noexcept nogil:
    cdef double complex a = h[hi - 1, hi - 1], b = h[hi - 1, hi]
    cdef double complex c = h[hi, hi - 1], d = h[hi, hi]
    cdef double complex half = 0.5 * (a - d)
    cdef double complex root = csqrt(half * half + b * c)
    cdef double complex l1 = 0.5 * (a + d) + root
    cdef double complex l2 = 0.5 * (a + d) - root
    if cabs1(l1 - d) <= cabs1(l2 - d):
        return l1
    return l2


cdef int schur(double complex[:, ::1] h, double complex[:, ::1] z,
               double complex[::1] cs, double complex[::1] ss,
               Py_ssize_t n, int max_iter, int *total) noexcept nogil:
    cdef Py_ssize_t i, j, lo, hi
    cdef int its = 0
    cdef double hnorm = 0.0, sub, tst
    cdef double complex mu
    for i in range(n):
        for j in range(n):
            if cabs1(h[i, j]) > hnorm:
                hnorm = cabs1(h[i, j])
    hi = n - 1
    total[0] = 0
    while hi > 0:
        lo = hi
        while lo > 0:
            sub = cabs1(h[lo, lo - 1])
            tst = cabs1(h[lo - 1, lo - 1]) + cabs1(h[lo, lo])
            if tst == 0.0:
                tst = hnorm
            if sub <= EPS * tst or sub <= SAFMIN:
                h[lo, lo - 1] = 0
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            its = 0
            continue
        if its >= max_iter:
            return 0
        its += 1
        total[0] += 1
        if its % 10 == 0:
            mu = h[hi, hi] + 0.75 * cabs1(h[hi, hi - 1])
        else:
            mu = wilkinson(h, hi)
        qr_sweep(h, z, cs, ss, n, lo, hi, mu)
    return 1


cdef void triangular_vectors(double complex[:, ::1] t, double complex[:, ::1] z,
                             double complex[:, ::1] out, double complex[::1] x,
                             Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j, k
    cdef double tnorm = 0.0, small, xmax, nrm
    cdef double complex lam, s, d
    for i in range(n):
        for j in range(n):
            if cabs1(t[i, j]) > tnorm:
                tnorm = cabs1(t[i, j])
    small = EPS * tnorm
    if small < SAFMIN:
        small = SAFMIN
    for k in range(n):
        lam = t[k, k]
        for i in range(n):
            x[i] = 0
        x[k] = 1.0
        for i in range(k - 1, -1, -1):
            s = 0
            for j in range(i + 1, k + 1):
                s = s + t[i, j] * x[j]
            d = t[i, i] - lam
            if cabs1(d) < small:
                d = small
            x[i] = -s / d
            xmax = cabs1(x[i])
            if xmax > 1e100:
                for j in range(i, k + 1):
                    x[j] = x[j] / xmax
        nrm = 0.0
        for i in range(n):
            s = 0
            for j in range(k + 1):
                s = s + z[i, j] * x[j]
            out[i, k] = s
            nrm = hypot(nrm, cabs(s))
        for i in range(n):
            out[i, k] = out[i, k] / nrm


def schur_eig(a, int max_iter=30):
    """Eigenvalues and unit right eigenvectors (columns) of a complex matrix.

    Returns ``(values, vectors, iterations, converged)``.
    """
    cdef double complex[:, ::1] h = np.array(a, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = h.shape[0], i
    cdef double complex[:, ::1] z = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] out = np.empty((n, n), dtype=np.complex128)
    cdef double complex[::1] work = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] cs = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] ss = np.empty(n, dtype=np.complex128)
    cdef int ok, total = 0
    with nogil:
        hessenberg(h, z, work, n)
        ok = schur(h, z, cs, ss, n, max_iter, &total)
        triangular_vectors(h, z, out, work, n)
    values = np.empty(n, dtype=np.complex128)
    for i in range(n):
        values[i] = h[i, i]
    return values, np.asarray(out), total, bool(ok)

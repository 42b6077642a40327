# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi sweep for dense complex Hermitian matrices.

One call performs a single cyclic sweep over all (p, q) pairs in row-major
order, rotating both the matrix ``a`` and the eigenvector accumulator ``v``
in place.  The rotation order and arithmetic mirror ``_jacobi_py.sweep``.
"""

from libc.math cimport fabs, sqrt


def sweep(double complex[:, ::1] a, double complex[:, ::1] v):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, k
    cdef double complex apq, ph, phc, t1, t2
    cdef double app, aqq, mag, theta, t, c, s

    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = a[p, q]
            mag = sqrt(apq.real * apq.real + apq.imag * apq.imag)
            if mag == 0.0:
                continue
            ph = apq / mag
            phc = ph.conjugate()
            app = a[p, p].real
            aqq = a[q, q].real
            theta = (aqq - app) / (2.0 * mag)
            if theta >= 0.0:
                t = 1.0 / (theta + sqrt(theta * theta + 1.0))
            else:
                t = 1.0 / (theta - sqrt(theta * theta + 1.0))
            c = 1.0 / sqrt(t * t + 1.0)
            s = t * c

            # columns p, q:  a <- a @ V
            for k in range(n):
                t1 = a[k, p]
                t2 = a[k, q]
                a[k, p] = c * t1 - s * phc * t2
                a[k, q] = s * t1 + c * phc * t2
            # rows p, q:  a <- V^H @ a
            for k in range(n):
                t1 = a[p, k]
                t2 = a[q, k]
                a[p, k] = c * t1 - s * ph * t2
                a[q, k] = s * t1 + c * ph * t2
            a[p, q] = 0.0
            a[q, p] = 0.0
            a[p, p] = a[p, p].real
            a[q, q] = a[q, q].real
            for k in range(n):
                t1 = v[k, p]
                t2 = v[k, q]
                v[k, p] = c * t1 - s * phc * t2
                v[k, q] = s * t1 + c * phc * t2

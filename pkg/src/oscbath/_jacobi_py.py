"""Pure-python cyclic Jacobi sweep, used when the compiled kernel is absent.

Arithmetic and rotation order match ``_jacobi_cy.sweep``; the row/column
updates are vectorized with numpy slicing so a sweep costs O(n) array ops
per rotation instead of O(n) interpreted-loop iterations.
"""

import numpy as np


def sweep(a, v):
    """One cyclic Jacobi sweep over all (p, q), p < q, in row-major order.

    Rotates the Hermitian matrix ``a`` and the unitary accumulator ``v``
    in place.
    """
    n = a.shape[0]
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = a[p, q]
            mag = abs(apq)
            if mag == 0.0:
                continue
            ph = apq / mag
            phc = ph.conjugate()
            theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
            if theta >= 0.0:
                t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
            else:
                t = 1.0 / (theta - np.sqrt(theta * theta + 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c

            colp = a[:, p].copy()
            colq = a[:, q].copy()
            a[:, p] = c * colp - (s * phc) * colq
            a[:, q] = s * colp + (c * phc) * colq
            rowp = a[p, :].copy()
            rowq = a[q, :].copy()
            a[p, :] = c * rowp - (s * ph) * rowq
            a[q, :] = s * rowp + (c * ph) * rowq
            a[p, q] = 0.0
            a[q, p] = 0.0
            a[p, p] = a[p, p].real
            a[q, q] = a[q, q].real

            colp = v[:, p].copy()
            colq = v[:, q].copy()
            v[:, p] = c * colp - (s * phc) * colq
            v[:, q] = s * colp + (c * phc) * colq

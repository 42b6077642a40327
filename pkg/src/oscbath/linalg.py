"""Dense Hermitian eigendecomposition and pivoted inversion.

The eigensolver is a cyclic Jacobi iteration with a fixed sweep order and a
fixed eigenvector phase convention, so identical input bytes always produce
identical output bytes.  The sweep kernel is compiled (Cython) when
available; set ``OSCBATH_PURE_PYTHON=1`` to force the numpy fallback.
"""

import os
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import _jacobi_py

if os.environ.get("OSCBATH_PURE_PYTHON", "") == "1":
    _kernel = _jacobi_py
    JACOBI_BACKEND = "python"
else:
    try:
        from . import _jacobi_cy as _kernel

        JACOBI_BACKEND = "cython"
    except ImportError:
        _kernel = _jacobi_py
        JACOBI_BACKEND = "python"

# convergence: stop when off(a) <= OFF_TOL_FACTOR * ||h||_F
OFF_TOL_FACTOR = 1e-14
MAX_SWEEPS = 100
DEFAULT_CONDITION_CAP = 1e12


class JacobiConvergenceError(RuntimeError):
    """Jacobi iteration failed to reach the off-diagonal threshold."""

    def __init__(self, off_norm, threshold, sweeps):
        self.off_norm = off_norm
        self.threshold = threshold
        self.sweeps = sweeps
        super().__init__(
            f"no convergence after {sweeps} sweeps: "
            f"off-diagonal norm {off_norm:.3e} > threshold {threshold:.3e}"
        )


class SingularMatrixError(RuntimeError):
    """Matrix is singular to tolerance; carries the condition estimate."""

    def __init__(self, condition, cap):
        self.condition = condition
        self.cap = cap
        super().__init__(
            f"matrix singular to tolerance: condition estimate "
            f"{condition:.3e} exceeds cap {cap:.3e}"
        )


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.

    ``vectors[:, k]`` is the eigenvector for ``eigenvalues[k]`` expressed in
    the input basis, i.e. ``vectors[n, k] = <basis_n | mode_k>``.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self):
        return self.eigenvalues.shape[0]

    def reconstruct(self):
        """U diag(alpha) U^H, for residual checks."""
        return (self.vectors * self.eigenvalues) @ self.vectors.conj().T


def adjoint(a):
    return np.asarray(a).conj().T


def matmul(a, b):
    return np.asarray(a) @ np.asarray(b)


def check_hermitian(h):
    h = np.ascontiguousarray(h, dtype=np.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1] or h.shape[0] < 1:
        raise ValueError(f"expected a square matrix of dim >= 1, got shape {h.shape}")
    if not np.all(np.isfinite(h.view(np.float64))):
        raise ValueError("matrix has non-finite entries")
    dev = np.abs(h - h.conj().T).max()
    if dev != 0.0:
        raise ValueError(f"matrix not exactly Hermitian: max|h - h^H| = {dev:.3e}")
    return h


def _off_norm(a):
    off = a - np.diag(np.diag(a))
    return np.linalg.norm(off)


def eigendecompose(h, max_sweeps=MAX_SWEEPS, tol_factor=OFF_TOL_FACTOR):
    """Cyclic Jacobi eigendecomposition of a Hermitian matrix.

    Deterministic: fixed sweep order, eigenvalues sorted ascending, each
    eigenvector rephased so its largest-magnitude component is real and
    positive.

    Raises
    ------
    JacobiConvergenceError
        if the off-diagonal norm is still above threshold after
        ``max_sweeps`` sweeps.
    """
    h = check_hermitian(h)
    n = h.shape[0]
    a = h.copy()
    v = np.eye(n, dtype=np.complex128)
    scale = np.linalg.norm(h)
    threshold = tol_factor * scale

    off = _off_norm(a)
    sweeps = 0
    while off > threshold:
        if sweeps >= max_sweeps:
            raise JacobiConvergenceError(off, threshold, sweeps)
        _kernel.sweep(a, v)
        sweeps += 1
        off = _off_norm(a)

    eigenvalues = np.diag(a).real.copy()
    order = np.argsort(eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    vectors = v[:, order]

    # phase convention: largest-magnitude component real positive
    for k in range(n):
        col = vectors[:, k]
        i = int(np.argmax(np.abs(col)))
        ph = col[i] / abs(col[i])
        vectors[:, k] = col * ph.conjugate()

    return SpectralDecomposition(eigenvalues=eigenvalues, vectors=np.ascontiguousarray(vectors))


def lu_condition(lu):
    """Pivot-ratio condition estimate from an LU factor: max|u_ii|/min|u_ii|."""
    pivots = np.abs(np.diag(lu))
    pmin = pivots.min()
    if pmin == 0.0:
        return np.inf
    return pivots.max() / pmin


def invert(p, condition_cap=DEFAULT_CONDITION_CAP):
    """Inverse of a real square matrix by pivoted LU elimination.

    Returns ``(inverse, condition_estimate)``; raises SingularMatrixError
    when the pivot-ratio estimate exceeds ``condition_cap``.
    """
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {p.shape}")
    with warnings.catch_warnings():
        # exactly singular input raises via the condition cap just below
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(p, check_finite=True)
    cond = lu_condition(lu)
    if cond > condition_cap:
        raise SingularMatrixError(cond, condition_cap)
    inv = scipy.linalg.lu_solve((lu, piv), np.eye(p.shape[0]))
    return inv, cond

"""Transition amplitudes from the spectral decomposition.

With ``U[n, k] = <basis_n | mode_k>`` and mode frequencies ``alpha_k``, the
propagator matrix elements are

    A[n, m](t) = sum_k exp(-i alpha_k t) conj(U[n, k]) U[m, k]

(the amplitude to reach state m at time t starting from state n), and the
first and second time derivatives carry extra factors (-i alpha_k).
Everything is closed-form in t; derivatives are never computed by
differencing.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class AmplitudeSet:
    """A(t) and its first two time derivatives at a single time."""

    t: float
    a: np.ndarray       # (dim, dim) complex, unitary
    adot: np.ndarray
    addot: np.ndarray

    @property
    def dim(self):
        return self.a.shape[0]

    def unitarity_defect(self):
        """max |A A^H - I|."""
        g = self.a @ self.a.conj().T
        np.fill_diagonal(g, np.diag(g) - 1.0)
        return np.abs(g).max()


def amplitudes_at(sd, t):
    """Full amplitude matrices A, dA/dt, d2A/dt2 at time t."""
    if not np.isfinite(t):
        raise ValueError(f"time must be finite, got {t}")
    alpha = sd.eigenvalues
    u = sd.vectors
    phases = np.exp(-1j * alpha * t)
    uc = u.conj()
    a = uc @ (u * phases).T
    adot = uc @ (u * (-1j * alpha * phases)).T
    addot = uc @ (u * (-(alpha ** 2) * phases)).T
    return AmplitudeSet(t=float(t), a=a, adot=adot, addot=addot)


def survival_amplitude(sd, t):
    """A[0, 0](t): amplitude for the system quantum to remain in place."""
    weights = np.abs(sd.vectors[0, :]) ** 2
    return complex(np.exp(-1j * sd.eigenvalues * t) @ weights)


def survival_series(sd, times):
    """(A00, dA00, d2A00) over a time grid, as three complex arrays.

    Scalar spectral sums; O(len(times) * dim) instead of full matrices.
    """
    times = np.asarray(times, dtype=np.float64)
    alpha = sd.eigenvalues
    weights = np.abs(sd.vectors[0, :]) ** 2
    phases = np.exp(-1j * np.outer(times, alpha))
    a = phases @ weights
    adot = phases @ (-1j * alpha * weights)
    addot = phases @ (-(alpha ** 2) * weights)
    return a, adot, addot


def system_row_series(sd, times):
    """A[0, m](t) over a time grid: array of shape (len(times), dim)."""
    times = np.asarray(times, dtype=np.float64)
    alpha = sd.eigenvalues
    u = sd.vectors
    weighted = np.exp(-1j * np.outer(times, alpha)) * u[0, :].conj()
    return weighted @ u.T

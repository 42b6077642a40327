"""Exact population master equation with time-dependent coefficients.

P[n, m](t) = |A[n, m](t)|^2 is doubly stochastic because A is unitary.  The
occupations evolve as N(t) = P(t) N(0), and differentiating and eliminating
N(0) gives the time-local equation dN/dt = W(t) N(t) with
W(t) = Pdot(t) P(t)^{-1}.  W exists only where P is invertible; singular
times are flagged, never regularized.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .linalg import lu_condition

DEFAULT_CONDITION_CAP = 1e10


class SingularTransitionMatrixError(RuntimeError):
    """P(t) is singular to tolerance; W(t) does not exist there."""

    def __init__(self, t, condition, cap):
        self.t = t
        self.condition = condition
        self.cap = cap
        super().__init__(
            f"transition matrix singular at t = {t:.6g}: condition estimate "
            f"{condition:.3e} exceeds cap {cap:.3e}"
        )


@dataclass(frozen=True)
class TransitionProbabilities:
    t: float
    p: np.ndarray       # (dim, dim) real, doubly stochastic
    pdot: np.ndarray    # elementwise d|A|^2/dt = 2 Re(conj(A) Adot)

    def row_sum_defect(self):
        return np.abs(self.p.sum(axis=1) - 1.0).max()

    def col_sum_defect(self):
        return np.abs(self.p.sum(axis=0) - 1.0).max()


@dataclass(frozen=True)
class MasterCoefficients:
    t: float
    w: np.ndarray       # (dim, dim) real; nan-filled when singular
    condition: float    # pivot-ratio condition estimate of P
    singular: bool = False


def transition_probabilities(amps):
    p = np.abs(amps.a) ** 2
    pdot = 2.0 * (amps.a.conj() * amps.adot).real
    return TransitionProbabilities(t=amps.t, p=p, pdot=pdot)


def master_coefficients(tp, condition_cap=DEFAULT_CONDITION_CAP):
    """W(t) = Pdot P^{-1}, via pivoted LU of P.

    Raises SingularTransitionMatrixError (carrying t and the condition
    estimate) when P is singular to tolerance.
    """
    with warnings.catch_warnings():
        # an exactly singular P raises via the condition cap just below
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(tp.p)
    cond = lu_condition(lu)
    if cond > condition_cap:
        raise SingularTransitionMatrixError(tp.t, cond, condition_cap)
    # solve P^T X^T = Pdot^T  =>  X = Pdot P^{-1}
    w = scipy.linalg.lu_solve((lu, piv), tp.pdot.T, trans=1).T
    return MasterCoefficients(t=tp.t, w=w, condition=cond)


def master_coefficients_flagged(tp, condition_cap=DEFAULT_CONDITION_CAP):
    """Like master_coefficients but returns a nan-filled, flagged result
    instead of raising at singular times."""
    try:
        return master_coefficients(tp, condition_cap)
    except SingularTransitionMatrixError as exc:
        dim = tp.p.shape[0]
        return MasterCoefficients(t=tp.t, w=np.full((dim, dim), np.nan),
                                  condition=exc.condition, singular=True)


@dataclass(frozen=True)
class PopulationTrajectory:
    times: np.ndarray        # (K,)
    occupations: np.ndarray  # (K, dim)

    @property
    def totals(self):
        return self.occupations.sum(axis=1)

    def conservation_defect(self):
        """Max relative drift of the total quantum number."""
        totals = self.totals
        return np.abs(totals - totals[0]).max() / abs(totals[0])


def evolve_populations(tps, initial):
    """N(t) = P(t) N(0) on the grid carried by the TransitionProbabilities."""
    initial = np.asarray(initial, dtype=np.float64)
    times = np.array([tp.t for tp in tps])
    occ = np.array([tp.p @ initial for tp in tps])
    return PopulationTrajectory(times=times, occupations=occ)


def master_residual(tps, mcs, initial):
    """Residuals of the master equation, per grid point.

    Returns ``(gain_loss, balance)``: max_n |dN_n/dt - sum_k W_nk N_k| for
    the matrix form, and the same for the explicit gain-minus-loss form
    built from the off-diagonals of W.  dN/dt comes from the analytic Pdot,
    never from differencing the trajectory.  Singular points give nan.
    """
    initial = np.asarray(initial, dtype=np.float64)
    res_matrix = np.empty(len(tps))
    res_balance = np.empty(len(tps))
    for i, (tp, mc) in enumerate(zip(tps, mcs)):
        if mc.singular:
            res_matrix[i] = np.nan
            res_balance[i] = np.nan
            continue
        occ = tp.p @ initial
        dndt = tp.pdot @ initial
        res_matrix[i] = np.abs(dndt - mc.w @ occ).max()
        w_off = mc.w - np.diag(np.diag(mc.w))
        gain = w_off @ occ
        loss = w_off.sum(axis=0) * occ
        res_balance[i] = np.abs(dndt - (gain - loss)).max()
    return res_matrix, res_balance

"""Perturbative (golden-rule) rates and the exponential-decay regime.

The finite-time delta surrogate is taken as

    delta_t(alpha) = 2 sin^2(alpha t / 2) / (pi alpha^2 t)

which integrates to 1 over alpha and peaks at t/(2 pi) as alpha -> 0.
The decay constant of the survival probability is the Wigner-Weisskopf
rate gamma = 2 pi |g(Omega)|^2 rho(Omega), and the level shift is the
principal-value sum delta_Omega = v_self + PV sum |g_k|^2 / (Omega - omega_k).
"""

import warnings
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GoldenRuleRates:
    t: float
    gamma: np.ndarray   # (dim, dim) real, symmetric off-diagonal, column sums 0


@dataclass(frozen=True)
class PerturbativePrediction:
    delta_omega: float
    gamma: float
    density_of_states: float


@dataclass(frozen=True)
class ExponentialFit:
    window: tuple
    gamma_fit: float    # decay rate of |A00|^2 (twice the |A00| slope)
    omega_fit: float    # phase slope
    goodness: float     # max |log|A| - fit| / total fitted drop


def delta_t(alpha, t):
    """Finite-time delta surrogate, normalized to unit integral over alpha."""
    if not t > 0:
        raise ValueError(f"time must be positive, got {t}")
    alpha = np.asarray(alpha, dtype=np.float64)
    peak = t / (2.0 * np.pi)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = 2.0 * np.sin(alpha * t / 2.0) ** 2 / (np.pi * alpha ** 2 * t)
    val = np.where(alpha == 0.0, peak, val)
    if val.ndim == 0:
        return float(val)
    return val


def golden_rule_rates(spec, t):
    """Gamma[n, m] = 2 pi |v_nm|^2 delta_t(omega_n - omega_m) for n != m;
    diagonals fixed so every column (and row) sums to zero."""
    v = spec.coupling_matrix()
    freqs = spec.bare_frequencies()
    gaps = freqs[:, None] - freqs[None, :]
    gamma = 2.0 * np.pi * np.abs(v) ** 2 * delta_t(gaps, t)
    np.fill_diagonal(gamma, 0.0)
    np.fill_diagonal(gamma, -gamma.sum(axis=0))
    return GoldenRuleRates(t=float(t), gamma=gamma)


def perturbative_prediction(spec, pv_cutoff=None):
    """Level shift and decay rate for the system oscillator.

    The principal-value sum drops terms with |Omega - omega_k| below
    ``pv_cutoff`` (default: half the local level spacing).  The decay rate
    uses the coupling at the bath frequency nearest Omega and the local
    density of states; outside the bath band it is zero (no resonant
    channel) with a warning.
    """
    freqs = spec.bath_frequencies
    if freqs.size == 0:
        return PerturbativePrediction(delta_omega=spec.self_shift, gamma=0.0,
                                      density_of_states=0.0)
    spacing = np.diff(np.sort(freqs))
    local = spacing[spacing > 0]
    if pv_cutoff is None:
        pv_cutoff = 0.5 * local.min() if local.size else 0.0
    gaps = spec.omega - freqs
    keep = np.abs(gaps) >= pv_cutoff if pv_cutoff > 0 else np.abs(gaps) > 0
    delta_omega = spec.self_shift + float(
        (np.abs(spec.couplings[keep]) ** 2 / gaps[keep]).sum())

    if not (freqs.min() <= spec.omega <= freqs.max()) or local.size == 0:
        warnings.warn("system frequency outside the bath band: no resonant "
                      "decay channel, gamma = 0")
        return PerturbativePrediction(delta_omega=delta_omega, gamma=0.0,
                                      density_of_states=0.0)
    nearest = int(np.argmin(np.abs(gaps)))
    if spec.density_of_states is not None:
        rho = spec.density_of_states
    else:
        rho = 1.0 / local.min()
    gamma = 2.0 * np.pi * abs(spec.couplings[nearest]) ** 2 * rho
    return PerturbativePrediction(delta_omega=delta_omega, gamma=gamma,
                                  density_of_states=rho)


def fit_exponential(times, survival, window):
    """Least-squares exponential fit of the survival amplitude on a window.

    Fits a line to log|A00(t)| (slope = -gamma_fit/2) and to the unwrapped
    phase (slope = -omega_fit).  Goodness is the max deviation of log|A00|
    from the line, relative to the total drop across the window.
    """
    times = np.asarray(times, dtype=np.float64)
    survival = np.asarray(survival, dtype=np.complex128)
    t1, t2 = window
    if not t1 < t2:
        raise ValueError(f"bad fit window [{t1}, {t2}]")
    mask = (times >= t1) & (times <= t2)
    if mask.sum() < 2:
        raise ValueError(f"fit window [{t1}, {t2}] contains fewer than 2 samples")
    t = times[mask]
    s = survival[mask]
    mags = np.abs(s)
    if mags.min() < 1e-12:
        raise ValueError("survival amplitude below 1e-12 in the fit window "
                         "(log underflow)")
    logmag = np.log(mags)
    slope, intercept = np.polyfit(t, logmag, 1)
    phase = np.unwrap(np.angle(s))
    pslope, _ = np.polyfit(t, phase, 1)
    fitline = slope * t + intercept
    drop = max(abs(slope) * (t[-1] - t[0]), 1e-30)
    goodness = float(np.abs(logmag - fitline).max() / drop)
    return ExponentialFit(window=(float(t1), float(t2)),
                          gamma_fit=float(-2.0 * slope),
                          omega_fit=float(-pslope),
                          goodness=goodness)


def compare_exact_vs_golden(times, w_series, spec):
    """Relative deviation between the exact and golden-rule loss rates of
    the system level, time-averaged over the window.

    Individual off-diagonal W entries do not track individual rates: the
    exact dynamics spreads the outflow over the whole near-resonant group
    of bath levels, and only the summed rate -W[0, 0] is a golden-rule
    observable.  So the comparison is |<-W_00> - <-Gamma_00>| / <-Gamma_00>
    with both averages over the non-singular times.  Returns nan when the
    system is uncoupled or every point is singular.
    """
    times = np.asarray(times, dtype=np.float64)
    valid = [(t, mc.w) for t, mc in zip(times, w_series) if not mc.singular]
    if not valid:
        return float("nan")
    w_loss = -np.mean([w[0, 0] for _, w in valid])
    rate_loss = -np.mean([golden_rule_rates(spec, t).gamma[0, 0] for t, _ in valid])
    if rate_loss == 0.0:
        return float("nan")
    return float(abs(w_loss - rate_loss) / abs(rate_loss))

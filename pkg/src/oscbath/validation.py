"""Built-in invariant suite behind the `validate` CLI subcommand.

Each check returns (name, worst_value, tolerance, passed).  The two-mode
closed-form oracle runs regardless of the supplied model, so a validate run
always exercises the analytic reference case.
"""

import numpy as np

from . import amplitudes, langevin, master, model
from .linalg import eigendecompose


def _spectral_checks(h, sd):
    recon = sd.reconstruct()
    scale = np.linalg.norm(h)
    rec_res = np.linalg.norm(recon - h) / scale if scale > 0 else 0.0
    gram = sd.vectors.conj().T @ sd.vectors
    np.fill_diagonal(gram, np.diag(gram) - 1.0)
    uni = np.abs(gram).max()
    return rec_res, uni


def run_suite(cfg):
    """Run every invariant on the configured model; returns a list of
    (name, value, tolerance, passed) rows."""
    tol = cfg.tolerances
    results = []

    def record(name, value, tolerance):
        ok = bool(np.isfinite(value) and value <= tolerance)
        results.append((name, float(value), float(tolerance), ok))

    h = model.build_hamiltonian(cfg.spec)
    sd = eigendecompose(h)
    rec_res, uni = _spectral_checks(h, sd)
    record("spectral reconstruction", rec_res, 1e-12)
    record("eigenvector unitarity", uni, 1e-12)

    times = cfg.time_grid()
    worst_unitarity = 0.0
    worst_row = 0.0
    worst_col = 0.0
    worst_master = 0.0
    tps = []
    mcs = []
    for t in times:
        amps = amplitudes.amplitudes_at(sd, t)
        worst_unitarity = max(worst_unitarity, amps.unitarity_defect())
        tp = master.transition_probabilities(amps)
        worst_row = max(worst_row, tp.row_sum_defect())
        worst_col = max(worst_col, tp.col_sum_defect())
        tps.append(tp)
        mcs.append(master.master_coefficients_flagged(
            tp, condition_cap=tol["condition_cap"]))
    record("amplitude unitarity", worst_unitarity, tol["unitarity"])
    record("double stochasticity (rows)", worst_row, tol["stochasticity"])
    record("double stochasticity (cols)", worst_col, tol["stochasticity"])

    traj = master.evolve_populations(tps, cfg.initial)
    record("occupation positivity", max(0.0, -traj.occupations.min()), 1e-12)
    record("total quanta conservation", traj.conservation_defect(),
           tol["conservation"])

    res_matrix, _ = master.master_residual(tps, mcs, cfg.initial)
    finite = res_matrix[np.isfinite(res_matrix)]
    worst_master = finite.max() if finite.size else 0.0
    record("master-equation residual", worst_master, tol["master_residual"])

    lres = langevin.langevin_residual(sd, times)
    finite = lres[np.isfinite(lres)]
    record("Langevin ODE residual", finite.max() if finite.size else 0.0,
           tol["langevin_residual"])

    results.extend(two_mode_oracle())
    return results


def two_mode_oracle():
    """Closed-form resonant two-oscillator reference (g = 0.1, Omega = 1).

    A00 = exp(-it) cos(gt), W = g tan(2gt) [[-1, 1], [1, -1]],
    Gamma = 2 g tan(gt), Omega2 = Omega^2 + g^2 + 2 g^2 tan(gt)^2.
    """
    g = 0.1
    spec = model.ModelSpec(omega=1.0, bath_frequencies=np.array([1.0]),
                           couplings=np.array([g]))
    sd = eigendecompose(model.build_hamiltonian(spec))
    times = np.linspace(0.05, 0.9 * np.pi / (4 * g), 40)
    worst_a = 0.0
    worst_w = 0.0
    worst_lang = 0.0
    for t in times:
        amps = amplitudes.amplitudes_at(sd, t)
        exact = np.exp(-1j * t) * np.cos(g * t)
        worst_a = max(worst_a, abs(amps.a[0, 0] - exact))
        mc = master.master_coefficients(master.transition_probabilities(amps))
        w_exact = g * np.tan(2 * g * t) * np.array([[-1.0, 1.0], [1.0, -1.0]])
        worst_w = max(worst_w, np.abs(mc.w - w_exact).max())
        lc = langevin.langevin_coefficients(amps)
        worst_lang = max(worst_lang,
                         abs(lc.gamma - 2 * g * np.tan(g * t)),
                         abs(lc.omega_sq - (1.0 + g ** 2 + 2 * g ** 2 * np.tan(g * t) ** 2)))
    return [
        ("two-mode survival closed form", worst_a, 1e-12,
         worst_a <= 1e-12),
        ("two-mode W closed form", worst_w, 1e-8, worst_w <= 1e-8),
        ("two-mode Langevin closed form", worst_lang, 1e-8, worst_lang <= 1e-8),
    ]
